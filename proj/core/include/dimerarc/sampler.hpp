#pragma once

// Exact uniform samplers for perfect matchings.  The symmetric domain is
// sampled through Wilson's algorithm on the primal vertex lattice and
// the Temperley bijection; general bipartite patches are sampled
// sequentially from conditionals given by the inverse weight matrix.

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "dimerarc/arcs.hpp"
#include "dimerarc/kasteleyn.hpp"
#include "dimerarc/lattice.hpp"

namespace dimerarc {

// Uniform spanning tree of the domain vertices rooted at the removed
// vertex, as parent pointers, grown by loop-erased random walks.
std::unordered_map<GridPoint, GridPoint, GridPointHash>
wilson_spanning_tree(const SymmetricDomain& dom, std::mt19937_64& rng);

// Temperley bijection: tree edges give the dimers of the vertices, the
// dual tree on faces rooted outside gives the dimers of the inner faces.
Matching tree_to_matching(const SymmetricDomain& dom,
                          const std::unordered_map<GridPoint, GridPoint,
                                                   GridPointHash>& parent);

// Uniform perfect matching of the symmetric domain with the root removed.
Matching sample_full_matching(const SymmetricDomain& dom, std::mt19937_64& rng);

// Winding statistics of `count` independent folded samples around the
// marked face.  Sample `i` is drawn from substream (seed, i), so the
// result is identical for any thread count.
std::vector<WindingCounts> sample_windings(const SymmetricDomain& dom,
                                           std::uint64_t seed, int count,
                                           int threads = 1);

// Sequential exact sampler: each white in turn picks its partner with
// probability K(w, b) * inv(b, w), which sums to one over the available
// blacks; the running inverse is maintained by rank-one pair deletion
// and refreshed when the conditional mass drifts.
class DeterminantalSampler {
 public:
  DeterminantalSampler(const BipartiteGraph& g, const EdgePhases& ph);

  std::vector<int> sample(std::mt19937_64& rng);  // matching[w] = black index

  // Probability that the edge is present in a uniform matching.
  double edge_marginal(int w, int b) const;

 private:
  const BipartiteGraph* g_;
  Eigen::MatrixXcd k_, inv_;
};

}  // namespace dimerarc
