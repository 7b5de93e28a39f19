#pragma once

// Brute-force machinery for small graphs: perfect matching enumeration,
// matchings of the doubled graph projected to loop-and-arc
// configurations, and the combinatorial side of the Pfaffian identity
// with a connection.  Everything here is exponential and meant for
// cross-validation, not production sizes.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "dimerarc/kasteleyn.hpp"
#include "dimerarc/lattice.hpp"
#include "dimerarc/linalg.hpp"

namespace dimerarc {

struct AbstractBipartite {
  int nw = 0;
  int nb = 0;
  std::vector<std::vector<int>> adj;  // adj[w] = black indices
};

AbstractBipartite to_abstract(const BipartiteGraph& g);

// All perfect matchings as matching[w] = black index; throws beyond cap.
std::vector<std::vector<int>> enumerate_matchings(const AbstractBipartite& g,
                                                  std::size_t cap = 1000000);
std::vector<std::vector<int>> enumerate_matchings(const BipartiteGraph& g,
                                                  std::size_t cap = 1000000);

// The doubled graph of a folded structure as an abstract bipartite graph,
// with tables mapping abstract node indices back to (point, copy) and to
// skew-matrix indices.
struct DoubledGraph {
  AbstractBipartite ab;
  std::vector<std::pair<GridPoint, int>> white_nodes;
  std::vector<std::pair<GridPoint, int>> black_nodes;
  std::vector<int> white_matrix_idx;
  std::vector<int> black_matrix_idx;
};

DoubledGraph doubled_graph(const FoldedGraph& fg);

// A projected configuration: base edges used once or twice, decomposed
// into loops (cyclic vertex sequences), arcs (open vertex paths between
// singly-covered vertices; the black end first when the ends differ in
// color) and doubled edges.
struct OmegaConfig {
  std::vector<std::pair<EdgeKey, int>> edges;  // canonical sorted (edge, mult)
  std::vector<std::vector<GridPoint>> loops;
  std::vector<std::vector<GridPoint>> arcs;
  std::vector<EdgeKey> doubled;
  std::string key;  // canonical encoding for deduplication
};

OmegaConfig project(const DoubledGraph& dg, const std::vector<int>& matching);

// All loop-and-arc configurations, enumerated directly on the base
// graph: bulk vertices carry two edge units, folded vertices one.  Each
// configuration appears exactly once.
std::vector<OmegaConfig> enumerate_omega(const FoldedGraph& fg,
                                         std::size_t cap = 1000000);

// Connection weight of one configuration: products of loop traces,
// doubled-edge determinants and arc pairings psi^T (transport) psi, with
// the scalar edge weight for single-edge arcs.  Arcs whose two endpoints
// share a color contract antisymmetrically: the symplectic form J is
// inserted next to the white-end vector.
cplx config_weight(const Connection& conn, const OmegaConfig& cfg);

// Overall sign of the loop-and-arc expansion, shared by every
// configuration.  No counting formula in the layout data survives all
// boundary shapes, so it is calibrated once per graph by comparing the
// trivial-connection Pfaffian against the trivial expansion sum; the
// ratio must be a real unit.  The per-configuration collapse that makes
// this a single sign is verified independently by sign_lemma_check.
double expansion_sign(const FoldedGraph& fg, const EdgePhases& ph,
                      std::size_t cap = 1000000);

// Combinatorial side of the Pfaffian identity: the expansion sign times
// the sum of connection weights over distinct configurations.
cplx kenyon_rhs(const FoldedGraph& fg, const EdgePhases& ph,
                const Connection& conn, std::size_t cap = 1000000);

// One term of the Pfaffian expansion for a doubled-graph matching: the
// chord-diagram sign times the product of matrix entries.
cplx matching_term(const SkewMatrix& k, const DoubledGraph& dg,
                   const std::vector<int>& matching);

// Verifies, configuration by configuration, that the matching terms sum
// to the sign-corrected connection weight; returns the largest absolute
// deviation over configurations.
double sign_lemma_check(const FoldedGraph& fg, const EdgePhases& ph,
                        const SkewMatrix& k, const Connection& conn,
                        const DoubledGraph& dg, std::size_t cap = 1000000);

}  // namespace dimerarc
