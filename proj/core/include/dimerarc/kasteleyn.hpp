#pragma once

// Kasteleyn machinery: edge phases (real signs and unit complex
// directions), boundary-alternation gauges, the folded double graph whose
// bulk vertices carry two copies, and the skew matrices built from a
// 2-dimensional connection on the edges.  Pfaffians of these matrices
// count superpositions of two matchings weighted by traces of the
// connection around loops and by boundary pairing vectors along arcs.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <functional>
#include <optional>
#include <random>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dimerarc/lattice.hpp"
#include "dimerarc/linalg.hpp"

namespace dimerarc {

struct EdgeKey {
  GridPoint w, b;
  friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
};

struct EdgeKeyHash {
  std::size_t operator()(const EdgeKey& e) const noexcept {
    const std::size_t hw = GridPointHash{}(e.w);
    const std::size_t hb = GridPointHash{}(e.b);
    return hw ^ (hb + 0x9e3779b97f4a7c15ULL + (hw << 6) + (hw >> 2));
  }
};

using EdgePhases = std::unordered_map<EdgeKey, cplx, EdgeKeyHash>;

// Unit vector from white to black: one of 1, i, -1, -i.
cplx direction_phase(GridPoint w, GridPoint b);

// Complex weighting by edge direction; satisfies the flat face condition
// on every quadrilateral face automatically.
EdgePhases complex_phases(const BipartiteGraph& g);

// Real +-1 weighting: spanning-tree edges get +1, the remaining edges are
// solved face by face so each quadrilateral has alternating product -1.
EdgePhases real_phases(const BipartiteGraph& g);

// Alternating product around every inner quadrilateral face equals -1.
bool check_face_condition(const BipartiteGraph& g, const EdgePhases& ph);

// Multiplies each edge phase by gauge(w) * gauge(b); face products are
// unchanged, so Kasteleyn validity is preserved.
void gauge_transform(EdgePhases& ph, const BipartiteGraph& g,
                     const std::function<cplx(GridPoint)>& gauge);

// The doubled graph: boundary vertices (the folded set) appear once, all
// other vertices twice.  The matrix order is the boundary arc first (in
// arc order, bulk arc vertices contributing both copies consecutively),
// then the remaining bulk whites with copy 1 before copy 2, then the
// remaining bulk blacks likewise.
struct FoldedGraph {
  struct Vx {
    GridPoint p;
    int copy;  // 0 for boundary vertices, else 1 or 2
  };

  BipartiteGraph base;
  std::vector<GridPoint> arc;     // ordered boundary path containing the folded set
  std::vector<GridPoint> folded;  // the vertices kept single
  std::unordered_set<GridPoint, GridPointHash> folded_set;
  std::vector<Vx> order;
  std::unordered_map<GridPoint, int, GridPointHash> boundary_pos;
  std::unordered_map<GridPoint, int, GridPointHash> bulk_pos;  // copy 1 slot; copy 2 follows
  std::unordered_map<GridPoint, int, GridPointHash> arc_rank;

  int n() const { return int(order.size()); }
  int bulk_count() const { return (n() - int(folded.size())) / 2; }
  bool is_folded(GridPoint p) const { return folded_set.count(p) > 0; }
  int index(GridPoint p, int copy) const;
  int arc_position(GridPoint p) const;  // rank along the arc, for alternation
};

FoldedGraph build_folded_graph(const BipartiteGraph& base,
                               std::vector<GridPoint> arc,
                               std::vector<GridPoint> folded);

// Unit vertex gauge along the arc making each arc-internal edge's phase
// +1 when its white endpoint comes first in arc order and -1 otherwise.
void enforce_boundary_alternation(EdgePhases& ph, const FoldedGraph& fg);

// SL(2, C)-valued connection data: a transport per bulk edge (oriented
// white to black), a pairing vector per boundary-to-bulk edge, and a
// scalar weight per boundary-to-boundary edge.  Absent entries default to
// the identity, (1, 1) and 1.
struct Connection {
  std::unordered_map<EdgeKey, Eigen::Matrix2cd, EdgeKeyHash> phi;
  std::unordered_map<EdgeKey, Eigen::Vector2cd, EdgeKeyHash> psi;
  std::unordered_map<EdgeKey, cplx, EdgeKeyHash> nu;

  Eigen::Matrix2cd get_phi(const EdgeKey& e) const;
  Eigen::Vector2cd get_psi(const EdgeKey& e) const;
  cplx get_nu(const EdgeKey& e) const;

  // Transport along a step between adjacent vertices: phi for white to
  // black, its inverse for black to white.
  Eigen::Matrix2cd transport(GridPoint from, GridPoint to) const;
};

// Random SL(2, C) matrices with bounded entries: random entries with one
// column rescaled so the determinant is exactly 1.
Eigen::Matrix2cd random_sl2(std::mt19937_64& rng, bool complex_entries = true);

// The skew matrix over the folded vertex set: for an edge {w, b} with
// phase c the bulk-bulk block at (copies of w) x (copies of b) is
// c * phi^T, boundary rows and columns contract with psi, and
// boundary-boundary entries are c * nu.
SkewMatrix assemble_K(const FoldedGraph& fg, const EdgePhases& ph,
                      const Connection& conn);

// Folded symmetric model: the closed upper graph with the axis as folded
// boundary; the matrix is the whole-domain Kasteleyn matrix transported
// through the unfolding bijection and the copy-2 sign gauge on vertical
// edge and face nodes.
struct FoldedModel {
  FoldedGraph fg;
  std::vector<Eigen::Triplet<cplx>> entries;  // both (i,j) and (j,i)

  int dim() const { return fg.n(); }
  SkewMatrix dense() const;
  Eigen::SparseMatrix<cplx> sparse() const;
};

FoldedModel build_folded_model(const SymmetricDomain& dom);

// Shifted model: the two upper restrictions with their square white-by-
// black direction-phase matrices.
struct ShiftedModel {
  BipartiteGraph g1;  // closed restriction (axis row kept, root removed)
  BipartiteGraph g2;  // strict restriction (axis row dropped)
  std::vector<Eigen::Triplet<cplx>> k1_entries;
  std::vector<Eigen::Triplet<cplx>> k2_entries;

  Eigen::MatrixXcd k_dense(int which) const;
  Eigen::SparseMatrix<cplx> k_sparse(int which) const;
};

ShiftedModel build_shifted_model(const SymmetricDomain& dom);

// White-by-black matrix of edge phases for a bipartite graph.
std::vector<Eigen::Triplet<cplx>> phase_triplets(const BipartiteGraph& g,
                                                 const EdgePhases& ph);
Eigen::MatrixXcd phase_matrix_dense(const BipartiteGraph& g, const EdgePhases& ph);
Eigen::SparseMatrix<cplx> phase_matrix_sparse(const BipartiteGraph& g,
                                              const EdgePhases& ph);

// Graph Laplacian on the black vertices built from adjacency counts only:
// degree on the diagonal, -1 between same-class blacks joined through a
// shared white neighbour.  Independent route to K^* K.
Eigen::SparseMatrix<cplx> black_laplacian(const BipartiteGraph& g);

}  // namespace dimerarc
