#pragma once

// Zipper machinery: a dual path from the marked face to the boundary,
// the net left-to-right crossing sign per edge, the rank-structured
// perturbations of the skew matrices along it, and the normalized power
// traces whose alternating series gives log Pfaffian ratios.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <array>
#include <vector>

#include "dimerarc/kasteleyn.hpp"
#include "dimerarc/lattice.hpp"
#include "dimerarc/linalg.hpp"

namespace dimerarc {

// Piecewise-linear dual path in quarter-step units (graph vertices sit
// at multiples of four).  Segments must be axis-aligned or diagonal and
// must not run along graph edges or pass through vertices.
struct Polyline {
  std::vector<std::array<long, 2>> pts;
};

struct Zipper {
  std::vector<std::pair<EdgeKey, int>> crossings;  // net sign per edge, zeros dropped
  Polyline path;
};

// Crossings of the polyline with the graph edges, walked in path order
// and truncated once the path leaves the domain through a boundary edge.
// Left-to-right crossings of the white-to-black direction count plus
// one; per-edge nets of zero are dropped.
Zipper zipper_from_polyline(const BipartiteGraph& g, const Polyline& pl);

// Default zipper: the northeast diagonal from just above the marked face
// center to the boundary.
Zipper build_zipper(const BipartiteGraph& g, GridPoint face);

// Whites met by the zipper, sorted by row-major position.
std::vector<GridPoint> zipper_whites(const Zipper& z);

// Folded perturbation: each crossed edge couples the second copy of its
// white to the first copy of its black, with the direction phase and the
// net crossing sign; mirrored entries keep the matrix skew.  The entries
// share the gauge of the folded model matrix, whose copies both carry
// the upper-domain phases.
std::vector<Eigen::Triplet<cplx>> folded_zipper_triplets(const FoldedModel& fm,
                                                         const Zipper& z);

// Normalized trace matrix on zipper whites,
//   P(w, w') = sum_b S((w,2), (b,1)) Kinv((b,1), (w',2)),
// computed from sparse solves, so only zipper columns of the inverse are
// formed.
Eigen::MatrixXcd folded_p_matrix(const FoldedModel& fm, const Zipper& z);

// Normalized traces T_k = 2 tr(P^k) for k = 1..k_max; the factor two
// accounts for the black sector of the perturbation product.
std::vector<cplx> folded_trace_powers(const FoldedModel& fm, const Zipper& z,
                                      int k_max);

// Pf(K + 2 alpha S) / Pf(K) via two full Pfaffians.
cplx folded_pf_ratio(const FoldedModel& fm, const Zipper& z, double alpha);

// det(I + 2 alpha S Kinv)^{1/2} on the full doubled index set, with the
// branch continued from alpha = 0.
cplx folded_det_ratio_sqrt(const FoldedModel& fm, const Zipper& z, double alpha);

// Shifted model: the zipper weight matrix of one upper graph,
//   A(w, w') = sum_b zeta(w, b) sgn(w, b) Kinv(b, w')
// over zipper whites, from sparse solves of that graph's matrix.
Eigen::MatrixXcd shifted_a_matrix(const BipartiteGraph& g,
                                  const std::vector<Eigen::Triplet<cplx>>& k_entries,
                                  const Zipper& z,
                                  const std::vector<GridPoint>& rows);

// Normalized traces of the shifted pair: T_k = 2 tr(D^k) / 2^k with
// D = A1 - A2 on the common zipper whites.
std::vector<cplx> shifted_trace_powers(const ShiftedModel& sm, const Zipper& z,
                                       int k_max);

// det(I + alpha (c1 A1 + c2 A2)) on the zipper whites.  With the model
// couplings (c1, c2) = (1, -1) this is the exact Pfaffian ratio of the
// perturbed block system; the two weight matrices do not commute, so the
// determinant does not factor per block.
cplx shifted_det_ratio(const ShiftedModel& sm, const Zipper& z, double alpha,
                       double c1, double c2);

// Exact lattice moments of the winding observables from the normalized
// traces: E[odd] = -T_1 and E[count] = -T_1 - T_1^2 + 2 T_2.
struct TraceMoments {
  double odd = 0.0;
  double count = 0.0;
};

TraceMoments moments_from_traces(const std::vector<cplx>& traces);

}  // namespace dimerarc
