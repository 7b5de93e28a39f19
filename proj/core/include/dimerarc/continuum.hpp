#pragma once

// Continuum side of the model on the folded strip of height pi/2: the
// two coupling kernels, the transfer-matrix trace coefficients along the
// vertical zipper, complete Bell polynomial moment formulas, closed-form
// targets, and kernel predictions for inverse matrix entries.

#include <complex>
#include <vector>

#include "dimerarc/grid.hpp"

namespace dimerarc {

using cplx = std::complex<double>;

// Kernels on the folded strip; the second takes the conjugate of its
// first argument internally.
cplx coupling_plus(cplx a, cplx b);
cplx coupling_minus(cplx a, cplx b);

// Half-plane counterparts; the strip kernels are their transport through
// u -> i e^u with the derivative factor (conjugated for the minus one).
cplx half_plane_plus(cplx a, cplx b);
cplx half_plane_minus(cplx a, cplx b);

// Composite Gauss-Legendre rule: `panels` equal panels with a fixed-order
// rule on each.
struct Quadrature {
  std::vector<double> nodes, weights;
};

Quadrature gauss_legendre(double lo, double hi, int panels, int per_panel = 8);

// Trace coefficients c_1..c_n_max of the zipper expansion at marked
// height y, from powers of the two-sheet transfer operator discretized
// on the vertical segment [y, pi/2].
std::vector<double> continuum_trace_coefficients(double y, int n_max,
                                                 int panels = 64,
                                                 int per_panel = 8);

// Complete Bell polynomials B_0..B_n of x_1..x_n.
std::vector<double> complete_bell(const std::vector<double>& x);

// Winding moments in the continuum limit.  `odd` is the probability of
// an odd imbalance, `pairs` the expected number of balanced pairs of
// windings, `count` the expected number of winding arcs.
struct ContinuumMoments {
  double odd = 0.0;        // E[o]
  double pairs = 0.0;      // E[m]
  double count = 0.0;      // E[n], n = 2m + o
  double pair_odd = 0.0;   // E[m o]
  double count_odd = 0.0;  // E[n o]
  double pairs2 = 0.0;     // E[m(m-1)/2]
  double count2 = 0.0;     // E[n^2]
  double var_count = 0.0;  // var(n)
};

// Moment route one: factorial moments from complete Bell polynomials of
// x_k = (-2)^(k-1) (k-1)! c_k.
ContinuumMoments bell_moments(const std::vector<double>& c);

// Moment route two: expand exp(1/2 sum (-1)^(k-1) (2 alpha)^k c_k / k)
// in alpha and read the moments off the first four coefficients.
ContinuumMoments series_moments(const std::vector<double>& c);

// Closed forms at marked height y on the folded strip.
struct AleTargets {
  double odd = 0.0;
  double count = 0.0;
};

AleTargets ale_targets(double y);

// Kernel prediction for the inverse entry of the symmetric-domain weight
// matrix at black b, white w, with the class signs r (vertical-edge
// white) and s (face-center black).
cplx coupling_prediction(GridPoint w, GridPoint b, double eps);

// Kernel prediction for the difference of the two shifted inverses; the
// black position enters conjugated (an image term across the axis) and
// the prefactor is a fit parameter whose measured value is eps / 2.
cplx shifted_difference_prediction(GridPoint w, GridPoint b, double eps,
                                   double pref);

}  // namespace dimerarc
