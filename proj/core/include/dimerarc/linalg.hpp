#pragma once

// Numerical kernels shared by the whole library: complex skew-symmetric
// storage, Pfaffians (Parlett-Reid elimination and a combinatorial
// reference), log-magnitude determinants, inverses, the pair-deletion
// inverse update used by sequential sampling, and power-trace series with
// branch-tracked square roots of determinant ratios.

#include <Eigen/Dense>
#include <complex>
#include <limits>
#include <utility>
#include <vector>

namespace dimerarc {

using cplx = std::complex<double>;

// Complex skew-symmetric matrix.  All writes go through set/add, which
// mirror each entry with its negative and pin the diagonal to zero, so
// M^T = -M holds exactly by construction.
class SkewMatrix {
 public:
  SkewMatrix() = default;
  explicit SkewMatrix(int n) : m_(Eigen::MatrixXcd::Zero(n, n)) {}

  int size() const { return int(m_.rows()); }
  cplx at(int i, int j) const { return m_(i, j); }
  void set(int i, int j, cplx v);
  void add(int i, int j, cplx v);
  const Eigen::MatrixXcd& dense() const { return m_; }

  // Validates skew-symmetry of a general matrix up to `tol` and adopts its
  // upper triangle.
  static SkewMatrix from_dense(const Eigen::MatrixXcd& m, double tol = 1e-12);

 private:
  Eigen::MatrixXcd m_;
};

// Scalar kept as magnitude and phase separately, so products of thousands
// of factors neither overflow nor lose their sign.
struct LogScalar {
  double log_mag = -std::numeric_limits<double>::infinity();
  cplx phase = 0.0;  // unit modulus when nonzero

  bool zero() const { return phase == cplx(0.0); }
  cplx value() const { return zero() ? cplx(0.0) : std::exp(log_mag) * phase; }
  // this / denom, evaluated as exp of the log difference.
  cplx ratio_to(const LogScalar& denom) const;
  static LogScalar one() { return {0.0, cplx(1.0)}; }
  void mul_by(cplx factor);
};

// Pfaffian via Parlett-Reid skew elimination with partial pivoting.
// O(n^3); exact zero is reported when a whole pivot column vanishes.
LogScalar pfaffian(const SkewMatrix& m);

// Pfaffian as the signed sum over perfect pairings; O((n-1)!!), n <= 12.
// Serves as the independent oracle for the elimination routine.
LogScalar pfaffian_reference(const SkewMatrix& m);

// log det via LU with partial pivoting.
LogScalar log_det(const Eigen::MatrixXcd& m);

// Dense inverse; optionally reports max |M * inv - I| in *residual.
Eigen::MatrixXcd invert(const Eigen::MatrixXcd& m, double* residual = nullptr);

// Inverse update after deleting row w and column b of the underlying matrix
// K, where b_inv = K^-1 (so rows of b_inv track columns of K and vice
// versa): Schur complement correction
//   B(i, j) -= B(i, w) * B(b, j) / B(b, w).
// Row b and column w of B end up exactly zero and are dead afterwards.
void pair_deletion_update(Eigen::MatrixXcd& b_inv, int b, int w);

// tr(A^k) for k = 1..k_max by repeated multiplication.
std::vector<cplx> power_traces(const Eigen::MatrixXcd& a, int k_max);

// Truncated log of det(I + z A)^{1/2} from power traces:
//   1/2 * sum_{k>=1} (-1)^(k-1) z^k tr(A^k) / k.
// last_term reports the magnitude of the final summand as a convergence
// diagnostic; the series is only valid for |z| * rho(A) < 1.
struct TraceLogSeries {
  cplx log_value{0.0};
  double last_term = 0.0;
};
TraceLogSeries half_log_det_from_traces(const std::vector<cplx>& traces, cplx z);

// det(I + t A)^{1/2} at t = t_end with the branch fixed by continuity
// along the straight path from t = 0 (grid = number of phase-unwrapping
// steps).
cplx sqrt_det_ratio(const Eigen::MatrixXcd& a, cplx t_end, int grid = 64);

// Sign of a permutation given as images perm[i], by inversion count.
int permutation_parity(const std::vector<int>& perm);

// Sign of a pair partition of {0..2k-1}: parity of the permutation
// (a_1 b_1 a_2 b_2 ...) with a_i < b_i and a_1 < a_2 < ...
int pair_partition_sign(const std::vector<std::pair<int, int>>& pairs);

// The same sign computed as (-1)^(number of interleaved pairs), i.e. pairs
// (a,b), (c,d) with a < c < b < d.  Used for chord-diagram crossing counts.
int interleaving_sign(const std::vector<std::pair<int, int>>& pairs);

}  // namespace dimerarc
