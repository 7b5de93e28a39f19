#include "dimerarc/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "dimerarc/error.hpp"

namespace dimerarc {

void SkewMatrix::set(int i, int j, cplx v) {
  require(i != j || v == cplx(0.0), "SkewMatrix: nonzero diagonal entry");
  m_(i, j) = v;
  m_(j, i) = -v;
}

void SkewMatrix::add(int i, int j, cplx v) {
  require(i != j || v == cplx(0.0), "SkewMatrix: nonzero diagonal entry");
  m_(i, j) += v;
  m_(j, i) -= v;
}

SkewMatrix SkewMatrix::from_dense(const Eigen::MatrixXcd& m, double tol) {
  require(m.rows() == m.cols(), "SkewMatrix: matrix must be square");
  const double dev = (m + m.transpose()).cwiseAbs().maxCoeff();
  require(dev <= tol, "SkewMatrix: input deviates from skew-symmetry");
  SkewMatrix s(int(m.rows()));
  for (int i = 0; i < int(m.rows()); ++i)
    for (int j = i + 1; j < int(m.cols()); ++j) s.set(i, j, m(i, j));
  return s;
}

cplx LogScalar::ratio_to(const LogScalar& denom) const {
  require(!denom.zero(), "LogScalar: division by zero");
  if (zero()) return 0.0;
  return std::exp(log_mag - denom.log_mag) * phase / denom.phase;
}

void LogScalar::mul_by(cplx factor) {
  const double a = std::abs(factor);
  if (a == 0.0 || zero()) {
    log_mag = -std::numeric_limits<double>::infinity();
    phase = 0.0;
    return;
  }
  log_mag += std::log(a);
  phase *= factor / a;
}

LogScalar pfaffian(const SkewMatrix& m) {
  const int n = m.size();
  if (n == 0) return LogScalar::one();
  if (n % 2 != 0) return LogScalar{};

  Eigen::MatrixXcd a = m.dense();
  LogScalar result = LogScalar::one();
  double swap_sign = 1.0;

  // Parlett-Reid reduction: congruence by unit lower-triangular factors
  // leaves the Pfaffian invariant, each row-and-column swap flips its sign,
  // and the reduced matrix is 2x2 block diagonal.
  for (int k = 0; k + 1 < n; k += 2) {
    int piv = k + 1;
    double best = std::abs(a(k + 1, k));
    for (int j = k + 2; j < n; ++j) {
      if (std::abs(a(j, k)) > best) {
        best = std::abs(a(j, k));
        piv = j;
      }
    }
    if (best == 0.0) return LogScalar{};
    if (piv != k + 1) {
      a.row(piv).swap(a.row(k + 1));
      a.col(piv).swap(a.col(k + 1));
      swap_sign = -swap_sign;
    }
    const cplx pivot = a(k, k + 1);
    result.mul_by(pivot);
    const int rest = n - k - 2;
    if (rest > 0) {
      const Eigen::VectorXcd u = a.row(k).segment(k + 2, rest);
      const Eigen::VectorXcd v = a.row(k + 1).segment(k + 2, rest);
      a.block(k + 2, k + 2, rest, rest) +=
          (v * u.transpose() - u * v.transpose()) / pivot;
    }
  }
  result.mul_by(swap_sign);
  return result;
}

namespace {

// Recursively enumerates perfect pairings; at each leaf adds
// sign(pairing) * product of entries.
void pairing_sum(const Eigen::MatrixXcd& a, std::vector<int>& unused,
                 std::vector<std::pair<int, int>>& pairs, cplx partial,
                 cplx& total) {
  if (unused.empty()) {
    total += partial * double(pair_partition_sign(pairs));
    return;
  }
  const int first = unused.front();
  for (std::size_t t = 1; t < unused.size(); ++t) {
    const int mate = unused[t];
    const cplx entry = a(first, mate);
    if (entry == cplx(0.0)) continue;
    std::vector<int> rest;
    rest.reserve(unused.size() - 2);
    for (std::size_t s = 1; s < unused.size(); ++s)
      if (s != t) rest.push_back(unused[s]);
    pairs.emplace_back(first, mate);
    pairing_sum(a, rest, pairs, partial * entry, total);
    pairs.pop_back();
  }
}

}  // namespace

LogScalar pfaffian_reference(const SkewMatrix& m) {
  const int n = m.size();
  require(n <= 12, "pfaffian_reference: matrix too large for pairing sum");
  if (n == 0) return LogScalar::one();
  if (n % 2 != 0) return LogScalar{};
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  std::vector<std::pair<int, int>> pairs;
  cplx total = 0.0;
  pairing_sum(m.dense(), all, pairs, cplx(1.0), total);
  LogScalar r = LogScalar::one();
  r.mul_by(total);
  return r;
}

LogScalar log_det(const Eigen::MatrixXcd& m) {
  require(m.rows() == m.cols(), "log_det: matrix must be square");
  if (m.rows() == 0) return LogScalar::one();
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
  LogScalar r = LogScalar::one();
  const auto& diag = lu.matrixLU().diagonal();
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    if (diag(i) == cplx(0.0)) return LogScalar{};
    r.mul_by(diag(i));
  }
  r.mul_by(double(lu.permutationP().determinant()));
  return r;
}

Eigen::MatrixXcd invert(const Eigen::MatrixXcd& m, double* residual) {
  require(m.rows() == m.cols(), "invert: matrix must be square");
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
  Eigen::MatrixXcd inv =
      lu.solve(Eigen::MatrixXcd::Identity(m.rows(), m.cols()));
  if (residual != nullptr) {
    *residual = (m * inv - Eigen::MatrixXcd::Identity(m.rows(), m.cols()))
                    .cwiseAbs()
                    .maxCoeff();
  }
  return inv;
}

void pair_deletion_update(Eigen::MatrixXcd& b_inv, int b, int w) {
  const cplx pivot = b_inv(b, w);
  require(std::abs(pivot) > 0.0, "pair_deletion_update: zero pivot entry");
  const Eigen::VectorXcd col = b_inv.col(w);
  const Eigen::RowVectorXcd row = b_inv.row(b);
  b_inv.noalias() -= (col * row) / pivot;
}

std::vector<cplx> power_traces(const Eigen::MatrixXcd& a, int k_max) {
  require(a.rows() == a.cols(), "power_traces: matrix must be square");
  std::vector<cplx> traces;
  traces.reserve(std::size_t(k_max));
  Eigen::MatrixXcd cur = a;
  for (int k = 1; k <= k_max; ++k) {
    traces.push_back(cur.trace());
    if (k < k_max) cur = (cur * a).eval();
  }
  return traces;
}

TraceLogSeries half_log_det_from_traces(const std::vector<cplx>& traces,
                                        cplx z) {
  TraceLogSeries out;
  cplx zk = 1.0;
  double sign = 1.0;
  for (std::size_t k = 1; k <= traces.size(); ++k) {
    zk *= z;
    const cplx term = sign * zk * traces[k - 1] / double(k);
    out.log_value += 0.5 * term;
    out.last_term = 0.5 * std::abs(term);
    sign = -sign;
  }
  return out;
}

cplx sqrt_det_ratio(const Eigen::MatrixXcd& a, cplx t_end, int grid) {
  require(grid >= 1, "sqrt_det_ratio: grid must be positive");
  const Eigen::MatrixXcd id =
      Eigen::MatrixXcd::Identity(a.rows(), a.cols());
  double prev_arg = 0.0;
  double final_log = 0.0;
  double final_arg = 0.0;
  const double pi = std::acos(-1.0);
  // Phase-unwrap log det(I + tA) along the straight path from t = 0; the
  // square root then inherits the branch that is continuous in t.
  for (int j = 1; j <= grid; ++j) {
    const cplx t = t_end * (double(j) / double(grid));
    const LogScalar d = log_det(id + t * a);
    require(!d.zero(), "sqrt_det_ratio: determinant vanished along the path");
    double arg = std::arg(d.phase);
    while (arg - prev_arg > pi) arg -= 2.0 * pi;
    while (arg - prev_arg < -pi) arg += 2.0 * pi;
    prev_arg = arg;
    final_log = d.log_mag;
    final_arg = arg;
  }
  return std::exp(cplx(0.5 * final_log, 0.5 * final_arg));
}

int permutation_parity(const std::vector<int>& perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inversions;
  return (inversions % 2 == 0) ? 1 : -1;
}

int pair_partition_sign(const std::vector<std::pair<int, int>>& pairs) {
  // Canonical form: each pair ascending, pairs sorted by first element.
  // The sign is the parity of the flattened sequence relative to sorted
  // order, which the inversion count computes for arbitrary labels.
  std::vector<std::pair<int, int>> norm = pairs;
  for (auto& p : norm)
    if (p.first > p.second) std::swap(p.first, p.second);
  std::sort(norm.begin(), norm.end());
  std::vector<int> flat;
  flat.reserve(2 * norm.size());
  for (const auto& p : norm) {
    flat.push_back(p.first);
    flat.push_back(p.second);
  }
  return permutation_parity(flat);
}

int interleaving_sign(const std::vector<std::pair<int, int>>& pairs) {
  int crossings = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [a, b] = pairs[i];
    if (a > b) std::swap(a, b);
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      auto [c, d] = pairs[j];
      if (c > d) std::swap(c, d);
      const bool c_in = (a < c && c < b);
      const bool d_in = (a < d && d < b);
      if (c_in != d_in) ++crossings;
    }
  }
  return (crossings % 2 == 0) ? 1 : -1;
}

}  // namespace dimerarc
