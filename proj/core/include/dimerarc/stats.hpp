#pragma once

// Small statistics helpers: the regularized incomplete gamma function
// (series and continued-fraction expansions), chi-square tail probability,
// and jackknife standard errors.

#include <cmath>
#include <cstddef>
#include <vector>

#include "dimerarc/error.hpp"

namespace dimerarc {

// Regularized lower incomplete gamma P(a, x) by its power series.
inline double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a, x) by Lentz's continued fraction.
inline double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -double(i) * (double(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

// Q(a, x) = 1 - P(a, x), choosing the faster-converging expansion.
inline double gamma_q(double a, double x) {
  require(a > 0.0 && x >= 0.0, "gamma_q: domain error");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

// P[chi2_k >= stat] for k degrees of freedom.
inline double chi_square_tail(double stat, int dof) {
  require(dof > 0, "chi_square_tail: dof must be positive");
  if (stat <= 0.0) return 1.0;
  return gamma_q(0.5 * dof, 0.5 * stat);
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
  std::size_t n = 0;
};

// Plain mean with jackknife standard error (equals the usual s/sqrt(n)
// for the mean, but the same interface extends to ratio statistics).
inline MeanSe jackknife_mean(const std::vector<double>& xs) {
  MeanSe r;
  r.n = xs.size();
  if (xs.empty()) return r;
  double total = 0.0;
  for (double v : xs) total += v;
  r.mean = total / double(xs.size());
  if (xs.size() < 2) return r;
  double ss = 0.0;
  for (double v : xs) {
    const double loo = (total - v) / double(xs.size() - 1);
    ss += (loo - r.mean) * (loo - r.mean);
  }
  const double n = double(xs.size());
  r.se = std::sqrt((n - 1.0) / n * ss);
  return r;
}

}  // namespace dimerarc
