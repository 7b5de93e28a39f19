#include "dimerarc/continuum.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "dimerarc/error.hpp"

namespace dimerarc {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

cplx coupling_plus(cplx a, cplx b) {
  return -std::exp(a) / (std::exp(a) - std::exp(b)) / (2.0 * kPi);
}

cplx coupling_minus(cplx a, cplx b) {
  const cplx ea = std::exp(std::conj(a));
  return ea / (ea + std::exp(b)) / (2.0 * kPi);
}

cplx half_plane_plus(cplx a, cplx b) { return -1.0 / (a - b) / (2.0 * kPi); }

cplx half_plane_minus(cplx a, cplx b) {
  return 1.0 / (std::conj(a) - b) / (2.0 * kPi);
}

Quadrature gauss_legendre(double lo, double hi, int panels, int per_panel) {
  require(panels >= 1 && per_panel >= 2, "bad quadrature parameters");
  // Legendre nodes on [-1, 1] by Newton iteration from the Chebyshev guess.
  std::vector<double> xs(static_cast<std::size_t>(per_panel));
  std::vector<double> ws(static_cast<std::size_t>(per_panel));
  const int n = per_panel;
  for (int k = 0; k < (n + 1) / 2; ++k) {
    double x = std::cos(kPi * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-15) break;
    }
    xs[std::size_t(k)] = -x;
    xs[std::size_t(n - 1 - k)] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    ws[std::size_t(k)] = w;
    ws[std::size_t(n - 1 - k)] = w;
  }
  Quadrature q;
  const double panel_width = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + p * panel_width;
    const double mid = a + 0.5 * panel_width;
    for (int k = 0; k < n; ++k) {
      q.nodes.push_back(mid + 0.5 * panel_width * xs[std::size_t(k)]);
      q.weights.push_back(0.5 * panel_width * ws[std::size_t(k)]);
    }
  }
  return q;
}

std::vector<double> continuum_trace_coefficients(double y, int n_max, int panels,
                                                 int per_panel) {
  require(y > 0.0 && y < kPi / 2.0, "marked height must lie inside the strip");
  const Quadrature q = gauss_legendre(y, kPi / 2.0, panels, per_panel);
  const int m = int(q.nodes.size());
  // Two sheets: row and column indices are (sigma, node); sigma = +1 is
  // the first block.  The kernel index is minus the product of the two
  // sheet signs, and the minus sheet conjugates its row of kernels and
  // its weight.
  Eigen::MatrixXcd t(2 * m, 2 * m);
  const cplx iu(0.0, 1.0);
  for (int sp = 0; sp < 2; ++sp) {
    const double sigp = sp == 0 ? 1.0 : -1.0;
    for (int jp = 0; jp < m; ++jp) {
      const cplx zp = iu * q.nodes[std::size_t(jp)];
      for (int s = 0; s < 2; ++s) {
        const double sig = s == 0 ? 1.0 : -1.0;
        for (int j = 0; j < m; ++j) {
          const cplx z = iu * q.nodes[std::size_t(j)];
          const cplx f = sigp * sig < 0.0 ? coupling_plus(std::conj(zp), z)
                                          : coupling_minus(std::conj(zp), z);
          const cplx fz = f * (q.weights[std::size_t(j)] * iu);
          t(sp * m + jp, s * m + j) = sig * (s == 0 ? fz : std::conj(fz));
        }
      }
    }
  }
  std::vector<double> c(static_cast<std::size_t>(n_max));
  Eigen::MatrixXcd pw = t;
  cplx in = 1.0;
  for (int nn = 1; nn <= n_max; ++nn) {
    in *= iu;
    const cplx val = 2.0 * in * pw.trace();
    require(std::abs(val.imag()) < 1e-7 * std::max(1.0, std::abs(val.real())),
            "trace coefficient should be real");
    c[std::size_t(nn - 1)] = val.real();
    if (nn < n_max) pw = pw * t;
  }
  return c;
}

std::vector<double> complete_bell(const std::vector<double>& x) {
  const int n = int(x.size());
  std::vector<double> b(std::size_t(n) + 1, 0.0);
  b[0] = 1.0;
  // Pascal row built on the fly for the binomials in the recurrence.
  for (int m = 1; m <= n; ++m) {
    double binom = 1.0;  // C(m-1, k)
    double acc = 0.0;
    for (int k = 0; k <= m - 1; ++k) {
      acc += binom * b[std::size_t(m - 1 - k)] * x[std::size_t(k)];
      binom = binom * double(m - 1 - k) / double(k + 1);
    }
    b[std::size_t(m)] = acc;
  }
  return b;
}

namespace {

ContinuumMoments finish_moments(double odd, double pairs, double pair_odd,
                                double pairs2) {
  ContinuumMoments m;
  m.odd = odd;
  m.pairs = pairs;
  m.pair_odd = pair_odd;
  m.pairs2 = pairs2;
  m.count = 2.0 * pairs + odd;
  m.count_odd = 2.0 * pair_odd + odd;  // n o = 2 m o + o since o^2 = o
  m.count2 = 8.0 * pairs2 + 4.0 * pairs + 4.0 * pair_odd + odd;
  m.var_count = m.count2 - m.count * m.count;
  return m;
}

}  // namespace

ContinuumMoments bell_moments(const std::vector<double>& c) {
  require(c.size() >= 4, "need four trace coefficients");
  std::vector<double> x(4);
  double fac = 1.0;  // (-2)^(k-1) (k-1)!
  for (int k = 1; k <= 4; ++k) {
    x[std::size_t(k - 1)] = fac * c[std::size_t(k - 1)];
    fac *= -2.0 * k;
  }
  const std::vector<double> b = complete_bell(x);
  // E[binom(m, k) o^s] = (-1)^(k+s) B_{2k+s} / (2k+s)!
  return finish_moments(-b[1], -b[2] / 2.0, b[3] / 6.0, b[4] / 24.0);
}

ContinuumMoments series_moments(const std::vector<double>& c) {
  require(c.size() >= 4, "need four trace coefficients");
  // log G as a polynomial in alpha, truncated at degree four.
  double lg[5] = {0.0, 0.0, 0.0, 0.0, 0.0};
  double p2 = 1.0;  // 2^k
  for (int k = 1; k <= 4; ++k) {
    p2 *= 2.0;
    lg[k] = 0.5 * (k % 2 == 1 ? 1.0 : -1.0) * p2 * c[std::size_t(k - 1)] / k;
  }
  // G = exp(lg) by truncated powers.
  double g[5] = {1.0, 0.0, 0.0, 0.0, 0.0};
  double term[5] = {1.0, 0.0, 0.0, 0.0, 0.0};
  for (int j = 1; j <= 4; ++j) {
    double next[5] = {0.0, 0.0, 0.0, 0.0, 0.0};
    for (int a = 0; a <= 4; ++a)
      for (int b = 1; a + b <= 4; ++b) next[a + b] += term[a] * lg[b];
    for (int a = 0; a <= 4; ++a) {
      term[a] = next[a] / j;
      g[a] += term[a];
    }
  }
  return finish_moments(-g[1], -g[2], g[3], g[4]);
}

AleTargets ale_targets(double y) {
  AleTargets t;
  t.odd = 0.5 - y / kPi;
  t.count = 0.25 - y * y / (kPi * kPi) - 2.0 * std::log(std::sin(y)) / (kPi * kPi);
  return t;
}

cplx coupling_prediction(GridPoint w, GridPoint b, double eps) {
  const cplx u = position(w, eps);
  const cplx v = position(b, eps);
  const double r = classify(w) == NodeClass::W0 ? 1.0 : -1.0;
  const double s = classify(b) == NodeClass::B0 ? 1.0 : -1.0;
  const cplx fp = coupling_plus(u, v);
  const cplx fm = coupling_minus(u, v);
  return 0.5 * eps *
         (fp + r * fm + s * std::conj(fm) + r * s * std::conj(fp));
}

cplx shifted_difference_prediction(GridPoint w, GridPoint b, double eps,
                                   double pref) {
  const cplx u = position(w, eps);
  const cplx v = std::conj(position(b, eps));
  const double r = classify(w) == NodeClass::W0 ? 1.0 : -1.0;
  const double s = classify(b) == NodeClass::B0 ? 1.0 : -1.0;
  const cplx fp = coupling_plus(u, v);
  const cplx fm = coupling_minus(u, v);
  // With the direction-sensitive edge phases used to build the two
  // matrices, the measured difference of inverses matches the conjugate
  // of the kernel combination, with prefactor eps / 2.
  return std::conj(-2.0 * pref *
                   (fm + r * fp + s * std::conj(fp) + r * s * std::conj(fm)));
}

}  // namespace dimerarc
