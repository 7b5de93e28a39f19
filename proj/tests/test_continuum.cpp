// Continuum-side checks: kernel transport identities, quadrature, Bell
// polynomials, trace coefficients against the strip closed forms, the
// dual moment routes, and the discrete inverse-matrix predictions.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "dimerarc/continuum.hpp"
#include "dimerarc/kasteleyn.hpp"
#include "dimerarc/lattice.hpp"
#include "doctest.h"

namespace {

using namespace dimerarc;

constexpr double kPi = 3.14159265358979323846;

// Nearest graph node of a class to a continuum target; optionally
// restricted to nodes present in a second graph as well.
GridPoint snap_node(const BipartiteGraph& g, NodeClass cls, double ux,
                    double uy, double eps,
                    const BipartiteGraph* also = nullptr) {
  GridPoint best{0, 0};
  double best_d = 1e300;
  const bool white = is_white(cls);
  const auto& nodes = white ? g.whites : g.blacks;
  for (GridPoint p : nodes) {
    if (classify(p) != cls) continue;
    if (also != nullptr && (white ? !also->has_white(p) : !also->has_black(p)))
      continue;
    const double d = std::norm(position(p, eps) - cplx(ux, uy));
    if (d < best_d) {
      best_d = d;
      best = p;
    }
  }
  return best;
}

SymmetricDomain strip_rectangle(int height, int width) {
  DomainDescriptor d;
  d.shape = "rectangle";
  d.height = height;
  d.width = width;
  d.eps = kPi / height;
  return SymmetricDomain::build(d);
}

}  // namespace

TEST_CASE("strip kernels are transported half-plane kernels") {
  // The strip maps to the half plane through u -> i exp(u); the kernels
  // pick up the derivative of the map at their first argument, the
  // conjugated derivative for the conjugating kernel.
  const std::vector<cplx> pts = {{0.3, 0.4}, {-1.1, 1.2}, {2.0, 0.15},
                                 {0.0, 0.9}, {-0.4, 1.45}};
  const cplx iu(0.0, 1.0);
  for (const cplx& a : pts)
    for (const cplx& b : pts) {
      if (std::abs(a - b) < 1e-12) continue;
      const cplx fa = iu * std::exp(a);
      const cplx fb = iu * std::exp(b);
      const cplx lhs_p = coupling_plus(a, b);
      const cplx rhs_p = half_plane_plus(fa, fb) * fa;
      CHECK(std::abs(lhs_p - rhs_p) < 1e-13 * std::max(1.0, std::abs(lhs_p)));
      const cplx lhs_m = coupling_minus(a, b);
      const cplx rhs_m = half_plane_minus(fa, fb) * std::conj(fa);
      CHECK(std::abs(lhs_m - rhs_m) < 1e-13 * std::max(1.0, std::abs(lhs_m)));
    }
}

TEST_CASE("composite quadrature integrates to rule precision") {
  // Degree 2n-1 polynomials are exact for an n-point rule per panel.
  const Quadrature q5 = gauss_legendre(0.0, 1.0, 1, 5);
  double val = 0.0, mass = 0.0;
  for (std::size_t i = 0; i < q5.nodes.size(); ++i) {
    val += q5.weights[i] * std::pow(q5.nodes[i], 9);
    mass += q5.weights[i];
  }
  CHECK(val == doctest::Approx(0.1).epsilon(1e-13));
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-13));

  const Quadrature qs = gauss_legendre(0.0, kPi, 4, 8);
  double s = 0.0;
  for (std::size_t i = 0; i < qs.nodes.size(); ++i) {
    CHECK(qs.nodes[i] > 0.0);
    CHECK(qs.nodes[i] < kPi);
    s += qs.weights[i] * std::sin(qs.nodes[i]);
  }
  CHECK(s == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("complete Bell polynomials match their closed forms") {
  const std::vector<double> x = {0.7, -1.3, 0.45, 2.2};
  const std::vector<double> b = complete_bell(x);
  const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3];
  CHECK(b[0] == doctest::Approx(1.0));
  CHECK(b[1] == doctest::Approx(x1));
  CHECK(b[2] == doctest::Approx(x1 * x1 + x2));
  CHECK(b[3] == doctest::Approx(x1 * x1 * x1 + 3.0 * x1 * x2 + x3));
  CHECK(b[4] == doctest::Approx(std::pow(x1, 4) + 6.0 * x1 * x1 * x2 +
                                4.0 * x1 * x3 + 3.0 * x2 * x2 + x4));

  // All arguments equal to one produce the Bell numbers.
  const std::vector<double> ones(5, 1.0);
  const std::vector<double> bn = complete_bell(ones);
  const double expect[6] = {1.0, 1.0, 2.0, 5.0, 15.0, 52.0};
  for (int i = 0; i <= 5; ++i)
    CHECK(bn[std::size_t(i)] == doctest::Approx(expect[i]));
}

TEST_CASE("trace coefficients reproduce the strip closed forms") {
  for (double y : {kPi / 6.0, kPi / 4.0, kPi / 3.0}) {
    const std::vector<double> c = continuum_trace_coefficients(y, 4);
    // The first coefficient has a closed form of its own.
    CHECK(c[0] == doctest::Approx(y / kPi - 0.5).epsilon(1e-12));
    const ContinuumMoments m = bell_moments(c);
    const AleTargets t = ale_targets(y);
    CHECK(std::abs(m.odd - t.odd) < 1e-12);
    CHECK(std::abs(m.count - t.count) < 1e-12);
    // Quadrature refinement no longer moves the coefficients.
    const std::vector<double> c2 = continuum_trace_coefficients(y, 4, 96, 8);
    for (int k = 0; k < 4; ++k)
      CHECK(std::abs(c[std::size_t(k)] - c2[std::size_t(k)]) < 1e-10);
  }
}

TEST_CASE("factorial-moment and series routes agree") {
  // Two independent algebraic routes from the same trace coefficients.
  std::vector<std::vector<double>> inputs = {
      continuum_trace_coefficients(kPi / 4.0, 4),
      continuum_trace_coefficients(kPi / 6.0, 4),
      {0.3, -0.07, 0.01, -0.002},
  };
  for (const auto& c : inputs) {
    const ContinuumMoments a = bell_moments(c);
    const ContinuumMoments b = series_moments(c);
    CHECK(std::abs(a.odd - b.odd) < 1e-13);
    CHECK(std::abs(a.pairs - b.pairs) < 1e-13);
    CHECK(std::abs(a.count - b.count) < 1e-13);
    CHECK(std::abs(a.pair_odd - b.pair_odd) < 1e-13);
    CHECK(std::abs(a.pairs2 - b.pairs2) < 1e-13);
    CHECK(std::abs(a.count2 - b.count2) < 1e-13);
    CHECK(std::abs(a.var_count - b.var_count) < 1e-13);
  }
}

TEST_CASE("kernel predictions carry the class parity structure") {
  // Combining the kernels with the class signs makes the prediction real
  // when the two class signs multiply to plus one and imaginary when
  // they multiply to minus one.
  const double eps = 0.1;
  const GridPoint w0{10, 5}, w1{9, 6}, b0{15, 7}, b1{16, 8};
  const auto real_part_only = [](cplx z) { return std::abs(z.imag()) < 1e-15; };
  const auto imag_part_only = [](cplx z) { return std::abs(z.real()) < 1e-15; };
  CHECK(real_part_only(coupling_prediction(w0, b0, eps)));
  CHECK(imag_part_only(coupling_prediction(w0, b1, eps)));
  CHECK(imag_part_only(coupling_prediction(w1, b0, eps)));
  CHECK(real_part_only(coupling_prediction(w1, b1, eps)));

  CHECK(real_part_only(shifted_difference_prediction(w0, b0, eps, 0.05)));
  CHECK(imag_part_only(shifted_difference_prediction(w0, b1, eps, 0.05)));
  CHECK(imag_part_only(shifted_difference_prediction(w1, b0, eps, 0.05)));
  CHECK(real_part_only(shifted_difference_prediction(w1, b1, eps, 0.05)));

  // The prediction is linear in its prefactor.
  const cplx one = shifted_difference_prediction(w0, b1, eps, 1.0);
  const cplx three = shifted_difference_prediction(w0, b1, eps, 3.0);
  CHECK(std::abs(three - 3.0 * one) < 1e-15);
}

TEST_CASE("holomorphy matrix factors the mixed-boundary Laplacian") {
  // On the full symmetric rectangle the direction-phase matrix satisfies
  // K* K = Delta with Delta built independently from adjacency counts,
  // and the inverse equals the Green's function times K*.
  const SymmetricDomain dom = strip_rectangle(8, 24);
  const BipartiteGraph g = dom.full_graph();
  const double eps = kPi / 8.0;
  const EdgePhases ph = complex_phases(g);
  const Eigen::MatrixXcd k = phase_matrix_dense(g, ph);
  REQUIRE(g.white_count() == g.black_count());

  const Eigen::MatrixXcd delta =
      Eigen::MatrixXcd(black_laplacian(g));
  const Eigen::MatrixXcd lhs = k.adjoint() * k;
  CHECK((lhs - delta).cwiseAbs().maxCoeff() < 1e-12);

  const Eigen::MatrixXcd kinv = k.inverse();
  const Eigen::MatrixXcd green_route = delta.ldlt().solve(k.adjoint());
  CHECK((kinv - green_route).cwiseAbs().maxCoeff() < 1e-10);

  // Entries from a bulk white are real towards one black class and
  // imaginary towards the other, by the block structure of Delta.
  for (NodeClass wc : {NodeClass::W0, NodeClass::W1}) {
    const GridPoint w = snap_node(g, wc, 0.55 * 24.0 * eps, 0.2, eps);
    const int wi = g.white_at(w);
    for (int b = 0; b < g.black_count(); ++b) {
      const cplx v = kinv(b, wi);
      const bool face = classify(g.blacks[std::size_t(b)]) == NodeClass::B0;
      const bool real_entry = (wc == NodeClass::W0) == face;
      if (real_entry)
        CHECK(std::abs(v.imag()) < 1e-12);
      else
        CHECK(std::abs(v.real()) < 1e-12);
    }
  }
}

TEST_CASE("shifted inverse difference follows the image kernel") {
  // The difference of the two shifted inverses at bulk points matches
  // the image-term prediction; the fitted prefactor approaches eps / 2
  // and the pinned-prefactor residual shrinks at second order.
  double prev_resid = 0.0;
  for (int h : {16, 32}) {
    const SymmetricDomain dom = strip_rectangle(h, 3 * h);
    const ShiftedModel sm = build_shifted_model(dom);
    const double eps = kPi / h;
    Eigen::SparseLU<Eigen::SparseMatrix<cplx>> lu1, lu2;
    lu1.compute(sm.k_sparse(1));
    lu2.compute(sm.k_sparse(2));
    REQUIRE(lu1.info() == Eigen::Success);
    REQUIRE(lu2.info() == Eigen::Success);

    const double xc = 1.5 * kPi;
    const double targets[2][4] = {{xc - 0.6, 0.55, xc + 0.6, 0.95},
                                  {xc - 0.4, 0.85, xc + 0.8, 0.45}};
    std::vector<cplx> diffs, preds;
    for (const double* t : targets)
      for (NodeClass wc : {NodeClass::W0, NodeClass::W1}) {
        const GridPoint w = snap_node(sm.g1, wc, t[0], t[1], eps, &sm.g2);
        Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(sm.g1.white_count());
        e1[sm.g1.white_at(w)] = 1.0;
        const Eigen::VectorXcd y1 = lu1.solve(e1);
        Eigen::VectorXcd e2 = Eigen::VectorXcd::Zero(sm.g2.white_count());
        e2[sm.g2.white_at(w)] = 1.0;
        const Eigen::VectorXcd y2 = lu2.solve(e2);
        for (NodeClass bc : {NodeClass::B0, NodeClass::B1}) {
          const GridPoint b = snap_node(sm.g1, bc, t[2], t[3], eps, &sm.g2);
          diffs.push_back(y1[sm.g1.black_at(b)] - y2[sm.g2.black_at(b)]);
          preds.push_back(shifted_difference_prediction(w, b, eps, 1.0));
        }
      }

    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < diffs.size(); ++i) {
      num += (std::conj(preds[i]) * diffs[i]).real();
      den += std::norm(preds[i]);
    }
    const double pref = num / den;
    CHECK(pref / (0.5 * eps) == doctest::Approx(1.0).epsilon(0.04));

    double resid = 0.0;
    for (std::size_t i = 0; i < diffs.size(); ++i)
      resid = std::max(resid, std::abs(diffs[i] - 0.5 * eps * preds[i]));
    if (prev_resid > 0.0) CHECK(prev_resid / resid > std::pow(2.0, 1.5));
    prev_resid = resid;
  }
}
