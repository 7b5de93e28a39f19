#include <doctest.h>

#include <Eigen/Dense>
#include <complex>
#include <cstdlib>

#include "dimerarc/corpus.hpp"
#include "dimerarc/enumerate.hpp"
#include "dimerarc/kasteleyn.hpp"
#include "dimerarc/lattice.hpp"
#include "dimerarc/linalg.hpp"
#include "dimerarc/rng.hpp"

using namespace dimerarc;

namespace {

SymmetricDomain rect(int width, int height) {
  DomainDescriptor d;
  d.width = width;
  d.height = height;
  return SymmetricDomain::build(d);
}

}  // namespace

TEST_CASE("direction phases point from white to black") {
  CHECK(direction_phase({1, 0}, {2, 0}) == cplx(1.0));
  CHECK(direction_phase({1, 0}, {0, 0}) == cplx(-1.0));
  CHECK(direction_phase({0, 1}, {0, 2}) == cplx(0.0, 1.0));
  CHECK(direction_phase({0, 1}, {0, 0}) == cplx(0.0, -1.0));
}

TEST_CASE("phase assignments satisfy the face condition") {
  const SymmetricDomain dom = rect(3, 2);
  const BipartiteGraph g = dom.full_graph();

  EdgePhases cph = complex_phases(g);
  CHECK(check_face_condition(g, cph));

  EdgePhases rph = real_phases(g);
  CHECK(check_face_condition(g, rph));
  for (const auto& [e, c] : rph) {
    CHECK(c.imag() == 0.0);
    CHECK(std::abs(std::abs(c.real()) - 1.0) < 1e-15);
  }

  // A vertex gauge leaves every face product unchanged.
  gauge_transform(cph, g, [](GridPoint p) {
    return std::polar(1.0, 0.3 * double(p.x) - 0.1 * double(p.y));
  });
  CHECK(check_face_condition(g, cph));
}

TEST_CASE("connection transport inverts across an edge") {
  std::mt19937_64 rng = substream(7, 0);
  Connection conn;
  const GridPoint w{1, 2}, b{2, 2};
  conn.phi[{w, b}] = random_sl2(rng);
  const Eigen::Matrix2cd round = conn.transport(w, b) * conn.transport(b, w);
  CHECK((round - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-12);
  // Untouched edges default to the identity.
  CHECK((conn.transport({3, 2}, {4, 2}) - Eigen::Matrix2cd::Identity())
            .cwiseAbs()
            .maxCoeff() == 0.0);
}

TEST_CASE("random sl2 matrices have unit determinant") {
  std::mt19937_64 rng = substream(11, 3);
  for (int rep = 0; rep < 20; ++rep) {
    const Eigen::Matrix2cd m = random_sl2(rng, rep % 2 == 0);
    CHECK(std::abs(m.determinant() - cplx(1.0)) < 1e-12);
    CHECK(m.cwiseAbs().maxCoeff() < 50.0);
  }
}

TEST_CASE("folded graph ordering invariants hold on the corpus") {
  for (const CorpusEntry& entry : identity_corpus()) {
    INFO("entry ", entry.name);
    const FoldedGraph& fg = entry.fg;
    REQUIRE(!fg.order.empty());
    CHECK(fg.n() % 2 == 0);
    CHECK(fg.bulk_count() * 2 + int(fg.folded.size()) == fg.n());
    CHECK(fg.bulk_count() % 2 == 0);

    // index() round trips every slot.
    for (int i = 0; i < fg.n(); ++i) {
      const FoldedGraph::Vx v = fg.order[std::size_t(i)];
      CHECK(fg.index(v.p, v.copy) == i);
    }

    // Folded vertices appear once with copy 0; bulk vertices appear as
    // copy 1 immediately followed by copy 2.
    for (int i = 0; i < fg.n(); ++i) {
      const FoldedGraph::Vx v = fg.order[std::size_t(i)];
      if (fg.is_folded(v.p)) {
        CHECK(v.copy == 0);
      } else if (v.copy == 1) {
        REQUIRE(i + 1 < fg.n());
        CHECK(fg.order[std::size_t(i + 1)].p == v.p);
        CHECK(fg.order[std::size_t(i + 1)].copy == 2);
      } else {
        CHECK(v.copy == 2);
        CHECK(fg.order[std::size_t(i - 1)].p == v.p);
      }
    }

    // The arc occupies the leading slots in arc order.
    int slot = 0;
    for (const GridPoint p : fg.arc) {
      CHECK(fg.order[std::size_t(slot)].p == p);
      slot += fg.is_folded(p) ? 1 : 2;
    }

    // Arc ranks strictly increase along the arc.
    for (std::size_t k = 0; k + 1 < fg.arc.size(); ++k)
      CHECK(fg.arc_position(fg.arc[k]) < fg.arc_position(fg.arc[k + 1]));
  }
}

TEST_CASE("boundary alternation holds along every corpus arc") {
  for (const CorpusEntry& entry : identity_corpus()) {
    INFO("entry ", entry.name);
    const FoldedGraph& fg = entry.fg;
    for (std::size_t k = 0; k + 1 < fg.arc.size(); ++k) {
      const GridPoint a = fg.arc[k], b = fg.arc[k + 1];
      const bool a_white = is_white(a);
      const EdgeKey e{a_white ? a : b, a_white ? b : a};
      auto it = entry.phases.find(e);
      REQUIRE(it != entry.phases.end());
      const cplx want = a_white ? cplx(1.0) : cplx(-1.0);
      CHECK(std::abs(it->second - want) < 1e-12);
    }
  }
}

TEST_CASE("folded model pfaffian counts matchings of the symmetric domain") {
  for (const auto [w, h] : {std::pair{2, 2}, std::pair{3, 2}}) {
    const SymmetricDomain dom = rect(w, h);
    const auto all = enumerate_matchings(dom.full_graph());
    const FoldedModel fm = build_folded_model(dom);
    const cplx pf = pfaffian(fm.dense()).value();
    CHECK(std::abs(std::abs(pf) - double(all.size())) <
          1e-8 * double(all.size()));
  }
}

TEST_CASE("folded model sparse and dense agree and are skew") {
  const FoldedModel fm = build_folded_model(rect(3, 2));
  const Eigen::MatrixXcd d = fm.dense().dense();
  const Eigen::MatrixXcd s = Eigen::MatrixXcd(fm.sparse());
  CHECK((d - s).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((d + d.transpose()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("shifted model determinants count matchings of the two restrictions") {
  const SymmetricDomain dom = rect(2, 2);
  const ShiftedModel sm = build_shifted_model(dom);

  const auto m1 = enumerate_matchings(sm.g1);
  const auto m2 = enumerate_matchings(sm.g2);
  CHECK(!m1.empty());
  CHECK(!m2.empty());

  const double d1 = std::abs(sm.k_dense(1).determinant());
  const double d2 = std::abs(sm.k_dense(2).determinant());
  CHECK(d1 == doctest::Approx(double(m1.size())).epsilon(1e-9));
  CHECK(d2 == doctest::Approx(double(m2.size())).epsilon(1e-9));

  const Eigen::MatrixXcd s1 = Eigen::MatrixXcd(sm.k_sparse(1));
  CHECK((s1 - sm.k_dense(1)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("adjacency laplacian equals the squared phase matrix") {
  const SymmetricDomain dom = rect(3, 2);
  const BipartiteGraph g = dom.upper_closed_graph();
  const Eigen::MatrixXcd k = phase_matrix_dense(g, complex_phases(g));
  const Eigen::MatrixXcd lap = Eigen::MatrixXcd(black_laplacian(g));
  CHECK((k.adjoint() * k - lap).cwiseAbs().maxCoeff() < 1e-12);
}
