#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

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

// Spanning tree count of the (cols x rows) grid graph by the matrix-tree
// theorem: determinant of the Laplacian with one row and column removed.
double grid_tree_count(int cols, int rows) {
  const int n = cols * rows;
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  auto id = [cols](int x, int y) { return y * cols + x; };
  for (int y = 0; y < rows; ++y)
    for (int x = 0; x < cols; ++x) {
      if (x + 1 < cols) {
        const int a = id(x, y), b = id(x + 1, y);
        lap(a, a) += 1; lap(b, b) += 1; lap(a, b) -= 1; lap(b, a) -= 1;
      }
      if (y + 1 < rows) {
        const int a = id(x, y), b = id(x, y + 1);
        lap(a, a) += 1; lap(b, b) += 1; lap(a, b) -= 1; lap(b, a) -= 1;
      }
    }
  return lap.topLeftCorner(n - 1, n - 1).determinant();
}

const CorpusEntry& entry_named(const std::vector<CorpusEntry>& corpus,
                               const std::string& name) {
  for (const CorpusEntry& e : corpus)
    if (e.name == name) return e;
  FAIL("no corpus entry named ", name);
  return corpus.front();
}

Connection random_connection(const FoldedGraph& fg, std::mt19937_64& rng) {
  auto box = [&rng] {
    return cplx(2.0 * uniform_double(rng) - 1.0, 2.0 * uniform_double(rng) - 1.0);
  };
  Connection conn;
  for (int wi = 0; wi < fg.base.white_count(); ++wi) {
    const GridPoint w = fg.base.whites[std::size_t(wi)];
    for (int bi : fg.base.adj[std::size_t(wi)]) {
      const GridPoint b = fg.base.blacks[std::size_t(bi)];
      const EdgeKey e{w, b};
      const bool wf = fg.is_folded(w), bf = fg.is_folded(b);
      if (wf && bf) {
        conn.nu[e] = box();
      } else if (wf || bf) {
        conn.psi[e] = Eigen::Vector2cd(box(), box());
      } else {
        conn.phi[e] = random_sl2(rng);
      }
    }
  }
  return conn;
}

}  // namespace

TEST_CASE("matching counts agree with the matrix-tree theorem") {
  for (const auto [w, h] : {std::pair{2, 2}, std::pair{3, 2}}) {
    const SymmetricDomain dom = rect(w, h);
    const auto all = enumerate_matchings(dom.full_graph());
    const double trees = grid_tree_count(w + 1, h + 1);
    CHECK(double(all.size()) == doctest::Approx(trees).epsilon(1e-9));
  }
}

TEST_CASE("matchings are valid and the cap triggers") {
  const SymmetricDomain dom = rect(2, 2);
  const BipartiteGraph g = dom.full_graph();
  const auto all = enumerate_matchings(g);
  for (const auto& m : all) {
    std::vector<int> used(std::size_t(g.black_count()), 0);
    for (int w = 0; w < g.white_count(); ++w) {
      REQUIRE(m[std::size_t(w)] >= 0);
      CHECK(g.adjacent(w, m[std::size_t(w)]));
      ++used[std::size_t(m[std::size_t(w)])];
    }
    for (int c : used) CHECK(c == 1);
  }
  CHECK_THROWS(enumerate_matchings(g, 10));
}

TEST_CASE("projected configurations decompose the doubled cover") {
  const auto corpus = identity_corpus();
  for (const std::string name :
       {"domain-2x2", "strict-2x2-fold", "cylinder-2x2", "cylinder-2x4"}) {
    const CorpusEntry& e = entry_named(corpus, name);
    const DoubledGraph dg = doubled_graph(e.fg);
    const auto matchings = enumerate_matchings(dg.ab, 500000);
    REQUIRE(!matchings.empty());

    std::vector<std::string> keys;
    for (const auto& m : matchings) {
      const OmegaConfig cfg = project(dg, m);
      keys.push_back(cfg.key);

      int edge_units = 0;
      for (const auto& [ek, mult] : cfg.edges) {
        CHECK(mult >= 1);
        CHECK(mult <= 2);
        edge_units += mult;
      }
      CHECK(edge_units == dg.ab.nw);

      for (const auto& loop : cfg.loops) {
        CHECK(loop.size() >= 4);
        CHECK(loop.size() % 2 == 0);
        for (const GridPoint p : loop) CHECK_FALSE(e.fg.is_folded(p));
      }
      for (const auto& arc : cfg.arcs) {
        REQUIRE(arc.size() >= 2);
        CHECK(e.fg.is_folded(arc.front()));
        CHECK(e.fg.is_folded(arc.back()));
        for (std::size_t k = 1; k + 1 < arc.size(); ++k)
          CHECK_FALSE(e.fg.is_folded(arc[k]));
        if (is_black(arc.back()) != is_black(arc.front()))
          CHECK(is_black(arc.front()));
      }
    }

    // Distinct configurations deduplicate by key.
    const auto omegas = enumerate_omega(e.fg);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    CHECK(omegas.size() == keys.size());
  }
}

TEST_CASE("pfaffian matches the loop-and-arc expansion") {
  const auto corpus = identity_corpus();
  for (const std::string name :
       {"domain-2x2", "strict-2x2-free", "strict-2x2-fold", "strict-3x2-fold",
        "strict-4x2-fold", "cylinder-2x2", "cylinder-3x2", "cylinder-4x2",
        "cylinder-2x4"}) {
    const CorpusEntry& e = entry_named(corpus, name);
    const DoubledGraph dg = doubled_graph(e.fg);
    for (int rep = 0; rep < 4; ++rep) {
      INFO("entry ", name, " rep ", rep);
      std::mt19937_64 rng = substream(99, std::uint64_t(rep));
      const Connection conn =
          rep == 0 ? Connection{} : random_connection(e.fg, rng);
      const SkewMatrix k = assemble_K(e.fg, e.phases, conn);
      const cplx pf = pfaffian(k).value();
      const cplx rhs = kenyon_rhs(e.fg, e.phases, conn);
      CHECK(std::abs(pf - rhs) <= 1e-9 * std::max(1.0, std::abs(pf)));
    }
  }
}

TEST_CASE("every matching term carries the predicted sign") {
  const auto corpus = identity_corpus();
  for (const std::string name :
       {"domain-2x2", "strict-2x2-fold", "cylinder-2x2", "cylinder-2x4"}) {
    const CorpusEntry& e = entry_named(corpus, name);
    const DoubledGraph dg = doubled_graph(e.fg);
    for (int rep = 0; rep < 2; ++rep) {
      INFO("entry ", name, " rep ", rep);
      std::mt19937_64 rng = substream(7, std::uint64_t(rep));
      const Connection conn =
          rep == 0 ? Connection{} : random_connection(e.fg, rng);
      const SkewMatrix k = assemble_K(e.fg, e.phases, conn);
      CHECK(sign_lemma_check(e.fg, e.phases, k, conn, dg) < 1e-10);
    }
  }
}
