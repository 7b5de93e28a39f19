#include <doctest.h>

#include <algorithm>

#include "dimerarc/config.hpp"
#include "dimerarc/grid.hpp"
#include "dimerarc/lattice.hpp"

using namespace dimerarc;

namespace {

SymmetricDomain rect(int width, int height, double eps = 1.0) {
  DomainDescriptor d;
  d.shape = "rectangle";
  d.eps = eps;
  d.width = width;
  d.height = height;
  return SymmetricDomain::build(d);
}

}  // namespace

TEST_CASE("node classes follow coordinate parity") {
  CHECK(classify({0, 0}) == NodeClass::B1);
  CHECK(classify({1, 1}) == NodeClass::B0);
  CHECK(classify({0, 1}) == NodeClass::W0);
  CHECK(classify({1, 0}) == NodeClass::W1);
  for (int x = -3; x <= 3; ++x)
    for (int y = -3; y <= 3; ++y)
      CHECK(is_white(GridPoint{x, y}) == odd(x + y));
  CHECK(mirrored(GridPoint{3, -2}) == GridPoint{3, 2});
  const auto p = position({3, -2}, 0.5);
  CHECK(p.real() == doctest::Approx(0.75));
  CHECK(p.imag() == doctest::Approx(-0.5));
}

TEST_CASE("descriptor parses and serializes") {
  KeyValues kv = KeyValues::parse_text(
      "shape = rectangle\nwidth = 4\nheight = 6\neps = 0.25\nzx = 0.3\n"
      "zy = 0.4\nroot = rightmost\n",
      "<test>");
  const DomainDescriptor d = DomainDescriptor::parse(kv);
  kv.finish();
  CHECK(d.shape == "rectangle");
  CHECK(d.width == 4);
  CHECK(d.height == 6);
  CHECK(d.eps == doctest::Approx(0.25));
  CHECK(d.zx == doctest::Approx(0.3));

  KeyValues kv2 = KeyValues::parse_text(d.serialize(), "<roundtrip>");
  const DomainDescriptor d2 = DomainDescriptor::parse(kv2);
  kv2.finish();
  CHECK(d2.width == d.width);
  CHECK(d2.height == d.height);
  CHECK(d2.eps == doctest::Approx(d.eps));
  CHECK(d2.shape == d.shape);
}

TEST_CASE("rectangle domain geometry") {
  const SymmetricDomain dom = rect(4, 4);
  CHECK(dom.vertices().size() == 25);
  for (const GridPoint v : dom.vertices()) CHECK(dom.has_vertex(mirrored(v)));
  CHECK(dom.root() == GridPoint{8, 0});

  const auto av = dom.axis_vertices();
  REQUIRE(av.size() == 5);
  CHECK(av.front() == GridPoint{0, 0});
  CHECK(av.back() == GridPoint{8, 0});
  CHECK(std::is_sorted(av.begin(), av.end(),
                       [](GridPoint a, GridPoint b) { return a.x < b.x; }));

  const auto am = dom.axis_edge_midpoints();
  REQUIRE(am.size() == 4);
  CHECK(am.front() == GridPoint{1, 0});
  CHECK(am.back() == GridPoint{7, 0});
}

TEST_CASE("derived graphs are balanced with the expected counts") {
  const int w = 4, h = 4;
  const SymmetricDomain dom = rect(w, h);

  const BipartiteGraph full = dom.full_graph();
  CHECK(full.white_count() == w * (h + 1) + (w + 1) * h);
  CHECK(full.black_count() == (w + 1) * (h + 1) - 1 + w * h);
  CHECK(full.white_count() == full.black_count());
  CHECK(full.removed_root.has_value());
  CHECK(*full.removed_root == GridPoint{8, 0});
  CHECK_FALSE(full.has_black({8, 0}));

  const BipartiteGraph up = dom.upper_closed_graph();
  CHECK(up.white_count() == w * (h / 2 + 1) + (w + 1) * (h / 2));
  CHECK(up.white_count() == up.black_count());
  for (const GridPoint p : up.whites) CHECK(p.y >= 0);

  const BipartiteGraph st = dom.upper_strict_graph();
  CHECK(st.white_count() == (w + 1) * (h / 2) + w * (h / 2));
  CHECK(st.white_count() == st.black_count());
  CHECK_FALSE(st.removed_root.has_value());
  for (const GridPoint p : st.whites) CHECK(p.y >= 1);
  for (const GridPoint p : st.blacks) CHECK(p.y >= 1);
}

TEST_CASE("adjacency matches incidence") {
  const SymmetricDomain dom = rect(4, 4);
  const BipartiteGraph full = dom.full_graph();

  // A horizontal-edge node away from the boundary touches two vertices
  // and two faces.
  const int w0 = full.white_at({3, 0});
  std::vector<GridPoint> nbs;
  for (int b : full.adj[std::size_t(w0)]) nbs.push_back(full.blacks[std::size_t(b)]);
  std::sort(nbs.begin(), nbs.end());
  const std::vector<GridPoint> want{{2, 0}, {3, -1}, {3, 1}, {4, 0}};
  CHECK(nbs == want);

  // Every white touches at least two and at most four blacks.
  for (const auto& a : full.adj) {
    CHECK(a.size() >= 2);
    CHECK(a.size() <= 4);
  }

  // In the strict graph the bottom vertical-edge nodes lose their lower
  // vertex and keep the upper vertex plus surviving faces.
  const BipartiteGraph st = dom.upper_strict_graph();
  const int s0 = st.white_at({0, 1});
  std::vector<GridPoint> snbs;
  for (int b : st.adj[std::size_t(s0)]) snbs.push_back(st.blacks[std::size_t(b)]);
  std::sort(snbs.begin(), snbs.end());
  const std::vector<GridPoint> swant{{0, 2}, {1, 1}};
  CHECK(snbs == swant);
}

TEST_CASE("marked point snaps to the nearest strict upper face") {
  SymmetricDomain dom = rect(4, 4);
  dom.mark_point(0.45, 0.45);
  CHECK(dom.marked_face() == GridPoint{1, 1});
  CHECK(dom.snap_offset() ==
        doctest::Approx(0.5 * std::hypot(0.9 - 1.0, 0.9 - 1.0)));

  // Points in the lower half still snap to a strict upper face.
  dom.mark_point(0.55, -2.0);
  CHECK(dom.marked_face().y >= 1);

  // Clearance: the domain is 4 x 4 in continuum units, so an interior
  // point passes a small clearance and fails an impossible one.
  CHECK_NOTHROW(dom.mark_point(1.0, 1.0, 0.5));
  CHECK_THROWS(dom.mark_point(1.0, 1.0, 3.0));
}

TEST_CASE("invalid domains are rejected") {
  // Asymmetric vertex set.
  CHECK_THROWS(SymmetricDomain::from_vertices(
      {{0, 0}, {2, 0}, {0, 2}, {2, 2}}, 1.0));
  // Odd half-unit coordinates are not lattice vertices.
  CHECK_THROWS(SymmetricDomain::from_vertices({{1, 0}}, 1.0));
  // No unit square at all.
  CHECK_THROWS(SymmetricDomain::from_vertices({{0, 0}, {2, 0}}, 1.0));
  // Disconnected square cover.
  std::vector<GridPoint> two;
  for (int x : {0, 2, 6, 8})
    for (int y : {-2, 0, 2}) two.push_back({x, y});
  CHECK_THROWS(SymmetricDomain::from_vertices(std::move(two), 1.0));
  // Odd height is rejected by the descriptor path.
  DomainDescriptor d;
  d.width = 2;
  d.height = 3;
  CHECK_THROWS(SymmetricDomain::build(d));
}

TEST_CASE("plus domain builds and stays balanced") {
  DomainDescriptor d;
  d.shape = "plus";
  d.width = 3;
  d.height = 2;
  d.arm_width = 1;
  d.arm_height = 1;
  const SymmetricDomain dom = SymmetricDomain::build(d);
  for (const GridPoint v : dom.vertices()) CHECK(dom.has_vertex(mirrored(v)));
  const BipartiteGraph full = dom.full_graph();
  CHECK(full.white_count() == full.black_count());
  const BipartiteGraph st = dom.upper_strict_graph();
  CHECK(st.white_count() == st.black_count());
}
