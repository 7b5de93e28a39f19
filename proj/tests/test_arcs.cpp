#include <algorithm>
#include <map>
#include <vector>

#include "dimerarc/arcs.hpp"
#include "dimerarc/corpus.hpp"
#include "dimerarc/enumerate.hpp"
#include "doctest.h"

using namespace dimerarc;

TEST_CASE("folding a symmetric matching yields arcs ending on the axis") {
  for (const auto& [name, dom] : small_domains()) {
    INFO("domain ", name);
    const BipartiteGraph full = dom.full_graph();
    const auto matchings = enumerate_matchings(full);
    REQUIRE(matchings.size() > 0);
    // Spot-check a spread of matchings rather than every one.
    for (std::size_t mi = 0; mi < matchings.size(); mi += 1 + matchings.size() / 16) {
      const Matching m = matching_edges(full, matchings[mi]);
      const auto [m1, m2] = fold_matching(m);
      CHECK(m1.size() + m2.size() == m.size());
      for (const auto& e : m1) {
        CHECK(e.w.y >= 0);
        CHECK(e.b.y >= 0);
      }
      for (const auto& e : m2) {
        CHECK(e.w.y >= 0);
        CHECK(e.b.y >= 0);
        CHECK(!(e.w.y == 0 && e.b.y == 0));
      }
      const auto comps = superimpose(m1, m2);
      // Superposition degree: two everywhere except the axis row, which
      // is covered once and so collects the arc endpoints.
      std::map<GridPoint, int> degree;
      for (const auto& c : comps)
        for (const auto& te : c.edges) {
          degree[te.e.w] += 1;
          degree[te.e.b] += 1;
        }
      for (const auto& [p, d] : degree) CHECK(d == (p.y == 0 ? 1 : 2));
      for (const auto& c : comps) {
        if (c.kind == Component::Kind::arc) {
          CHECK(c.vertices.front().y == 0);
          CHECK(c.vertices.back().y == 0);
          for (std::size_t i = 1; i + 1 < c.vertices.size(); ++i)
            CHECK(c.vertices[i].y > 0);
        }
        if (c.kind == Component::Kind::loop)
          for (const GridPoint p : c.vertices) CHECK(p.y > 0);
        // Arcs run from their white endpoint to their black endpoint;
        // loops traverse first-matching edges white to black.  Either
        // way the walk alternates colors.
        if (c.kind == Component::Kind::arc) {
          CHECK(is_white(classify(c.vertices.front())));
          CHECK(!is_white(classify(c.vertices.back())));
        }
        if (c.kind == Component::Kind::loop) {
          const bool from_white = is_white(classify(c.vertices[0]));
          CHECK(from_white == (c.edges[0].which == 1));
        }
        for (std::size_t i = 1; i < c.vertices.size(); ++i)
          CHECK(is_white(classify(c.vertices[i])) !=
                is_white(classify(c.vertices[i - 1])));
      }
    }
  }
}

TEST_CASE("ray crossings count square loops by orientation") {
  const GridPoint face{1, 1};
  const RayAnchor ray = ray_from_face(face);
  // A clockwise square around the face crosses the upward ray once from
  // left to right.
  const std::vector<GridPoint> cw{{0, 0}, {0, 2}, {2, 2}, {2, 0}, {0, 0}};
  CHECK(net_ray_crossings(cw, ray) == 1);
  const std::vector<GridPoint> ccw{{0, 0}, {2, 0}, {2, 2}, {0, 2}, {0, 0}};
  CHECK(net_ray_crossings(ccw, ray) == -1);
  // A square that misses the marked face does not wind around it.
  const std::vector<GridPoint> off{{4, 0}, {4, 2}, {6, 2}, {6, 0}, {4, 0}};
  CHECK(net_ray_crossings(off, ray) == 0);
  CHECK_THROWS(ray_from_face(GridPoint{0, 0}));
  CHECK_THROWS(ray_from_face(GridPoint{1, 0}));
}

TEST_CASE("winding statistics stay within the nesting bounds") {
  for (const auto& [name, dom] : small_domains()) {
    INFO("domain ", name);
    const BipartiteGraph full = dom.full_graph();
    const GridPoint face = dom.marked_face();
    const auto matchings = enumerate_matchings(full);
    long total_arcs = 0;
    for (std::size_t mi = 0; mi < matchings.size(); mi += 1 + matchings.size() / 64) {
      const Matching m = matching_edges(full, matchings[mi]);
      const auto [m1, m2] = fold_matching(m);
      const auto comps = superimpose(m1, m2);
      const WindingCounts wc = arc_windings(comps, face);
      CHECK(wc.o() <= 1);
      CHECK(wc.n() >= 0);
      CHECK(wc.plus + wc.minus <= wc.arcs);
      total_arcs += wc.arcs;
    }
    CHECK(total_arcs > 0);
  }
}

TEST_CASE("height increments are antisymmetric and vanish around vertices") {
  const auto domains = small_domains();
  const SymmetricDomain& dom = domains[0].second;
  const BipartiteGraph full = dom.full_graph();
  const auto matchings = enumerate_matchings(full);
  const Matching m = matching_edges(full, matchings[7 % matchings.size()]);
  const auto [m1, m2] = fold_matching(m);
  const auto comps = superimpose(m1, m2);
  for (const auto& c : comps)
    for (const auto& te : c.edges) {
      const auto [l, r] = edge_side_cells(te.e);
      CHECK(height_increment(te, l, r) == -height_increment(te, r, l));
      CHECK_THROWS(height_increment(te, l, l));
    }
  // Walking the four cells around an interior vertex crosses its four
  // superposition edges once each; the increments cancel.
  std::map<GridPoint, std::vector<TaggedEdge>> incident;
  for (const auto& c : comps)
    for (const auto& te : c.edges) {
      incident[te.e.w].push_back(te);
      incident[te.e.b].push_back(te);
    }
  int checked = 0;
  for (const auto& [p, edges] : incident) {
    if (p.y <= 0) continue;
    // Each vertex carries exactly two covered edge units; a full circle
    // around it crosses both once, and uncovered lattice edges add
    // nothing.
    std::map<GridPoint, std::vector<const TaggedEdge*>> by_other;
    for (const auto& te : edges) {
      const GridPoint other = te.e.w == p ? te.e.b : te.e.w;
      by_other[other].push_back(&te);
    }
    // Side cells live at the sum of the edge endpoints, so the four cells
    // around p sit at 2p plus a diagonal offset, counterclockwise.
    const GridPoint c0{2 * p.x, 2 * p.y};
    const GridPoint cells[4] = {c0 + GridPoint{1, 1}, c0 + GridPoint{-1, 1},
                                c0 + GridPoint{-1, -1}, c0 + GridPoint{1, -1}};
    int sum = 0;
    for (int i = 0; i < 4; ++i) {
      const GridPoint from = cells[std::size_t(i)];
      const GridPoint to = cells[std::size_t((i + 1) % 4)];
      // The crossed edge leads from p to the neighbor whose endpoint sum
      // is the midpoint of the two cells.
      const GridPoint mid{(from.x + to.x) / 2 - p.x, (from.y + to.y) / 2 - p.y};
      const auto it = by_other.find(mid);
      if (it == by_other.end()) continue;
      for (const TaggedEdge* te : it->second)
        sum += height_increment(*te, from, to);
    }
    CHECK(sum == 0);
    ++checked;
  }
  CHECK(checked > 0);
}

TEST_CASE("moment estimates reduce to means with jackknife errors") {
  std::vector<WindingCounts> samples;
  for (int i = 0; i < 8; ++i) {
    WindingCounts wc;
    wc.plus = i % 2;
    wc.arcs = 3;
    samples.push_back(wc);
  }
  const ArcMoments m = estimate_moments(samples);
  CHECK(m.odd.mean == doctest::Approx(0.5));
  CHECK(m.count.mean == doctest::Approx(0.5));
  CHECK(m.odd.se > 0.0);
}
