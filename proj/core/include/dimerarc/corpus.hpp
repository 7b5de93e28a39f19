#pragma once

// A fixed corpus of small folded graphs with valid edge phases, used to
// cross-validate the Pfaffian identity against brute-force enumeration.
// Entries stay small enough (at most 36 doubled vertices) that every
// matching of the doubled graph can be enumerated.

#include <string>
#include <utility>
#include <vector>

#include "dimerarc/cylinder.hpp"
#include "dimerarc/kasteleyn.hpp"
#include "dimerarc/lattice.hpp"

namespace dimerarc {

struct CorpusEntry {
  std::string name;
  FoldedGraph fg;
  EdgePhases phases;
};

namespace detail {

inline std::vector<GridPoint> rectangle_vertices(int w, int h) {
  std::vector<GridPoint> v;
  for (int y = -h; y <= h; y += 2)
    for (int x = 0; x <= 2 * w; x += 2) v.push_back({x, y});
  return v;
}

// Folded upper graph of a symmetric domain: the closed restriction with
// the axis row as both arc and folded set.
inline CorpusEntry folded_domain_entry(const std::string& name,
                                       std::vector<GridPoint> vertices) {
  SymmetricDomain dom = SymmetricDomain::from_vertices(std::move(vertices), 1.0);
  BipartiteGraph g = dom.upper_closed_graph();
  std::vector<GridPoint> axis;
  for (GridPoint p : dom.axis_vertices())
    if (p != dom.root()) axis.push_back(p);
  for (GridPoint p : dom.axis_edge_midpoints()) axis.push_back(p);
  std::sort(axis.begin(), axis.end(),
            [](GridPoint a, GridPoint b) { return a.x > b.x; });
  EdgePhases ph = complex_phases(g);
  FoldedGraph fg = build_folded_graph(g, axis, axis);
  enforce_boundary_alternation(ph, fg);
  return {name, std::move(fg), std::move(ph)};
}

// Strict upper graph with the free bottom row folded: arcs may then end
// on two white vertices, exercising the same-color pairing case.
inline CorpusEntry folded_strict_entry(const std::string& name,
                                       std::vector<GridPoint> vertices,
                                       bool fold_bottom) {
  SymmetricDomain dom = SymmetricDomain::from_vertices(std::move(vertices), 1.0);
  BipartiteGraph g = dom.upper_strict_graph();
  std::vector<GridPoint> arc, folded;
  for (const GridPoint& p : g.whites)
    if (p.y == 1) arc.push_back(p);
  for (const GridPoint& p : g.blacks)
    if (p.y == 1) arc.push_back(p);
  std::sort(arc.begin(), arc.end(),
            [](GridPoint a, GridPoint b) { return a.x > b.x; });
  // Folding the whole bottom row except its leftmost white keeps the
  // folded set color-balanced; superpositions then contain arcs whose two
  // endpoints can share a color.
  if (fold_bottom)
    for (const GridPoint& p : arc)
      if (p.x >= 1) folded.push_back(p);
  EdgePhases ph = complex_phases(g);
  FoldedGraph fg = build_folded_graph(g, arc, folded);
  enforce_boundary_alternation(ph, fg);
  return {name, std::move(fg), std::move(ph)};
}

inline CorpusEntry cylinder_entry(int n, int m) {
  CylinderModel cm = build_cylinder_model(n, m);
  return {"cylinder-" + std::to_string(n) + "x" + std::to_string(m),
          std::move(cm.fg), std::move(cm.phases)};
}

}  // namespace detail

// Twenty-plus small folded graphs covering domain folds, free-boundary
// double dimers, partial white-only folds and cylinders.
inline std::vector<CorpusEntry> identity_corpus() {
  using detail::rectangle_vertices;
  std::vector<CorpusEntry> out;

  out.push_back(detail::folded_domain_entry("domain-2x2", rectangle_vertices(2, 2)));
  out.push_back(detail::folded_domain_entry("domain-3x2", rectangle_vertices(3, 2)));
  out.push_back(detail::folded_domain_entry("domain-2x4", rectangle_vertices(2, 4)));
  {
    // A plus-shaped domain: a wide bar with one extra square above and
    // below the middle column.
    DomainDescriptor d;
    d.shape = "plus";
    d.width = 3;
    d.height = 2;
    d.arm_width = 1;
    d.arm_height = 1;
    const SymmetricDomain dom = SymmetricDomain::build(d);
    out.push_back(detail::folded_domain_entry("domain-plus", dom.vertices()));
  }

  out.push_back(detail::folded_strict_entry("strict-2x2-free",
                                            rectangle_vertices(2, 2), false));
  out.push_back(detail::folded_strict_entry("strict-3x2-free",
                                            rectangle_vertices(3, 2), false));
  out.push_back(detail::folded_strict_entry("strict-4x2-free",
                                            rectangle_vertices(4, 2), false));
  out.push_back(detail::folded_strict_entry("strict-2x2-fold",
                                            rectangle_vertices(2, 2), true));
  out.push_back(detail::folded_strict_entry("strict-3x2-fold",
                                            rectangle_vertices(3, 2), true));
  out.push_back(detail::folded_strict_entry("strict-4x2-fold",
                                            rectangle_vertices(4, 2), true));

  for (auto [n, m] : {std::pair{2, 2}, {3, 2}, {4, 2}, {5, 2}, {6, 2},
                      {2, 4}, {3, 4}, {4, 4}, {2, 6}, {3, 6}}) {
    out.push_back(detail::cylinder_entry(n, m));
  }
  return out;
}

// Tiny symmetric domains for enumeration-backed checks: generating
// identity, sampler goodness of fit.
inline std::vector<std::pair<std::string, SymmetricDomain>> small_domains() {
  using detail::rectangle_vertices;
  std::vector<std::pair<std::string, SymmetricDomain>> out;
  out.emplace_back("rect-2x2", SymmetricDomain::from_vertices(
                                   rectangle_vertices(2, 2), 1.0));
  out.emplace_back("rect-3x2", SymmetricDomain::from_vertices(
                                   rectangle_vertices(3, 2), 1.0));
  out.emplace_back("rect-2x4", SymmetricDomain::from_vertices(
                                   rectangle_vertices(2, 4), 1.0));
  return out;
}

}  // namespace dimerarc
