#include "dimerarc/arcs.hpp"

#include <algorithm>
#include <map>

#include "dimerarc/error.hpp"

namespace dimerarc {

namespace {

long cross2(long ax, long ay, long bx, long by) { return ax * by - ay * bx; }

}  // namespace

Matching matching_edges(const BipartiteGraph& g, const std::vector<int>& matching) {
  require(matching.size() == g.whites.size(), "matching size mismatch");
  Matching out;
  out.reserve(matching.size());
  for (std::size_t w = 0; w < matching.size(); ++w)
    out.push_back(EdgeKey{g.whites[w], g.blacks[std::size_t(matching[w])]});
  return out;
}

FoldedPair fold_matching(const Matching& full) {
  FoldedPair fp;
  for (const auto& e : full) {
    if (e.w.y >= 0 && e.b.y >= 0) fp.m1.push_back(e);
    if (e.w.y <= 0 && e.b.y <= 0 && !(e.w.y == 0 && e.b.y == 0))
      fp.m2.push_back(EdgeKey{mirrored(e.w), mirrored(e.b)});
  }
  return fp;
}

std::vector<Component> superimpose(const Matching& m1, const Matching& m2) {
  std::vector<Component> comps;
  // Edges present in both matchings become doubled two-cycles directly.
  std::unordered_map<EdgeKey, int, EdgeKeyHash> first;
  for (const auto& e : m1) first[e] += 1;
  struct Inst {
    GridPoint other;
    int which;
    bool used = false;
  };
  std::map<GridPoint, std::vector<Inst>> nbrs;
  auto add_edge = [&](const EdgeKey& e, int which) {
    nbrs[e.w].push_back({e.b, which});
    nbrs[e.b].push_back({e.w, which});
  };
  for (const auto& e : m2) {
    auto it = first.find(e);
    if (it != first.end() && it->second > 0) {
      it->second -= 1;
      Component c;
      c.kind = Component::Kind::doubled;
      c.vertices = {e.w, e.b};
      c.edges = {{e, 1}, {e, 2}};
      comps.push_back(std::move(c));
    } else {
      add_edge(e, 2);
    }
  }
  for (const auto& e : m1)
    for (int k = 0; k < first[e]; ++k) add_edge(e, 1);
  for (auto& [p, list] : nbrs) {
    (void)p;
    require(list.size() <= 2, "superposition degree above two");
  }
  auto take_step = [&](GridPoint cur, std::vector<GridPoint>& verts,
                       std::vector<TaggedEdge>& edges) -> bool {
    for (auto& inst : nbrs[cur]) {
      if (inst.used) continue;
      inst.used = true;
      for (auto& back : nbrs[inst.other]) {
        if (!back.used && back.other == cur && back.which == inst.which) {
          back.used = true;
          break;
        }
      }
      const EdgeKey e = is_white(classify(cur)) ? EdgeKey{cur, inst.other}
                                                : EdgeKey{inst.other, cur};
      edges.push_back({e, inst.which});
      verts.push_back(inst.other);
      return true;
    }
    return false;
  };
  // Orientation conventions.  Arcs run from their white endpoint to their
  // black endpoint; this is the positional convention under which an
  // enclosing arc whose white end lies left of its black end winds the
  // face positively and carries the heavier connection weight.  Loops
  // have no endpoints, so their direction is fixed by traversing
  // first-matching edges white to black.
  auto orient = [](Component& c) {
    bool keep;
    if (c.kind == Component::Kind::arc) {
      keep = is_white(classify(c.vertices.front()));
    } else {
      const bool from_white = is_white(classify(c.vertices[0]));
      keep = from_white == (c.edges[0].which == 1);
    }
    if (keep) return;
    if (c.kind == Component::Kind::arc) {
      std::reverse(c.vertices.begin(), c.vertices.end());
      std::reverse(c.edges.begin(), c.edges.end());
    } else {
      std::reverse(c.vertices.begin() + 1, c.vertices.end());
      std::reverse(c.edges.begin(), c.edges.end());
    }
  };
  for (auto& [start, list] : nbrs) {
    if (list.size() != 1 || list[0].used) continue;
    Component c;
    c.kind = Component::Kind::arc;
    c.vertices = {start};
    GridPoint cur = start;
    while (take_step(cur, c.vertices, c.edges)) cur = c.vertices.back();
    orient(c);
    comps.push_back(std::move(c));
  }
  for (auto& [start, list] : nbrs) {
    bool fresh = false;
    for (const auto& inst : list) fresh = fresh || !inst.used;
    if (!fresh) continue;
    Component c;
    c.kind = Component::Kind::loop;
    c.vertices = {start};
    GridPoint cur = start;
    while (take_step(cur, c.vertices, c.edges)) cur = c.vertices.back();
    require(c.vertices.front() == c.vertices.back(), "open walk left after arcs");
    c.vertices.pop_back();
    require(c.vertices.size() >= 4, "loop shorter than four vertices");
    orient(c);
    comps.push_back(std::move(c));
  }
  return comps;
}

RayAnchor ray_from_face(GridPoint face) {
  require(classify(face) == NodeClass::B0, "marked point must be a face center");
  // Quarter-step refinement: graph vertices sit at multiples of four, the
  // anchor at offsets two and one, so the ray never meets a vertex.
  return RayAnchor{4L * face.x + 2, 4L * face.y + 1};
}

int net_ray_crossings(const std::vector<GridPoint>& vertices, RayAnchor ray) {
  int net = 0;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    const long x1 = 4L * vertices[i].x, y1 = 4L * vertices[i].y;
    const long x2 = 4L * vertices[i + 1].x, y2 = 4L * vertices[i + 1].y;
    if (y1 != y2) continue;  // vertical segments never meet the vertical ray
    if (y1 <= ray.y) continue;
    if (std::min(x1, x2) > ray.x || std::max(x1, x2) < ray.x) continue;
    net += x2 > x1 ? 1 : -1;
  }
  return net;
}

WindingCounts arc_windings(const std::vector<Component>& comps, GridPoint face) {
  const RayAnchor ray = ray_from_face(face);
  WindingCounts wc;
  for (const auto& c : comps) {
    if (c.kind != Component::Kind::arc) continue;
    wc.arcs += 1;
    // The virtual closure through the endpoints must stay below the ray
    // base, so the net over the walked edges is the full winding.
    require(4L * c.vertices.front().y < ray.y && 4L * c.vertices.back().y < ray.y,
            "arc endpoint not below the ray base");
    const int m = net_ray_crossings(c.vertices, ray);
    require(m >= -1 && m <= 1, "arc winds more than once");
    if (m > 0) wc.plus += 1;
    if (m < 0) wc.minus += 1;
  }
  require(wc.o() <= 1, "nested arc windings failed to alternate");
  return wc;
}

std::pair<GridPoint, GridPoint> edge_side_cells(const EdgeKey& e) {
  const GridPoint mid{e.w.x + e.b.x, e.w.y + e.b.y};
  const GridPoint step = e.b - e.w;
  const GridPoint perp{-step.y, step.x};
  return {mid + perp, mid - perp};
}

int height_increment(const TaggedEdge& te, GridPoint from_cell, GridPoint to_cell) {
  const auto [left, right] = edge_side_cells(te.e);
  require((from_cell == left && to_cell == right) ||
              (from_cell == right && to_cell == left),
          "cells do not border the crossed edge");
  const GridPoint d = to_cell - from_cell;
  const GridPoint wb = te.e.w - te.e.b;
  const int side = cross2(d.x, d.y, wb.x, wb.y) > 0 ? 1 : -1;
  return side * (te.which == 1 ? 1 : -1);
}

ArcMoments estimate_moments(const std::vector<WindingCounts>& samples) {
  std::vector<double> odd, count;
  odd.reserve(samples.size());
  count.reserve(samples.size());
  for (const auto& wc : samples) {
    odd.push_back(double(wc.o()));
    count.push_back(double(wc.n()));
  }
  ArcMoments m;
  m.odd = jackknife_mean(odd);
  m.count = jackknife_mean(count);
  return m;
}

}  // namespace dimerarc
