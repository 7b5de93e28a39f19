#pragma once

// Superposition of two matchings of the upper half domain, obtained by
// folding one matching of the symmetric domain across the axis, and the
// winding statistics of the resulting arcs around a marked face.

#include <vector>

#include "dimerarc/kasteleyn.hpp"
#include "dimerarc/lattice.hpp"
#include "dimerarc/stats.hpp"

namespace dimerarc {

using Matching = std::vector<EdgeKey>;

// Matching of a bipartite graph from white-to-black index assignments.
Matching matching_edges(const BipartiteGraph& g, const std::vector<int>& matching);

// Folding a symmetric-domain matching: the first half keeps every edge
// with both endpoints on or above the axis, the second half mirrors the
// edges with both endpoints on or below the axis except the axis-axis
// ones, which stay in the first half only.
struct FoldedPair {
  Matching m1, m2;
};

FoldedPair fold_matching(const Matching& full);

struct TaggedEdge {
  EdgeKey e;
  int which = 0;  // 1 or 2 for the source matching
};

// Connected component of the superposition multigraph: doubled edges,
// open arcs between singly-covered vertices, or closed loops.  Arcs run
// from their white endpoint to their black endpoint, matching the
// connection weight that favors arcs whose white end lies left of their
// black end.  Loops are oriented so edges from the first matching are
// traversed white to black.
struct Component {
  enum class Kind { doubled, arc, loop };
  Kind kind = Kind::doubled;
  std::vector<GridPoint> vertices;  // walk order; loops omit the repeat of the start
  std::vector<TaggedEdge> edges;    // edges[i] joins vertices[i] and vertices[i + 1]
};

std::vector<Component> superimpose(const Matching& m1, const Matching& m2);

// Base point, in quarter-of-a-step units, of the vertical upward ray
// anchored just northeast of a marked face center.  The offset keeps the
// ray clear of every graph vertex, so crossings are always transversal.
struct RayAnchor {
  long x = 0, y = 0;
};

RayAnchor ray_from_face(GridPoint face);

// Net signed crossings of the walk with the upward ray; left-to-right
// crossings count plus one.  Open walks are treated as closed through
// their endpoints via a path that stays below the ray base.
int net_ray_crossings(const std::vector<GridPoint>& vertices, RayAnchor ray);

// Arcs of the superposition classified by their winding around the
// marked face.  Each arc closed through the axis is a simple closed
// curve, so its net winding is -1, 0 or +1, and windings of nested arcs
// alternate, keeping the imbalance within one.
struct WindingCounts {
  int plus = 0;
  int minus = 0;
  int arcs = 0;

  int n() const { return plus + minus; }
  int o() const { return plus > minus ? plus - minus : minus - plus; }
};

WindingCounts arc_windings(const std::vector<Component>& comps, GridPoint face);

// The two quadrilateral cells bordering an edge, as quarter-unit centers.
std::pair<GridPoint, GridPoint> edge_side_cells(const EdgeKey& e);

// Height change when stepping from one side cell to the other across a
// superposition edge: plus one for first-matching edges crossed with the
// white endpoint on the left, with the sign flipped for the second
// matching.  Increments around any vertex sum to zero.
int height_increment(const TaggedEdge& te, GridPoint from_cell, GridPoint to_cell);

// Sampled winding observables with jackknife errors.
struct ArcMoments {
  MeanSe odd;
  MeanSe count;
};

ArcMoments estimate_moments(const std::vector<WindingCounts>& samples);

}  // namespace dimerarc
