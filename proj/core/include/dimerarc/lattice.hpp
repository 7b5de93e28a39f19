#pragma once

// Lattice domains symmetric across the axis y = 0 and the bipartite
// graphs derived from them.  A domain is a set of lattice vertices (class
// B1); the derived graph adds one node per horizontal edge (W1), vertical
// edge (W0) and unit face (B0), with adjacency given by incidence.  The
// closed upper restriction keeps the axis row and is again of the same
// type; the strict restriction drops the axis row, leaving a free bottom
// row of vertical-edge nodes.

#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dimerarc/config.hpp"
#include "dimerarc/grid.hpp"

namespace dimerarc {

struct DomainDescriptor {
  std::string shape = "rectangle";  // "rectangle" or "plus"
  double eps = 1.0;
  int width = 0;       // lattice steps in x
  int height = 0;      // lattice steps in y, even; rows y = -height/2..height/2
  int arm_width = 0;   // "plus" only: steps of the vertical arm
  int arm_height = 0;  // "plus" only: extra rows above/below the bar
  double zx = 0.0;     // marked point, continuum coordinates
  double zy = 0.0;
  double delta = 0.0;  // required clearance between the marked point and the boundary
  std::string root = "rightmost";  // which axis vertex is removed

  static DomainDescriptor parse(KeyValues& kv);
  static DomainDescriptor parse_file(const std::string& path);
  std::string serialize() const;
};

// Bipartite incidence graph over grid nodes.  Whites and blacks are
// indexed separately; adjacency is stored on the white side.
struct BipartiteGraph {
  double eps = 1.0;
  std::vector<GridPoint> whites;
  std::vector<GridPoint> blacks;
  std::vector<std::vector<int>> adj;  // adj[w] = indices into blacks
  std::unordered_map<GridPoint, int, GridPointHash> white_index;
  std::unordered_map<GridPoint, int, GridPointHash> black_index;
  std::optional<GridPoint> removed_root;  // the deleted axis vertex, if any

  int white_count() const { return int(whites.size()); }
  int black_count() const { return int(blacks.size()); }
  int edge_count() const;
  bool has_white(GridPoint p) const { return white_index.count(p) > 0; }
  bool has_black(GridPoint p) const { return black_index.count(p) > 0; }
  int white_at(GridPoint p) const;
  int black_at(GridPoint p) const;
  bool adjacent(int w, int b) const;

  // Writes a plain-text adjacency dump: one line per white node listing
  // its position and its black neighbours' positions.
  void dump(std::ostream& out) const;
};

class SymmetricDomain {
 public:
  // Builds from a descriptor; validates symmetry and simple connectivity.
  static SymmetricDomain build(const DomainDescriptor& d);
  // Builds from an explicit vertex set (tests and custom shapes).
  static SymmetricDomain from_vertices(std::vector<GridPoint> vertices,
                                       double eps,
                                       const std::string& root = "rightmost");

  double eps() const { return eps_; }
  const std::vector<GridPoint>& vertices() const { return vertices_; }
  bool has_vertex(GridPoint p) const { return vset_.count(p) > 0; }
  GridPoint root() const { return root_; }

  // Marked face: the strict-upper face center nearest to the descriptor
  // point, with the snap offset in continuum units.
  GridPoint marked_face() const { return marked_face_; }
  double snap_offset() const { return snap_offset_; }
  void mark_point(double zx, double zy, double delta = 0.0);

  // Axis rows, sorted by x: lattice vertices at y = 0 and horizontal-edge
  // midpoints at y = 0.
  std::vector<GridPoint> axis_vertices() const;
  std::vector<GridPoint> axis_edge_midpoints() const;

  // Derived graphs.
  BipartiteGraph full_graph() const;           // whole symmetric domain, root removed
  BipartiteGraph upper_closed_graph() const;   // y >= 0, root removed
  BipartiteGraph upper_strict_graph() const;   // y > 0, nothing removed

 private:
  void validate() const;

  double eps_ = 1.0;
  std::vector<GridPoint> vertices_;
  std::unordered_set<GridPoint, GridPointHash> vset_;
  GridPoint root_{0, 0};
  GridPoint marked_face_{1, 1};
  double snap_offset_ = 0.0;
};

// Builds the incidence graph over a vertex set: whites at edge midpoints,
// blacks at vertices and at face centers of fully-cornered unit squares.
// remove_root deletes that one vertex node (it must lie in the set).
BipartiteGraph build_bipartite(const std::vector<GridPoint>& vertex_set,
                               double eps,
                               std::optional<GridPoint> remove_root);

}  // namespace dimerarc
