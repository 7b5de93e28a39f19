#include "dimerarc/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <ostream>
#include <sstream>

#include "dimerarc/error.hpp"

namespace dimerarc {

namespace {

bool is_nanish(double v) { return std::isnan(v); }

// Face centers of all unit squares whose four corners lie in the set.
std::vector<GridPoint> face_centers(
    const std::unordered_set<GridPoint, GridPointHash>& vset) {
  std::vector<GridPoint> faces;
  for (const GridPoint v : vset) {
    const GridPoint c{v.x + 1, v.y + 1};
    if (vset.count({v.x + 2, v.y}) && vset.count({v.x, v.y + 2}) &&
        vset.count({v.x + 2, v.y + 2}))
      faces.push_back(c);
  }
  std::sort(faces.begin(), faces.end(),
            [](GridPoint a, GridPoint b) { return std::pair(a.y, a.x) < std::pair(b.y, b.x); });
  return faces;
}

double point_segment_distance(double px, double py, double ax, double ay,
                              double bx, double by) {
  const double dx = bx - ax, dy = by - ay;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((px - ax) * dx + (py - ay) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double cx = ax + t * dx, cy = ay + t * dy;
  return std::hypot(px - cx, py - cy);
}

}  // namespace

DomainDescriptor DomainDescriptor::parse(KeyValues& kv) {
  DomainDescriptor d;
  d.shape = kv.get_string("shape", "rectangle");
  d.eps = kv.get_double("eps");
  d.width = int(kv.get_int("width"));
  d.height = int(kv.get_int("height"));
  d.arm_width = int(kv.get_int("arm_width", 0));
  d.arm_height = int(kv.get_int("arm_height", 0));
  d.zx = kv.get_double("zx", std::numeric_limits<double>::quiet_NaN());
  d.zy = kv.get_double("zy", std::numeric_limits<double>::quiet_NaN());
  d.delta = kv.get_double("delta", 0.0);
  d.root = kv.get_string("root", "rightmost");
  return d;
}

DomainDescriptor DomainDescriptor::parse_file(const std::string& path) {
  KeyValues kv = KeyValues::parse_file(path);
  DomainDescriptor d = parse(kv);
  kv.finish();
  return d;
}

std::string DomainDescriptor::serialize() const {
  std::ostringstream out;
  out << "shape = " << shape << "\n";
  out << "eps = " << eps << "\n";
  out << "width = " << width << "\n";
  out << "height = " << height << "\n";
  if (shape == "plus") {
    out << "arm_width = " << arm_width << "\n";
    out << "arm_height = " << arm_height << "\n";
  }
  if (!is_nanish(zx)) out << "zx = " << zx << "\n";
  if (!is_nanish(zy)) out << "zy = " << zy << "\n";
  if (delta > 0.0) out << "delta = " << delta << "\n";
  out << "root = " << root << "\n";
  return out.str();
}

int BipartiteGraph::edge_count() const {
  int n = 0;
  for (const auto& nb : adj) n += int(nb.size());
  return n;
}

int BipartiteGraph::white_at(GridPoint p) const {
  auto it = white_index.find(p);
  require(it != white_index.end(), "BipartiteGraph: no white node at requested point");
  return it->second;
}

int BipartiteGraph::black_at(GridPoint p) const {
  auto it = black_index.find(p);
  require(it != black_index.end(), "BipartiteGraph: no black node at requested point");
  return it->second;
}

bool BipartiteGraph::adjacent(int w, int b) const {
  const auto& nb = adj[std::size_t(w)];
  return std::find(nb.begin(), nb.end(), b) != nb.end();
}

void BipartiteGraph::dump(std::ostream& out) const {
  out << "# eps = " << eps << "\n";
  out << "# whites = " << white_count() << " blacks = " << black_count()
      << " edges = " << edge_count() << "\n";
  if (removed_root)
    out << "# removed_root = " << removed_root->x << " " << removed_root->y << "\n";
  for (int w = 0; w < white_count(); ++w) {
    out << whites[std::size_t(w)].x << " " << whites[std::size_t(w)].y << " :";
    for (int b : adj[std::size_t(w)])
      out << " " << blacks[std::size_t(b)].x << " " << blacks[std::size_t(b)].y;
    out << "\n";
  }
}

BipartiteGraph build_bipartite(const std::vector<GridPoint>& vertex_set,
                               double eps,
                               std::optional<GridPoint> remove_root) {
  std::unordered_set<GridPoint, GridPointHash> vset(vertex_set.begin(),
                                                    vertex_set.end());
  if (remove_root)
    require(vset.count(*remove_root) > 0,
            "build_bipartite: root vertex is not in the vertex set");

  BipartiteGraph g;
  g.eps = eps;
  g.removed_root = remove_root;

  auto ordered = [](std::vector<GridPoint> pts) {
    std::sort(pts.begin(), pts.end(), [](GridPoint a, GridPoint b) {
      return std::pair(a.y, a.x) < std::pair(b.y, b.x);
    });
    return pts;
  };

  std::vector<GridPoint> blacks = vertex_set;
  if (remove_root)
    blacks.erase(std::remove(blacks.begin(), blacks.end(), *remove_root),
                 blacks.end());
  for (const GridPoint f : face_centers(vset)) blacks.push_back(f);
  g.blacks = ordered(std::move(blacks));

  std::vector<GridPoint> whites;
  for (const GridPoint v : vertex_set) {
    if (vset.count({v.x + 2, v.y})) whites.push_back({v.x + 1, v.y});
    if (vset.count({v.x, v.y + 2})) whites.push_back({v.x, v.y + 1});
  }
  g.whites = ordered(std::move(whites));

  for (int i = 0; i < g.white_count(); ++i) g.white_index[g.whites[std::size_t(i)]] = i;
  for (int i = 0; i < g.black_count(); ++i) g.black_index[g.blacks[std::size_t(i)]] = i;

  g.adj.resize(g.whites.size());
  const GridPoint steps[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  for (int w = 0; w < g.white_count(); ++w) {
    for (const GridPoint s : steps) {
      auto it = g.black_index.find(g.whites[std::size_t(w)] + s);
      if (it != g.black_index.end()) g.adj[std::size_t(w)].push_back(it->second);
    }
  }
  return g;
}

SymmetricDomain SymmetricDomain::build(const DomainDescriptor& d) {
  require(d.eps > 0.0, "domain: eps must be positive");
  require(d.width >= 1, "domain: width must be at least 1");
  require(d.height >= 2 && d.height % 2 == 0,
          "domain: height must be even and at least 2");
  std::vector<GridPoint> verts;
  if (d.shape == "rectangle") {
    for (int y = -d.height; y <= d.height; y += 2)
      for (int x = 0; x <= 2 * d.width; x += 2) verts.push_back({x, y});
  } else if (d.shape == "plus") {
    require(d.arm_width >= 1 && d.arm_width <= d.width,
            "domain: plus arm_width out of range");
    require((d.width - d.arm_width) % 2 == 0,
            "domain: plus arm must be centered (width - arm_width even)");
    require(d.arm_height >= 1, "domain: plus arm_height must be at least 1");
    const int left = d.width - d.arm_width;  // in half-units: left edge of arm
    for (int y = -d.height; y <= d.height; y += 2)
      for (int x = 0; x <= 2 * d.width; x += 2) verts.push_back({x, y});
    for (int k = 1; k <= d.arm_height; ++k) {
      const int ytop = d.height + 2 * k, ybot = -d.height - 2 * k;
      for (int x = left; x <= left + 2 * d.arm_width; x += 2) {
        verts.push_back({x, ytop});
        verts.push_back({x, ybot});
      }
    }
  } else {
    fail("domain: unknown shape '" + d.shape + "'");
  }
  SymmetricDomain dom = from_vertices(std::move(verts), d.eps, d.root);
  if (!is_nanish(d.zx) && !is_nanish(d.zy)) {
    dom.mark_point(d.zx, d.zy, d.delta);
  } else {
    // Default mark: center of the upper half of the bounding box.
    double cx = 0.0, top = 0.0;
    for (const GridPoint v : dom.vertices_) {
      cx = std::max(cx, double(v.x));
      top = std::max(top, double(v.y));
    }
    dom.mark_point(0.25 * d.eps * cx, 0.25 * d.eps * top, 0.0);
  }
  return dom;
}

SymmetricDomain SymmetricDomain::from_vertices(std::vector<GridPoint> vertices,
                                               double eps,
                                               const std::string& root) {
  SymmetricDomain dom;
  dom.eps_ = eps;
  std::sort(vertices.begin(), vertices.end(), [](GridPoint a, GridPoint b) {
    return std::pair(a.y, a.x) < std::pair(b.y, b.x);
  });
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  dom.vertices_ = std::move(vertices);
  dom.vset_.insert(dom.vertices_.begin(), dom.vertices_.end());
  dom.validate();

  const std::vector<GridPoint> axis = dom.axis_vertices();
  require(!axis.empty(), "domain: no lattice vertices on the axis y = 0");
  if (root == "rightmost") {
    dom.root_ = axis.back();
  } else if (root == "leftmost") {
    dom.root_ = axis.front();
  } else {
    fail("domain: root must be 'rightmost' or 'leftmost'");
  }

  // Provisional mark: any strict-upper face; callers refine via mark_point.
  const std::vector<GridPoint> faces = face_centers(dom.vset_);
  GridPoint best{0, 0};
  bool found = false;
  for (const GridPoint f : faces) {
    if (f.y >= 1 && (!found || std::pair(f.y, f.x) < std::pair(best.y, best.x))) {
      best = f;
      found = true;
    }
  }
  require(found, "domain: no face centers above the axis");
  dom.marked_face_ = best;
  return dom;
}

void SymmetricDomain::validate() const {
  require(!vertices_.empty(), "domain: empty vertex set");
  for (const GridPoint v : vertices_) {
    require(classify(v) == NodeClass::B1,
            "domain: vertex coordinates must have even parity in half-units");
    require(vset_.count(mirrored(v)) > 0,
            "domain: vertex set is not symmetric across y = 0");
  }

  const std::vector<GridPoint> faces = face_centers(vset_);
  require(!faces.empty(), "domain: degenerate (no unit squares)");
  std::unordered_set<GridPoint, GridPointHash> fset(faces.begin(), faces.end());

  // Every vertex must be a corner of some square of the cover.
  for (const GridPoint v : vertices_) {
    const bool covered = fset.count({v.x + 1, v.y + 1}) || fset.count({v.x - 1, v.y + 1}) ||
                         fset.count({v.x + 1, v.y - 1}) || fset.count({v.x - 1, v.y - 1});
    require(covered, "domain: vertex not covered by any unit square");
  }

  // The square cover must be edge-connected.
  std::unordered_set<GridPoint, GridPointHash> seen;
  std::deque<GridPoint> queue{faces.front()};
  seen.insert(faces.front());
  const GridPoint steps[4] = {{2, 0}, {-2, 0}, {0, 2}, {0, -2}};
  while (!queue.empty()) {
    const GridPoint f = queue.front();
    queue.pop_front();
    for (const GridPoint s : steps) {
      const GridPoint n = f + s;
      if (fset.count(n) && !seen.count(n)) {
        seen.insert(n);
        queue.push_back(n);
      }
    }
  }
  require(seen.size() == faces.size(), "domain: square cover is not connected");

  // No holes: flood the complement of the cover from outside a padded box.
  int minx = faces.front().x, maxx = faces.front().x;
  int miny = faces.front().y, maxy = faces.front().y;
  for (const GridPoint f : faces) {
    minx = std::min(minx, f.x);
    maxx = std::max(maxx, f.x);
    miny = std::min(miny, f.y);
    maxy = std::max(maxy, f.y);
  }
  minx -= 2; maxx += 2; miny -= 2; maxy += 2;
  std::unordered_set<GridPoint, GridPointHash> outside;
  std::deque<GridPoint> cqueue;
  const GridPoint corner{minx, miny};
  outside.insert(corner);
  cqueue.push_back(corner);
  while (!cqueue.empty()) {
    const GridPoint c = cqueue.front();
    cqueue.pop_front();
    for (const GridPoint s : steps) {
      const GridPoint n = c + s;
      if (n.x < minx || n.x > maxx || n.y < miny || n.y > maxy) continue;
      if (fset.count(n) || outside.count(n)) continue;
      outside.insert(n);
      cqueue.push_back(n);
    }
  }
  for (int y = miny; y <= maxy; y += 2)
    for (int x = minx; x <= maxx; x += 2) {
      const GridPoint c{x, y};
      require(fset.count(c) || outside.count(c) > 0,
              "domain: square cover has a hole");
    }

  // Euler characteristic of the cover: V - E + F = 1.
  long long edges = 0;
  for (const GridPoint v : vertices_) {
    if (vset_.count({v.x + 2, v.y})) ++edges;
    if (vset_.count({v.x, v.y + 2})) ++edges;
  }
  require(static_cast<long long>(vertices_.size()) - edges +
                  static_cast<long long>(faces.size()) ==
              1,
          "domain: Euler characteristic check failed");
}

void SymmetricDomain::mark_point(double zx, double zy, double delta) {
  const std::vector<GridPoint> faces = face_centers(vset_);
  double best = std::numeric_limits<double>::infinity();
  GridPoint bestf{0, 0};
  for (const GridPoint f : faces) {
    if (f.y < 1) continue;
    const auto p = position(f, eps_);
    const double d = std::hypot(p.real() - zx, p.imag() - zy);
    if (d < best) {
      best = d;
      bestf = f;
    }
  }
  require(std::isfinite(best), "domain: no face centers above the axis");
  marked_face_ = bestf;
  snap_offset_ = best;

  if (delta > 0.0) {
    // Clearance check: distance from the requested point to the boundary
    // of the square cover.
    std::unordered_set<GridPoint, GridPointHash> fset(faces.begin(), faces.end());
    double mind = std::numeric_limits<double>::infinity();
    for (const GridPoint f : faces) {
      struct Side { GridPoint nb, a, b; };
      const Side sides[4] = {
          {{f.x + 2, f.y}, {f.x + 1, f.y - 1}, {f.x + 1, f.y + 1}},
          {{f.x - 2, f.y}, {f.x - 1, f.y - 1}, {f.x - 1, f.y + 1}},
          {{f.x, f.y + 2}, {f.x - 1, f.y + 1}, {f.x + 1, f.y + 1}},
          {{f.x, f.y - 2}, {f.x - 1, f.y - 1}, {f.x + 1, f.y - 1}},
      };
      for (const Side& s : sides) {
        if (fset.count(s.nb)) continue;
        const auto a = position(s.a, eps_), b = position(s.b, eps_);
        mind = std::min(mind, point_segment_distance(zx, zy, a.real(), a.imag(),
                                                     b.real(), b.imag()));
      }
    }
    require(mind >= delta,
            "domain: marked point violates the required boundary clearance");
  }
}

std::vector<GridPoint> SymmetricDomain::axis_vertices() const {
  std::vector<GridPoint> out;
  for (const GridPoint v : vertices_)
    if (v.y == 0) out.push_back(v);
  std::sort(out.begin(), out.end(),
            [](GridPoint a, GridPoint b) { return a.x < b.x; });
  return out;
}

std::vector<GridPoint> SymmetricDomain::axis_edge_midpoints() const {
  std::vector<GridPoint> out;
  for (const GridPoint v : vertices_)
    if (v.y == 0 && vset_.count({v.x + 2, 0})) out.push_back({v.x + 1, 0});
  std::sort(out.begin(), out.end(),
            [](GridPoint a, GridPoint b) { return a.x < b.x; });
  return out;
}

BipartiteGraph SymmetricDomain::full_graph() const {
  return build_bipartite(vertices_, eps_, root_);
}

BipartiteGraph SymmetricDomain::upper_closed_graph() const {
  std::vector<GridPoint> upper;
  for (const GridPoint v : vertices_)
    if (v.y >= 0) upper.push_back(v);
  return build_bipartite(upper, eps_, root_);
}

BipartiteGraph SymmetricDomain::upper_strict_graph() const {
  std::vector<GridPoint> upper;
  for (const GridPoint v : vertices_)
    if (v.y >= 0) upper.push_back(v);
  BipartiteGraph closed = build_bipartite(upper, eps_, std::nullopt);

  // Induce on nodes strictly above the axis.  Bottom vertical-edge nodes
  // keep only their upper vertex neighbour, which realizes the free
  // (Neumann) bottom row; counts stay balanced with no root removal.
  BipartiteGraph g;
  g.eps = eps_;
  g.removed_root = std::nullopt;
  std::vector<int> bmap(std::size_t(closed.black_count()), -1);
  for (int b = 0; b < closed.black_count(); ++b) {
    if (closed.blacks[std::size_t(b)].y >= 1) {
      bmap[std::size_t(b)] = g.black_count();
      g.blacks.push_back(closed.blacks[std::size_t(b)]);
    }
  }
  for (int w = 0; w < closed.white_count(); ++w) {
    if (closed.whites[std::size_t(w)].y < 1) continue;
    g.whites.push_back(closed.whites[std::size_t(w)]);
    std::vector<int> nb;
    for (int b : closed.adj[std::size_t(w)])
      if (bmap[std::size_t(b)] >= 0) nb.push_back(bmap[std::size_t(b)]);
    g.adj.push_back(std::move(nb));
  }
  for (int i = 0; i < g.white_count(); ++i) g.white_index[g.whites[std::size_t(i)]] = i;
  for (int i = 0; i < g.black_count(); ++i) g.black_index[g.blacks[std::size_t(i)]] = i;
  return g;
}

}  // namespace dimerarc
