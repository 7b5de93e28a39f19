#include "dimerarc/kasteleyn.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "dimerarc/error.hpp"

namespace dimerarc {

cplx direction_phase(GridPoint w, GridPoint b) {
  const GridPoint d = b - w;
  require(d.x * d.x + d.y * d.y == 1, "direction_phase: nodes are not adjacent");
  if (d.x == 1) return {1.0, 0.0};
  if (d.x == -1) return {-1.0, 0.0};
  if (d.y == 1) return {0.0, 1.0};
  return {0.0, -1.0};
}

EdgePhases complex_phases(const BipartiteGraph& g) {
  EdgePhases ph;
  for (int w = 0; w < g.white_count(); ++w)
    for (int b : g.adj[std::size_t(w)])
      ph[{g.whites[std::size_t(w)], g.blacks[std::size_t(b)]}] =
          direction_phase(g.whites[std::size_t(w)], g.blacks[std::size_t(b)]);
  return ph;
}

namespace {

// The quadrilateral faces of the incidence graph: one per unit face node
// and diagonal corner direction, provided all four nodes are present.
struct QuadFace {
  EdgeKey e[4];
};

std::vector<QuadFace> quad_faces(const BipartiteGraph& g) {
  std::vector<QuadFace> faces;
  for (const GridPoint f : g.blacks) {
    if (classify(f) != NodeClass::B0) continue;
    for (const int sx : {-1, 1}) {
      for (const int sy : {-1, 1}) {
        const GridPoint b1{f.x + sx, f.y + sy};
        const GridPoint w0{f.x + sx, f.y};
        const GridPoint w1{f.x, f.y + sy};
        if (!g.has_black(b1) || !g.has_white(w0) || !g.has_white(w1)) continue;
        QuadFace q;
        q.e[0] = {w0, b1};
        q.e[1] = {w1, b1};
        q.e[2] = {w0, f};
        q.e[3] = {w1, f};
        faces.push_back(q);
      }
    }
  }
  return faces;
}

}  // namespace

EdgePhases real_phases(const BipartiteGraph& g) {
  // Spanning tree of the incidence graph gets +1; every other edge is
  // fixed by walking faces that have a single undetermined edge left, so
  // each quadrilateral ends with sign product -1.
  EdgePhases ph;
  std::unordered_set<GridPoint, GridPointHash> visited;
  std::deque<GridPoint> queue;
  require(g.white_count() > 0, "real_phases: empty graph");

  std::unordered_map<GridPoint, std::vector<GridPoint>, GridPointHash> nbrs;
  for (int w = 0; w < g.white_count(); ++w) {
    const GridPoint wp = g.whites[std::size_t(w)];
    for (int b : g.adj[std::size_t(w)]) {
      const GridPoint bp = g.blacks[std::size_t(b)];
      nbrs[wp].push_back(bp);
      nbrs[bp].push_back(wp);
    }
  }

  const GridPoint start = g.whites.front();
  visited.insert(start);
  queue.push_back(start);
  while (!queue.empty()) {
    const GridPoint p = queue.front();
    queue.pop_front();
    for (const GridPoint q : nbrs[p]) {
      if (visited.count(q)) continue;
      visited.insert(q);
      const bool p_white = is_white(p);
      ph[{p_white ? p : q, p_white ? q : p}] = 1.0;
      queue.push_back(q);
    }
  }
  require(visited.size() == std::size_t(g.white_count() + g.black_count()),
          "real_phases: incidence graph is not connected");

  const std::vector<QuadFace> faces = quad_faces(g);
  bool progress = true;
  std::size_t solved = 0;
  std::vector<bool> done(faces.size(), false);
  while (progress) {
    progress = false;
    for (std::size_t fi = 0; fi < faces.size(); ++fi) {
      if (done[fi]) continue;
      int unknown = -1;
      int known = 0;
      cplx prod = 1.0;
      for (int k = 0; k < 4; ++k) {
        auto it = ph.find(faces[fi].e[k]);
        if (it == ph.end()) {
          unknown = k;
        } else {
          prod *= it->second;
          ++known;
        }
      }
      if (known == 4) {
        done[fi] = true;
        ++solved;
        progress = true;
      } else if (known == 3) {
        ph[faces[fi].e[unknown]] = -1.0 / prod;
        done[fi] = true;
        ++solved;
        progress = true;
      }
    }
  }
  require(solved == faces.size(), "real_phases: face solve did not complete");
  require(check_face_condition(g, ph), "real_phases: face condition violated");
  return ph;
}

bool check_face_condition(const BipartiteGraph& g, const EdgePhases& ph) {
  for (const QuadFace& q : quad_faces(g)) {
    cplx num = 1.0, den = 1.0;
    // Cyclic order around the quad is e0 (w0-b1), e1 (w1-b1), e3 (w1-b0),
    // e2 (w0-b0): alternate factors go to numerator and denominator.
    auto get = [&ph](const EdgeKey& e) {
      auto it = ph.find(e);
      require(it != ph.end(), "face condition: missing edge phase");
      return it->second;
    };
    num = get(q.e[0]) * get(q.e[3]);
    den = get(q.e[1]) * get(q.e[2]);
    if (std::abs(num / den + cplx(1.0)) > 1e-9) return false;
  }
  return true;
}

void gauge_transform(EdgePhases& ph, const BipartiteGraph& g,
                     const std::function<cplx(GridPoint)>& gauge) {
  for (int w = 0; w < g.white_count(); ++w) {
    const GridPoint wp = g.whites[std::size_t(w)];
    for (int b : g.adj[std::size_t(w)]) {
      const GridPoint bp = g.blacks[std::size_t(b)];
      auto it = ph.find({wp, bp});
      if (it != ph.end()) it->second *= gauge(wp) * gauge(bp);
    }
  }
}

int FoldedGraph::index(GridPoint p, int copy) const {
  if (copy == 0) {
    auto it = boundary_pos.find(p);
    require(it != boundary_pos.end(), "FoldedGraph: not a boundary vertex");
    return it->second;
  }
  require(copy == 1 || copy == 2, "FoldedGraph: copy must be 0, 1 or 2");
  auto it = bulk_pos.find(p);
  require(it != bulk_pos.end(), "FoldedGraph: not a bulk vertex");
  return it->second + (copy - 1);
}

int FoldedGraph::arc_position(GridPoint p) const {
  auto it = arc_rank.find(p);
  require(it != arc_rank.end(), "FoldedGraph: vertex is not on the arc");
  return it->second;
}

FoldedGraph build_folded_graph(const BipartiteGraph& base,
                               std::vector<GridPoint> arc,
                               std::vector<GridPoint> folded) {
  FoldedGraph fg;
  fg.base = base;
  fg.arc = std::move(arc);
  fg.folded = std::move(folded);
  fg.folded_set.insert(fg.folded.begin(), fg.folded.end());

  std::unordered_set<GridPoint, GridPointHash> arc_set(fg.arc.begin(), fg.arc.end());
  require(arc_set.size() == fg.arc.size(), "folded graph: arc repeats a vertex");
  for (std::size_t k = 0; k + 1 < fg.arc.size(); ++k)
    require(dist2(fg.arc[k], fg.arc[k + 1]) == 1,
            "folded graph: arc is not a lattice path");
  int folded_whites = 0, folded_blacks = 0;
  for (const GridPoint p : fg.folded) {
    require(arc_set.count(p) > 0, "folded graph: folded vertex not on the arc");
    (is_white(p) ? folded_whites : folded_blacks) += 1;
  }
  require(folded_whites == folded_blacks,
          "folded graph: folded set must balance white and black");
  for (const GridPoint p : fg.arc)
    require(base.has_white(p) || base.has_black(p),
            "folded graph: arc vertex missing from the base graph");

  for (std::size_t k = 0; k < fg.arc.size(); ++k) fg.arc_rank[fg.arc[k]] = int(k);

  auto push_bulk = [&fg](GridPoint p) {
    fg.bulk_pos[p] = fg.n();
    fg.order.push_back({p, 1});
    fg.order.push_back({p, 2});
  };

  for (const GridPoint p : fg.arc) {
    if (fg.is_folded(p)) {
      fg.boundary_pos[p] = fg.n();
      fg.order.push_back({p, 0});
    } else {
      push_bulk(p);
    }
  }
  auto sorted_rest = [&arc_set](const std::vector<GridPoint>& pts) {
    std::vector<GridPoint> rest;
    for (const GridPoint p : pts)
      if (!arc_set.count(p)) rest.push_back(p);
    std::sort(rest.begin(), rest.end(), [](GridPoint a, GridPoint b) {
      return std::pair(a.y, a.x) < std::pair(b.y, b.x);
    });
    return rest;
  };
  for (const GridPoint p : sorted_rest(base.whites)) push_bulk(p);
  for (const GridPoint p : sorted_rest(base.blacks)) push_bulk(p);
  return fg;
}

void enforce_boundary_alternation(EdgePhases& ph, const FoldedGraph& fg) {
  std::unordered_map<GridPoint, cplx, GridPointHash> gauge;
  for (const GridPoint p : fg.arc) gauge[p] = 1.0;
  for (std::size_t k = 0; k + 1 < fg.arc.size(); ++k) {
    const GridPoint a = fg.arc[k], b = fg.arc[k + 1];
    const bool a_white = is_white(a);
    const EdgeKey e{a_white ? a : b, a_white ? b : a};
    auto it = ph.find(e);
    require(it != ph.end(), "boundary alternation: arc edge missing a phase");
    const cplx desired = a_white ? 1.0 : -1.0;
    const cplx current = it->second * gauge[a];
    gauge[b] = desired / current;
  }
  gauge_transform(ph, fg.base, [&gauge](GridPoint p) {
    auto it = gauge.find(p);
    return it == gauge.end() ? cplx(1.0) : it->second;
  });
}

Eigen::Matrix2cd Connection::get_phi(const EdgeKey& e) const {
  auto it = phi.find(e);
  return it == phi.end() ? Eigen::Matrix2cd::Identity().eval() : it->second;
}

Eigen::Vector2cd Connection::get_psi(const EdgeKey& e) const {
  auto it = psi.find(e);
  return it == psi.end() ? Eigen::Vector2cd::Ones().eval() : it->second;
}

cplx Connection::get_nu(const EdgeKey& e) const {
  auto it = nu.find(e);
  return it == nu.end() ? cplx(1.0) : it->second;
}

Eigen::Matrix2cd Connection::transport(GridPoint from, GridPoint to) const {
  const bool from_white = is_white(from);
  const EdgeKey e{from_white ? from : to, from_white ? to : from};
  const Eigen::Matrix2cd m = get_phi(e);
  return from_white ? m : m.inverse().eval();
}

Eigen::Matrix2cd random_sl2(std::mt19937_64& rng, bool complex_entries) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    Eigen::Matrix2cd m;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        m(i, j) = complex_entries ? cplx(u(rng), u(rng)) : cplx(u(rng), 0.0);
    const cplx det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    if (std::abs(det) < 0.3) continue;
    m.col(1) /= det;
    return m;
  }
}

SkewMatrix assemble_K(const FoldedGraph& fg, const EdgePhases& ph,
                      const Connection& conn) {
  SkewMatrix k(fg.n());
  for (int wi = 0; wi < fg.base.white_count(); ++wi) {
    const GridPoint w = fg.base.whites[std::size_t(wi)];
    for (int bi : fg.base.adj[std::size_t(wi)]) {
      const GridPoint b = fg.base.blacks[std::size_t(bi)];
      const EdgeKey e{w, b};
      auto pit = ph.find(e);
      require(pit != ph.end(), "assemble_K: missing edge phase");
      const cplx c = pit->second;
      const bool wf = fg.is_folded(w), bf = fg.is_folded(b);
      if (wf && bf) {
        k.set(fg.index(w, 0), fg.index(b, 0), c * conn.get_nu(e));
      } else if (wf) {
        const Eigen::Vector2cd psi = conn.get_psi(e);
        for (int j = 1; j <= 2; ++j)
          k.set(fg.index(w, 0), fg.index(b, j), c * psi(j - 1));
      } else if (bf) {
        const Eigen::Vector2cd psi = conn.get_psi(e);
        for (int i = 1; i <= 2; ++i)
          k.set(fg.index(w, i), fg.index(b, 0), c * psi(i - 1));
      } else {
        // Bulk block is c * phi^T: row index runs over the white fiber,
        // column over the black fiber, and phi maps white to black.
        const Eigen::Matrix2cd phi = conn.get_phi(e);
        for (int i = 1; i <= 2; ++i)
          for (int j = 1; j <= 2; ++j)
            k.set(fg.index(w, i), fg.index(b, j), c * phi(j - 1, i - 1));
      }
    }
  }
  return k;
}

FoldedModel build_folded_model(const SymmetricDomain& dom) {
  FoldedModel fm;
  const BipartiteGraph upper = dom.upper_closed_graph();

  // The boundary arc is the whole axis row, ordered right to left, which
  // is the clockwise direction along the upper domain's boundary.
  std::vector<GridPoint> axis;
  for (const GridPoint p : upper.whites)
    if (p.y == 0) axis.push_back(p);
  for (const GridPoint p : upper.blacks)
    if (p.y == 0) axis.push_back(p);
  std::sort(axis.begin(), axis.end(),
            [](GridPoint a, GridPoint b) { return a.x > b.x; });
  fm.fg = build_folded_graph(upper, axis, axis);

  // Transport the whole-domain matrix through the unfolding bijection:
  // upper nodes are copy 1, reflected lower nodes copy 2, axis nodes stay
  // single.  The copy-2 sign gauge on vertical-edge and face nodes brings
  // the matrix to the folded normal form.
  const BipartiteGraph full = dom.full_graph();
  auto map_node = [&fm](GridPoint p) -> std::pair<int, double> {
    if (p.y == 0) return {fm.fg.index(p, 0), 1.0};
    const GridPoint up = p.y > 0 ? p : mirrored(p);
    const int copy = p.y > 0 ? 1 : 2;
    double sign = 1.0;
    if (copy == 2) {
      const NodeClass c = classify(up);
      if (c == NodeClass::W0 || c == NodeClass::B0) sign = -1.0;
    }
    return {fm.fg.index(up, copy), sign};
  };
  for (int wi = 0; wi < full.white_count(); ++wi) {
    const GridPoint w = full.whites[std::size_t(wi)];
    for (int bi : full.adj[std::size_t(wi)]) {
      const GridPoint b = full.blacks[std::size_t(bi)];
      const auto [iw, sw] = map_node(w);
      const auto [ib, sb] = map_node(b);
      const cplx v = direction_phase(w, b) * sw * sb;
      fm.entries.emplace_back(iw, ib, v);
      fm.entries.emplace_back(ib, iw, -v);
    }
  }
  return fm;
}

SkewMatrix FoldedModel::dense() const {
  SkewMatrix k(dim());
  for (const auto& t : entries)
    if (t.row() < t.col()) k.set(t.row(), t.col(), t.value());
  return k;
}

Eigen::SparseMatrix<cplx> FoldedModel::sparse() const {
  Eigen::SparseMatrix<cplx> m(dim(), dim());
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

ShiftedModel build_shifted_model(const SymmetricDomain& dom) {
  ShiftedModel sm;
  sm.g1 = dom.upper_closed_graph();
  sm.g2 = dom.upper_strict_graph();
  require(sm.g1.white_count() == sm.g1.black_count(),
          "shifted model: closed restriction is unbalanced");
  require(sm.g2.white_count() == sm.g2.black_count(),
          "shifted model: strict restriction is unbalanced");
  sm.k1_entries = phase_triplets(sm.g1, complex_phases(sm.g1));
  sm.k2_entries = phase_triplets(sm.g2, complex_phases(sm.g2));
  return sm;
}

Eigen::MatrixXcd ShiftedModel::k_dense(int which) const {
  const BipartiteGraph& g = which == 1 ? g1 : g2;
  const auto& ts = which == 1 ? k1_entries : k2_entries;
  Eigen::MatrixXcd k =
      Eigen::MatrixXcd::Zero(g.white_count(), g.black_count());
  for (const auto& t : ts) k(t.row(), t.col()) = t.value();
  return k;
}

Eigen::SparseMatrix<cplx> ShiftedModel::k_sparse(int which) const {
  const BipartiteGraph& g = which == 1 ? g1 : g2;
  const auto& ts = which == 1 ? k1_entries : k2_entries;
  Eigen::SparseMatrix<cplx> k(g.white_count(), g.black_count());
  k.setFromTriplets(ts.begin(), ts.end());
  return k;
}

std::vector<Eigen::Triplet<cplx>> phase_triplets(const BipartiteGraph& g,
                                                 const EdgePhases& ph) {
  std::vector<Eigen::Triplet<cplx>> ts;
  ts.reserve(std::size_t(g.edge_count()));
  for (int w = 0; w < g.white_count(); ++w) {
    for (int b : g.adj[std::size_t(w)]) {
      auto it = ph.find({g.whites[std::size_t(w)], g.blacks[std::size_t(b)]});
      require(it != ph.end(), "phase_triplets: missing edge phase");
      ts.emplace_back(w, b, it->second);
    }
  }
  return ts;
}

Eigen::MatrixXcd phase_matrix_dense(const BipartiteGraph& g, const EdgePhases& ph) {
  Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(g.white_count(), g.black_count());
  for (const auto& t : phase_triplets(g, ph)) k(t.row(), t.col()) = t.value();
  return k;
}

Eigen::SparseMatrix<cplx> phase_matrix_sparse(const BipartiteGraph& g,
                                              const EdgePhases& ph) {
  Eigen::SparseMatrix<cplx> k(g.white_count(), g.black_count());
  const auto ts = phase_triplets(g, ph);
  k.setFromTriplets(ts.begin(), ts.end());
  return k;
}

Eigen::SparseMatrix<cplx> black_laplacian(const BipartiteGraph& g) {
  std::vector<Eigen::Triplet<cplx>> ts;
  std::vector<int> degree(std::size_t(g.black_count()), 0);
  for (int w = 0; w < g.white_count(); ++w) {
    const auto& nb = g.adj[std::size_t(w)];
    for (int b : nb) ++degree[std::size_t(b)];
    // Same-class black pairs joined through this white couple with -1;
    // mixed-class pairs cancel and are omitted.
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        const GridPoint bi = g.blacks[std::size_t(nb[i])];
        const GridPoint bj = g.blacks[std::size_t(nb[j])];
        if (classify(bi) != classify(bj)) continue;
        ts.emplace_back(nb[i], nb[j], cplx(-1.0));
        ts.emplace_back(nb[j], nb[i], cplx(-1.0));
      }
  }
  for (int b = 0; b < g.black_count(); ++b)
    ts.emplace_back(b, b, cplx(double(degree[std::size_t(b)])));
  Eigen::SparseMatrix<cplx> lap(g.black_count(), g.black_count());
  lap.setFromTriplets(ts.begin(), ts.end());
  return lap;
}

}  // namespace dimerarc
