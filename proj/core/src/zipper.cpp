#include "dimerarc/zipper.hpp"

#include <algorithm>
#include <map>

#include "dimerarc/error.hpp"

namespace dimerarc {

namespace {

long cross2(long ax, long ay, long bx, long by) { return ax * by - ay * bx; }

struct RawCrossing {
  int seg = 0;
  long num = 0, den = 1;  // parameter along the segment, in [0, 1)
  EdgeKey e;
  int sign = 0;
};

bool raw_before(const RawCrossing& a, const RawCrossing& b) {
  if (a.seg != b.seg) return a.seg < b.seg;
  return a.num * b.den < b.num * a.den;
}

// Membership in the union of closed unit squares, tested through the
// face centers present in the graph.
bool point_in_region(const BipartiteGraph& g, long qx, long qy) {
  const auto fdiv4 = [](long a) { return a >= 0 ? a / 4 : -((-a + 3) / 4); };
  for (long fx = fdiv4(qx) - 2; fx <= fdiv4(qx) + 2; ++fx) {
    if ((fx & 1) == 0) continue;
    if (std::labs(4 * fx - qx) > 4) continue;
    for (long fy = fdiv4(qy) - 2; fy <= fdiv4(qy) + 2; ++fy) {
      if ((fy & 1) == 0) continue;
      if (std::labs(4 * fy - qy) > 4) continue;
      if (g.has_black(GridPoint{int(fx), int(fy)})) return true;
    }
  }
  return false;
}

// Number of faces bordering an edge; vertex-to-midpoint edges lie on the
// square grid lines, face-to-midpoint edges lie inside a square.
int side_face_count(const BipartiteGraph& g, const EdgeKey& e) {
  if (classify(e.b) == NodeClass::B0) return 2;  // interior of a square
  const GridPoint off =
      classify(e.w) == NodeClass::W1 ? GridPoint{0, 1} : GridPoint{1, 0};
  int n = 0;
  if (g.has_black(e.w + off)) ++n;
  if (g.has_black(e.w - off)) ++n;
  return n;
}

}  // namespace

Zipper zipper_from_polyline(const BipartiteGraph& g, const Polyline& pl) {
  require(pl.pts.size() >= 2, "polyline needs at least two points");
  require(point_in_region(g, pl.pts[0][0], pl.pts[0][1]),
          "polyline must start inside the domain");
  std::vector<RawCrossing> raw;
  for (int s = 0; s + 1 < int(pl.pts.size()); ++s) {
    const long ax = pl.pts[std::size_t(s)][0], ay = pl.pts[std::size_t(s)][1];
    const long bx = pl.pts[std::size_t(s) + 1][0], by = pl.pts[std::size_t(s) + 1][1];
    const long d1x = bx - ax, d1y = by - ay;
    require(d1x == 0 || d1y == 0 || std::labs(d1x) == std::labs(d1y),
            "polyline segments must be axis-aligned or diagonal");
    for (std::size_t w = 0; w < g.whites.size(); ++w) {
      for (int bidx : g.adj[w]) {
        const GridPoint wp = g.whites[w];
        const GridPoint bp = g.blacks[std::size_t(bidx)];
        const long cx = 4L * wp.x, cy = 4L * wp.y;
        const long d2x = 4L * bp.x - cx, d2y = 4L * bp.y - cy;
        const long denom = cross2(d1x, d1y, d2x, d2y);
        const long rx = cx - ax, ry = cy - ay;
        if (denom == 0) {
          if (cross2(d1x, d1y, rx, ry) != 0) continue;  // parallel, disjoint lines
          // Collinear: reject any overlap with the segment.
          const long len2 = d1x * d1x + d1y * d1y;
          const long tc = rx * d1x + ry * d1y;
          const long td = (cx + d2x - ax) * d1x + (cy + d2y - ay) * d1y;
          require(std::max(std::min(tc, td), 0L) > std::min(std::max(tc, td), len2),
                  "polyline runs along a graph edge");
          continue;
        }
        long tnum = cross2(rx, ry, d2x, d2y);
        long unum = cross2(rx, ry, d1x, d1y);
        long den = denom;
        const int sign = denom < 0 ? 1 : -1;
        if (den < 0) {
          den = -den;
          tnum = -tnum;
          unum = -unum;
        }
        if (tnum < 0 || tnum >= den) continue;  // outside this segment
        if (unum <= 0 || unum >= den) {
          require(unum != 0 && unum != den, "crossing at a graph vertex");
          continue;
        }
        raw.push_back({s, tnum, den, EdgeKey{wp, bp}, sign});
      }
    }
  }
  std::sort(raw.begin(), raw.end(), raw_before);
  for (std::size_t i = 0; i + 1 < raw.size(); ++i)
    require(raw_before(raw[i], raw[i + 1]), "coincident zipper crossings");
  // Walk in order; crossing a square-line edge with a single bordering
  // face leaves the domain, and the walk stops there.
  std::map<std::pair<std::pair<int, int>, std::pair<int, int>>, int> net;
  for (const auto& rc : raw) {
    const int faces = side_face_count(g, rc.e);
    require(faces >= 1, "crossed edge borders no face");
    net[{{rc.e.w.x, rc.e.w.y}, {rc.e.b.x, rc.e.b.y}}] += rc.sign;
    if (classify(rc.e.b) != NodeClass::B0 && faces == 1) break;
  }
  Zipper z;
  z.path = pl;
  for (const auto& [k, s] : net) {
    if (s == 0) continue;
    z.crossings.push_back({EdgeKey{GridPoint{k.first.first, k.first.second},
                                   GridPoint{k.second.first, k.second.second}},
                           s});
  }
  return z;
}

Zipper build_zipper(const BipartiteGraph& g, GridPoint face) {
  require(classify(face) == NodeClass::B0, "zipper starts at a face center");
  require(g.has_black(face), "marked face not in the graph");
  const long axp = 4L * face.x + 2, ayp = 4L * face.y + 1;
  long maxc = 0;
  for (const auto& b : g.blacks)
    maxc = std::max(maxc, std::max(4L * b.x, 4L * b.y));
  const long len = maxc + 16;
  Polyline pl;
  pl.pts.push_back({axp, ayp});
  pl.pts.push_back({axp + len, ayp + len});
  return zipper_from_polyline(g, pl);
}

std::vector<GridPoint> zipper_whites(const Zipper& z) {
  std::vector<GridPoint> ws;
  for (const auto& [e, s] : z.crossings) {
    (void)s;
    ws.push_back(e.w);
  }
  std::sort(ws.begin(), ws.end(), [](GridPoint a, GridPoint b) {
    if (a.y != b.y) return a.y < b.y;
    return a.x < b.x;
  });
  ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
  return ws;
}

namespace {

cplx folded_entry(const EdgeKey& e, int sign) {
  return direction_phase(e.w, e.b) * double(sign);
}

}  // namespace

std::vector<Eigen::Triplet<cplx>> folded_zipper_triplets(const FoldedModel& fm,
                                                         const Zipper& z) {
  std::vector<Eigen::Triplet<cplx>> ts;
  for (const auto& [e, s] : z.crossings) {
    require(!fm.fg.is_folded(e.w) && !fm.fg.is_folded(e.b),
            "zipper touches the folded boundary");
    const int i = fm.fg.index(e.w, 2);
    const int j = fm.fg.index(e.b, 1);
    const cplx v = folded_entry(e, s);
    ts.emplace_back(i, j, v);
    ts.emplace_back(j, i, -v);
  }
  return ts;
}

Eigen::MatrixXcd folded_p_matrix(const FoldedModel& fm, const Zipper& z) {
  const std::vector<GridPoint> rows = zipper_whites(z);
  const int nr = int(rows.size());
  std::unordered_map<GridPoint, int, GridPointHash> row_of;
  for (int i = 0; i < nr; ++i) row_of[rows[std::size_t(i)]] = i;
  Eigen::SparseMatrix<cplx> k = fm.sparse();
  Eigen::SparseLU<Eigen::SparseMatrix<cplx>> lu;
  lu.compute(k);
  require(lu.info() == Eigen::Success, "sparse factorization failed");
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(nr, nr);
  for (int c = 0; c < nr; ++c) {
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(fm.dim());
    rhs[fm.fg.index(rows[std::size_t(c)], 2)] = 1.0;
    const Eigen::VectorXcd col = lu.solve(rhs);
    for (const auto& [e, s] : z.crossings)
      p(row_of.at(e.w), c) += folded_entry(e, s) * col[fm.fg.index(e.b, 1)];
  }
  return p;
}

std::vector<cplx> folded_trace_powers(const FoldedModel& fm, const Zipper& z,
                                      int k_max) {
  // The perturbation product has equal white-to-white and black-to-black
  // sectors, so the full trace is twice the white-sector trace.
  std::vector<cplx> tk = power_traces(folded_p_matrix(fm, z), k_max);
  for (cplx& t : tk) t *= 2.0;
  return tk;
}

cplx folded_pf_ratio(const FoldedModel& fm, const Zipper& z, double alpha) {
  SkewMatrix base = fm.dense();
  SkewMatrix pert = base;
  for (const auto& [e, s] : z.crossings) {
    const int i = fm.fg.index(e.w, 2);
    const int j = fm.fg.index(e.b, 1);
    pert.add(i, j, 2.0 * alpha * folded_entry(e, s));
  }
  const LogScalar num = pfaffian(pert);
  const LogScalar den = pfaffian(base);
  require(!den.zero(), "unperturbed Pfaffian vanishes");
  return num.ratio_to(den);
}

cplx folded_det_ratio_sqrt(const FoldedModel& fm, const Zipper& z, double alpha) {
  const int n = fm.dim();
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& t : folded_zipper_triplets(fm, z)) s(t.row(), t.col()) += t.value();
  const Eigen::MatrixXcd kinv = invert(fm.dense().dense());
  return sqrt_det_ratio(s * kinv, 2.0 * alpha);
}

Eigen::MatrixXcd shifted_a_matrix(const BipartiteGraph& g,
                                  const std::vector<Eigen::Triplet<cplx>>& k_entries,
                                  const Zipper& z,
                                  const std::vector<GridPoint>& rows) {
  const int n = g.white_count();
  require(n == g.black_count(), "square matrix needed");
  Eigen::SparseMatrix<cplx> k(n, n);
  k.setFromTriplets(k_entries.begin(), k_entries.end());
  Eigen::SparseLU<Eigen::SparseMatrix<cplx>> lu;
  lu.compute(k);
  require(lu.info() == Eigen::Success, "sparse factorization failed");
  const int nr = int(rows.size());
  std::unordered_map<GridPoint, int, GridPointHash> row_of;
  for (int i = 0; i < nr; ++i) row_of[rows[std::size_t(i)]] = i;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(nr, nr);
  for (int c = 0; c < nr; ++c) {
    const GridPoint wp = rows[std::size_t(c)];
    require(g.has_white(wp), "zipper white missing from the graph");
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
    rhs[g.white_at(wp)] = 1.0;
    const Eigen::VectorXcd col = lu.solve(rhs);
    for (const auto& [e, s] : z.crossings) {
      require(g.has_white(e.w) && g.has_black(e.b),
              "zipper edge missing from the graph");
      a(row_of.at(e.w), c) +=
          direction_phase(e.w, e.b) * double(s) * col[g.black_at(e.b)];
    }
  }
  return a;
}

std::vector<cplx> shifted_trace_powers(const ShiftedModel& sm, const Zipper& z,
                                       int k_max) {
  const std::vector<GridPoint> rows = zipper_whites(z);
  const Eigen::MatrixXcd a1 = shifted_a_matrix(sm.g1, sm.k1_entries, z, rows);
  const Eigen::MatrixXcd a2 = shifted_a_matrix(sm.g2, sm.k2_entries, z, rows);
  std::vector<cplx> tk = power_traces(a1 - a2, k_max);
  double scale = 1.0;
  for (int k = 1; k <= k_max; ++k) {
    scale *= 0.5;
    tk[std::size_t(k - 1)] *= 2.0 * scale;
  }
  return tk;
}

cplx shifted_det_ratio(const ShiftedModel& sm, const Zipper& z, double alpha,
                       double c1, double c2) {
  const std::vector<GridPoint> rows = zipper_whites(z);
  const Eigen::MatrixXcd a1 = shifted_a_matrix(sm.g1, sm.k1_entries, z, rows);
  const Eigen::MatrixXcd a2 = shifted_a_matrix(sm.g2, sm.k2_entries, z, rows);
  const int nr = int(rows.size());
  const Eigen::MatrixXcd m =
      Eigen::MatrixXcd::Identity(nr, nr) + alpha * (c1 * a1 + c2 * a2);
  return m.determinant();
}

TraceMoments moments_from_traces(const std::vector<cplx>& traces) {
  require(traces.size() >= 2, "need at least two traces");
  require(std::abs(traces[0].imag()) < 1e-8 && std::abs(traces[1].imag()) < 1e-8,
          "normalized traces should be real");
  const double t1 = traces[0].real();
  const double t2 = traces[1].real();
  TraceMoments m;
  m.odd = -t1;
  m.count = -t1 - t1 * t1 + 2.0 * t2;
  return m;
}

}  // namespace dimerarc
