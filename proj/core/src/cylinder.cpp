#include "dimerarc/cylinder.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "dimerarc/error.hpp"

namespace dimerarc {

namespace {

// Plain grid graph on [0, n] x [1, m] with unit steps; the parity classes
// make a vertex white exactly when x + y is odd.
BipartiteGraph plain_grid(int n, int m) {
  BipartiteGraph g;
  g.eps = 1.0;
  std::vector<GridPoint> pts;
  for (long y = 1; y <= m; ++y)
    for (long x = 0; x <= n; ++x) pts.push_back({x, y});
  for (const GridPoint& p : pts) {
    if (is_white(p)) {
      g.white_index.emplace(p, int(g.whites.size()));
      g.whites.push_back(p);
    } else {
      g.black_index.emplace(p, int(g.blacks.size()));
      g.blacks.push_back(p);
    }
  }
  g.adj.resize(g.whites.size());
  const GridPoint steps[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  for (int w = 0; w < g.white_count(); ++w) {
    for (const GridPoint& s : steps) {
      GridPoint q{g.whites[w].x + s.x, g.whites[w].y + s.y};
      if (q.x < 0 || q.x > n || q.y < 1 || q.y > m) continue;
      g.adj[w].push_back(g.black_at(q));
    }
    std::sort(g.adj[w].begin(), g.adj[w].end());
  }
  return g;
}

}  // namespace

CylinderModel build_cylinder_model(int n, int m) {
  require(n >= 2 && m >= 2 && m % 2 == 0,
          "cylinder needs n >= 2 and even m >= 2");
  CylinderModel cm;
  cm.n = n;
  cm.m = m;
  cm.base = plain_grid(n, m);

  // Boundary arc: left column upward, top row rightward, right column
  // downward.  Only the two side columns are folded; the top row sits on
  // the arc with both copies.
  std::vector<GridPoint> arc, folded;
  for (long y = 1; y <= m; ++y) arc.push_back({0, y});
  for (long x = 1; x < n; ++x) arc.push_back({x, long(m)});
  for (long y = m; y >= 1; --y) arc.push_back({long(n), y});
  for (long y = 1; y <= m; ++y) folded.push_back({0, y});
  for (long y = 1; y <= m; ++y) folded.push_back({long(n), y});
  cm.fg = build_folded_graph(cm.base, std::move(arc), std::move(folded));

  // Kasteleyn phases for the square lattice: 1 on horizontal edges, i on
  // vertical ones, regauged so arc edges alternate with the arc order.
  for (int w = 0; w < cm.base.white_count(); ++w) {
    const GridPoint wp = cm.base.whites[w];
    for (int b : cm.base.adj[w]) {
      const GridPoint bp = cm.base.blacks[b];
      cm.phases[EdgeKey{wp, bp}] = (wp.y == bp.y) ? cplx(1.0) : cplx(0.0, 1.0);
    }
  }
  enforce_boundary_alternation(cm.phases, cm.fg);
  return cm;
}

Connection cylinder_connection(const CylinderModel& cm, double a) {
  Connection conn;
  for (int w = 0; w < cm.base.white_count(); ++w) {
    const GridPoint wp = cm.base.whites[w];
    for (int b : cm.base.adj[w]) {
      const GridPoint bp = cm.base.blacks[b];
      const EdgeKey e{wp, bp};
      const bool wf = cm.fg.is_folded(wp);
      const bool bf = cm.fg.is_folded(bp);
      if (wf && bf) continue;  // seam-internal edges keep weight 1
      if (!wf && !bf) {
        if (wp.y != bp.y) continue;  // vertical transport is the identity
        const double top = (bp.x > wp.x) ? a : 1.0 / a;
        Eigen::Matrix2cd phi = Eigen::Matrix2cd::Zero();
        phi(0, 0) = top;
        phi(1, 1) = 1.0 / top;
        conn.phi[e] = phi;
        continue;
      }
      // Column-to-bulk edges are horizontal.  The pairing vector is the
      // step transport written toward the bulk on the black column ends
      // and toward the column on the white ones; both cases reduce to
      // the exponent side * color.
      const GridPoint col = wf ? wp : bp;
      const int side = (col.x == 0) ? 1 : -1;
      const int color = bf ? 1 : -1;
      const double d = double(side * color);
      Eigen::Vector2cd psi;
      psi << std::pow(a, d), std::pow(a, -d);
      conn.psi[e] = psi;
    }
  }
  return conn;
}

SkewMatrix cylinder_matrix(const CylinderModel& cm, double a) {
  return assemble_K(cm.fg, cm.phases, cylinder_connection(cm, a));
}

double cylinder_gf(const CylinderModel& cm, double big_y) {
  require(big_y >= 1.0, "traversal weight must be at least 1");
  const double rho = big_y + std::sqrt(big_y * big_y - 1.0);
  const double a = std::pow(rho, 1.0 / double(cm.n));
  const LogScalar num = pfaffian(cylinder_matrix(cm, a));
  const LogScalar den = pfaffian(cylinder_matrix(cm, 1.0));
  require(!den.zero(), "cylinder Pfaffian vanished at the trivial flux");
  const cplx ratio = num.ratio_to(den);
  require(std::abs(ratio.imag()) < 1e-8 * (1.0 + std::abs(ratio.real())),
          "cylinder generating function came out non-real");
  return ratio.real();
}

std::vector<double> cylinder_distribution(const CylinderModel& cm) {
  // Loops of the doubled configuration come in reflection-swapped pairs,
  // so the generating function is a polynomial in Y^2 of degree at most
  // m/2.  Chebyshev nodes in Y^2 over Y in [1, 3] keep the small
  // Vandermonde solve well conditioned.
  const int count = cm.m / 2 + 1;
  Eigen::MatrixXd v(count, count);
  Eigen::VectorXd rhs(count);
  for (int i = 0; i < count; ++i) {
    const double u =
        5.0 + 4.0 * std::cos(std::numbers::pi * (i + 0.5) / count);
    rhs(i) = cylinder_gf(cm, std::sqrt(u));
    double pw = 1.0;
    for (int k = 0; k < count; ++k) {
      v(i, k) = pw;
      pw *= u;
    }
  }
  Eigen::VectorXd coef = v.colPivHouseholderQr().solve(rhs);
  return std::vector<double>(coef.data(), coef.data() + count);
}

std::vector<double> glued_winding_histogram(int n, int m, std::size_t cap) {
  require(n >= 2 && m >= 2 && m % 2 == 0,
          "cylinder needs n >= 2 and even m >= 2");
  const int width = 2 * n;
  const int nv = width * m;
  auto vid = [m](int x, int y) { return x * m + (y - 1); };

  // Abstract bipartite structure of the glued cylinder of width 2n.
  AbstractBipartite ab;
  std::vector<int> role(nv, -1);  // white or black index of each vertex
  std::vector<int> white_of, black_of;
  for (int x = 0; x < width; ++x)
    for (int y = 1; y <= m; ++y) {
      if ((x + y) % 2 == 1) {
        role[vid(x, y)] = ab.nw++;
        white_of.push_back(vid(x, y));
      } else {
        role[vid(x, y)] = ab.nb++;
        black_of.push_back(vid(x, y));
      }
    }
  ab.adj.resize(ab.nw);
  for (int wi = 0; wi < ab.nw; ++wi) {
    const int x = white_of[wi] / m, y = white_of[wi] % m + 1;
    ab.adj[wi].push_back(role[vid((x + 1) % width, y)]);
    ab.adj[wi].push_back(role[vid((x + width - 1) % width, y)]);
    if (y > 1) ab.adj[wi].push_back(role[vid(x, y - 1)]);
    if (y < m) ab.adj[wi].push_back(role[vid(x, y + 1)]);
    std::sort(ab.adj[wi].begin(), ab.adj[wi].end());
  }

  const auto matchings = enumerate_matchings(ab, cap);
  require(!matchings.empty(), "glued cylinder has no perfect matchings");

  auto reflect = [n, width, m, vid](int v) {
    const int x = v / m, y = v % m + 1;
    return vid((width - x) % width, y);
  };

  std::vector<double> hist(std::size_t(m / 2) + 1, 0.0);
  std::vector<int> nb1(nv), nb2(nv);
  std::vector<char> seen(nv);
  for (const auto& match : matchings) {
    for (int wi = 0; wi < ab.nw; ++wi) {
      const int vw = white_of[wi], vb = black_of[match[wi]];
      nb1[vw] = vb;
      nb1[vb] = vw;
      nb2[reflect(vw)] = reflect(vb);
      nb2[reflect(vb)] = reflect(vw);
    }
    std::fill(seen.begin(), seen.end(), 0);
    int winding = 0;
    for (int v0 = 0; v0 < nv; ++v0) {
      if (seen[v0]) continue;
      int cur = v0, par = 0;
      long net = 0;
      do {
        seen[cur] = 1;
        const int nxt = par == 0 ? nb1[cur] : nb2[cur];
        const int cx = cur / m, nx = nxt / m;
        if (nx == (cx + 1) % width)
          ++net;
        else if (cx == (nx + 1) % width)
          --net;
        cur = nxt;
        par ^= 1;
      } while (cur != v0 || par != 0);
      require(net % width == 0 && std::abs(net) <= width,
              "superposition loop with unexpected winding");
      if (net != 0) ++winding;
    }
    require(winding % 2 == 0, "non-contractible loops must come in pairs");
    hist[std::size_t(winding / 2)] += 1.0;
  }
  for (double& h : hist) h /= double(matchings.size());
  return hist;
}

double cylinder_limit_gf(double q, double big_y) {
  require(q > 0.0 && q < 1.0, "modular parameter must lie in (0, 1)");
  double prod = 1.0;
  for (int j = 1; j < 100000; j += 2) {
    const double qj = std::pow(q, j);
    const double den = 1.0 + qj * qj + 2.0 * qj;
    prod *= (1.0 + qj * qj - 2.0 * qj + 4.0 * big_y * big_y * qj) / den;
    if (qj * (4.0 * big_y * big_y + 4.0) < 1e-15) break;
  }
  return prod;
}

std::vector<double> cylinder_limit_distribution(double q) {
  require(q > 0.0 && q < 1.0, "modular parameter must lie in (0, 1)");
  // Expand the product of (c_j + d_j Y^2) factors; coefficient k is the
  // limiting probability of k non-contractible loop pairs.
  std::vector<double> poly{1.0};
  for (int j = 1; j < 100000; j += 2) {
    const double qj = std::pow(q, j);
    const double den = 1.0 + qj * qj + 2.0 * qj;
    const double c = (1.0 + qj * qj - 2.0 * qj) / den;
    const double d = 4.0 * qj / den;
    if (d < 1e-16) break;
    std::vector<double> next(poly.size() + 1, 0.0);
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k] += c * poly[k];
      next[k + 1] += d * poly[k];
    }
    poly = std::move(next);
  }
  while (poly.size() > 1 && std::abs(poly.back()) < 1e-17) poly.pop_back();
  return poly;
}

}  // namespace dimerarc
