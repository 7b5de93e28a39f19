#include "dimerarc/enumerate.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "dimerarc/error.hpp"

namespace dimerarc {

namespace {

EdgeKey canonical_edge(GridPoint a, GridPoint b) {
  if (is_white(classify(a))) return EdgeKey{a, b};
  return EdgeKey{b, a};
}

void append_point(std::ostringstream& os, GridPoint p) {
  os << p.x << ',' << p.y;
}

}  // namespace

AbstractBipartite to_abstract(const BipartiteGraph& g) {
  AbstractBipartite ab;
  ab.nw = int(g.whites.size());
  ab.nb = int(g.blacks.size());
  ab.adj = g.adj;
  return ab;
}

std::vector<std::vector<int>> enumerate_matchings(const AbstractBipartite& g,
                                                  std::size_t cap) {
  require(g.nw == g.nb, "matching enumeration needs equal color counts");
  std::vector<std::vector<int>> out;
  if (g.nw == 0) {
    out.push_back({});
    return out;
  }
  // Process whites in ascending static degree so low-choice vertices
  // prune the search early.
  std::vector<int> white_order(g.nw);
  std::iota(white_order.begin(), white_order.end(), 0);
  std::stable_sort(white_order.begin(), white_order.end(), [&](int a, int b) {
    return g.adj[a].size() < g.adj[b].size();
  });
  std::vector<int> matching(g.nw, -1);
  std::vector<char> black_used(g.nb, 0);
  auto recurse = [&](auto&& self, int depth) -> void {
    if (depth == g.nw) {
      require(out.size() < cap, "matching enumeration exceeded cap");
      out.push_back(matching);
      return;
    }
    const int w = white_order[depth];
    for (int b : g.adj[w]) {
      if (black_used[b]) continue;
      black_used[b] = 1;
      matching[w] = b;
      self(self, depth + 1);
      matching[w] = -1;
      black_used[b] = 0;
    }
  };
  recurse(recurse, 0);
  return out;
}

std::vector<std::vector<int>> enumerate_matchings(const BipartiteGraph& g,
                                                  std::size_t cap) {
  return enumerate_matchings(to_abstract(g), cap);
}

DoubledGraph doubled_graph(const FoldedGraph& fg) {
  DoubledGraph dg;
  // Abstract node ids follow the matrix order so matrix indices are easy
  // to recover.
  std::unordered_map<GridPoint, std::vector<std::pair<int, int>>, GridPointHash>
      black_ids;  // point -> (copy, abstract id)
  for (int pos = 0; pos < fg.n(); ++pos) {
    const auto& vx = fg.order[std::size_t(pos)];
    if (is_white(classify(vx.p))) {
      dg.white_nodes.push_back({vx.p, vx.copy});
      dg.white_matrix_idx.push_back(pos);
    } else {
      black_ids[vx.p].push_back({vx.copy, int(dg.black_nodes.size())});
      dg.black_nodes.push_back({vx.p, vx.copy});
      dg.black_matrix_idx.push_back(pos);
    }
  }
  dg.ab.nw = int(dg.white_nodes.size());
  dg.ab.nb = int(dg.black_nodes.size());
  require(dg.ab.nw == dg.ab.nb, "doubled graph has unbalanced colors");
  dg.ab.adj.resize(std::size_t(dg.ab.nw));
  // Every base edge lifts to all fiber combinations: one edge between
  // boundary vertices, two when one endpoint is doubled, four when both
  // are.
  for (int aw = 0; aw < dg.ab.nw; ++aw) {
    const GridPoint wp = dg.white_nodes[std::size_t(aw)].first;
    const int wi = fg.base.white_index.at(wp);
    for (int bi : fg.base.adj[std::size_t(wi)]) {
      const GridPoint bp = fg.base.blacks[std::size_t(bi)];
      for (const auto& [copy, ab_id] : black_ids.at(bp)) {
        (void)copy;
        dg.ab.adj[std::size_t(aw)].push_back(ab_id);
      }
    }
    std::sort(dg.ab.adj[std::size_t(aw)].begin(), dg.ab.adj[std::size_t(aw)].end());
  }
  return dg;
}

OmegaConfig config_from_edges(
    const std::map<std::pair<std::pair<int, int>, std::pair<int, int>>, int>&
        mult) {
  OmegaConfig cfg;
  for (const auto& [pq, m] : mult) {
    if (m == 0) continue;
    const EdgeKey e{GridPoint{pq.first.first, pq.first.second},
                    GridPoint{pq.second.first, pq.second.second}};
    require(m <= 2, "edge multiplicity above two in projection");
    cfg.edges.push_back({e, m});
  }
  // Doubled edges are isolated two-cycles; everything else is a union of
  // vertex-disjoint simple paths and cycles.
  std::map<GridPoint, std::vector<GridPoint>> nbrs;
  for (const auto& [e, m] : cfg.edges) {
    if (m == 2) {
      cfg.doubled.push_back(e);
      continue;
    }
    nbrs[e.w].push_back(e.b);
    nbrs[e.b].push_back(e.w);
  }
  for (auto& [p, list] : nbrs) {
    (void)p;
    std::sort(list.begin(), list.end());
    require(list.size() <= 2, "projected degree above two");
  }
  auto remove_edge = [&](GridPoint a, GridPoint b) {
    auto& la = nbrs[a];
    la.erase(std::find(la.begin(), la.end(), b));
    auto& lb = nbrs[b];
    lb.erase(std::find(lb.begin(), lb.end(), a));
  };
  // Open paths first, started from singly-covered vertices.
  for (auto& [start, list] : nbrs) {
    if (list.size() != 1) continue;
    std::vector<GridPoint> path{start};
    GridPoint cur = start;
    while (!nbrs[cur].empty()) {
      const GridPoint nxt = nbrs[cur][0];
      remove_edge(cur, nxt);
      path.push_back(nxt);
      cur = nxt;
    }
    const bool front_white = is_white(classify(path.front()));
    const bool back_white = is_white(classify(path.back()));
    if (front_white != back_white) {
      if (front_white) std::reverse(path.begin(), path.end());
    } else if (path.back() < path.front()) {
      std::reverse(path.begin(), path.end());
    }
    cfg.arcs.push_back(std::move(path));
  }
  // Remaining edges close into cycles; start each at its smallest vertex
  // and step toward the smaller neighbor.
  for (auto& [start, list] : nbrs) {
    if (list.empty()) continue;
    std::vector<GridPoint> cyc{start};
    GridPoint cur = start;
    while (true) {
      const GridPoint nxt = nbrs[cur][0];
      remove_edge(cur, nxt);
      if (nxt == start) break;
      cyc.push_back(nxt);
      cur = nxt;
    }
    require(cyc.size() >= 4, "cycle shorter than four vertices");
    cfg.loops.push_back(std::move(cyc));
  }
  std::ostringstream os;
  for (const auto& [e, m] : cfg.edges) {
    append_point(os, e.w);
    os << '~';
    append_point(os, e.b);
    os << '*' << m << ';';
  }
  cfg.key = os.str();
  return cfg;
}

OmegaConfig project(const DoubledGraph& dg, const std::vector<int>& matching) {
  std::map<std::pair<std::pair<int, int>, std::pair<int, int>>, int> mult;
  for (int aw = 0; aw < dg.ab.nw; ++aw) {
    const GridPoint wp = dg.white_nodes[std::size_t(aw)].first;
    const GridPoint bp = dg.black_nodes[std::size_t(matching[std::size_t(aw)])].first;
    mult[{{wp.x, wp.y}, {bp.x, bp.y}}] += 1;
  }
  return config_from_edges(mult);
}

std::vector<OmegaConfig> enumerate_omega(const FoldedGraph& fg, std::size_t cap) {
  const BipartiteGraph& g = fg.base;
  const int nw = g.white_count();
  std::vector<int> black_left(g.blacks.size());
  for (std::size_t bi = 0; bi < g.blacks.size(); ++bi)
    black_left[bi] = fg.is_folded(g.blacks[bi]) ? 1 : 2;
  std::vector<OmegaConfig> out;
  std::map<std::pair<std::pair<int, int>, std::pair<int, int>>, int> mult;
  auto edge_slot = [&](int wi, int bi) {
    const GridPoint wp = g.whites[std::size_t(wi)];
    const GridPoint bp = g.blacks[std::size_t(bi)];
    return std::pair<std::pair<int, int>, std::pair<int, int>>{{wp.x, wp.y},
                                                               {bp.x, bp.y}};
  };
  // Each white spends its edge units on neighboring blacks; unordered
  // choices generate every configuration exactly once.
  auto recurse = [&](auto&& self, int wi) -> void {
    if (wi == nw) {
      require(out.size() < cap, "configuration enumeration exceeded cap");
      out.push_back(config_from_edges(mult));
      return;
    }
    const auto& adj = g.adj[std::size_t(wi)];
    if (fg.is_folded(g.whites[std::size_t(wi)])) {
      for (int bi : adj) {
        if (black_left[std::size_t(bi)] < 1) continue;
        black_left[std::size_t(bi)] -= 1;
        mult[edge_slot(wi, bi)] += 1;
        self(self, wi + 1);
        mult[edge_slot(wi, bi)] -= 1;
        black_left[std::size_t(bi)] += 1;
      }
      return;
    }
    for (std::size_t a = 0; a < adj.size(); ++a)
      for (std::size_t b = a; b < adj.size(); ++b) {
        const int ba = adj[a], bb = adj[b];
        const int take = a == b ? 2 : 1;
        if (black_left[std::size_t(ba)] < take) continue;
        if (a != b && black_left[std::size_t(bb)] < 1) continue;
        black_left[std::size_t(ba)] -= take;
        mult[edge_slot(wi, ba)] += take;
        if (a != b) {
          black_left[std::size_t(bb)] -= 1;
          mult[edge_slot(wi, bb)] += 1;
        }
        self(self, wi + 1);
        if (a != b) {
          mult[edge_slot(wi, bb)] -= 1;
          black_left[std::size_t(bb)] += 1;
        }
        mult[edge_slot(wi, ba)] -= take;
        black_left[std::size_t(ba)] += take;
      }
  };
  recurse(recurse, 0);
  return out;
}

cplx config_weight(const Connection& conn, const OmegaConfig& cfg) {
  cplx w = 1.0;
  for (const auto& e : cfg.doubled) w *= conn.get_phi(e).determinant();
  for (const auto& cyc : cfg.loops) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      const GridPoint from = cyc[i];
      const GridPoint to = cyc[(i + 1) % cyc.size()];
      m = conn.transport(from, to) * m;
    }
    w *= m.trace();
  }
  for (const auto& path : cfg.arcs) {
    const std::size_t steps = path.size() - 1;
    if (steps == 1) {
      w *= conn.get_nu(canonical_edge(path[0], path[1]));
      continue;
    }
    // Transport over interior edges only, composed from the far end back
    // toward the start; the two end edges contribute their pairing
    // vectors.
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
    for (std::size_t i = steps - 1; i >= 2; --i)
      m = conn.transport(path[i], path[i - 1]) * m;
    // Same-colored endpoints contract antisymmetrically through the
    // symplectic form, which sits at the white end of the bilinear.
    const bool front_black = is_black(classify(path.front()));
    const bool back_black = is_black(classify(path.back()));
    if (front_black == back_black) {
      Eigen::Matrix2cd j;
      j << 0.0, 1.0, -1.0, 0.0;
      m = front_black ? m * j : j * m;
    }
    const Eigen::Vector2cd first = conn.get_psi(canonical_edge(path[0], path[1]));
    const Eigen::Vector2cd last =
        conn.get_psi(canonical_edge(path[steps - 1], path[steps]));
    w *= (first.transpose() * m * last).value();
  }
  return w;
}

double expansion_sign(const FoldedGraph& fg, const EdgePhases& ph,
                      std::size_t cap) {
  const Connection trivial;
  const SkewMatrix k = assemble_K(fg, ph, trivial);
  const cplx pf = pfaffian(k).value();
  cplx total = 0.0;
  for (const auto& cfg : enumerate_omega(fg, cap))
    total += config_weight(trivial, cfg);
  require(std::abs(total) > 1e-9, "trivial expansion sum vanishes");
  const cplx ratio = pf / total;
  require(std::abs(std::abs(ratio) - 1.0) < 1e-6,
          "expansion sign calibration is not a unit");
  require(std::abs(ratio.imag()) < 1e-6,
          "expansion sign calibration is not real");
  return ratio.real() > 0.0 ? 1.0 : -1.0;
}

cplx kenyon_rhs(const FoldedGraph& fg, const EdgePhases& ph,
                const Connection& conn, std::size_t cap) {
  const double sign = expansion_sign(fg, ph, cap);
  cplx total = 0.0;
  for (const auto& cfg : enumerate_omega(fg, cap)) total += config_weight(conn, cfg);
  return sign * total;
}

cplx matching_term(const SkewMatrix& k, const DoubledGraph& dg,
                   const std::vector<int>& matching) {
  std::vector<std::pair<int, int>> pairs;
  cplx prod = 1.0;
  for (int aw = 0; aw < dg.ab.nw; ++aw) {
    int i = dg.white_matrix_idx[std::size_t(aw)];
    int j = dg.black_matrix_idx[std::size_t(matching[std::size_t(aw)])];
    if (i > j) std::swap(i, j);
    pairs.push_back({i, j});
    prod *= k.at(i, j);
  }
  return double(pair_partition_sign(pairs)) * prod;
}

double sign_lemma_check(const FoldedGraph& fg, const EdgePhases& ph,
                        const SkewMatrix& k, const Connection& conn,
                        const DoubledGraph& dg, std::size_t cap) {
  const double sign = expansion_sign(fg, ph, cap);
  std::unordered_map<std::string, cplx> sums;
  std::unordered_map<std::string, OmegaConfig> reps;
  for (const auto& m : enumerate_matchings(dg.ab, cap)) {
    OmegaConfig cfg = project(dg, m);
    sums[cfg.key] += matching_term(k, dg, m);
    reps.emplace(cfg.key, std::move(cfg));
  }
  double worst = 0.0;
  for (const auto& [key, total] : sums) {
    const cplx expect = sign * config_weight(conn, reps.at(key));
    worst = std::max(worst, std::abs(total - expect));
  }
  return worst;
}

}  // namespace dimerarc
