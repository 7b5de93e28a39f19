#include "dimerarc/sampler.hpp"

#include <algorithm>
#include <optional>
#include <thread>

#include "dimerarc/error.hpp"
#include "dimerarc/rng.hpp"

namespace dimerarc {

namespace {

const GridPoint kVertexSteps[4] = {{2, 0}, {-2, 0}, {0, 2}, {0, -2}};

}  // namespace

std::unordered_map<GridPoint, GridPoint, GridPointHash>
wilson_spanning_tree(const SymmetricDomain& dom, std::mt19937_64& rng) {
  std::unordered_map<GridPoint, GridPoint, GridPointHash> parent;
  std::unordered_set<GridPoint, GridPointHash> in_tree{dom.root()};
  std::vector<GridPoint> path;
  std::unordered_map<GridPoint, int, GridPointHash> pos;
  for (const GridPoint& start : dom.vertices()) {
    if (in_tree.count(start)) continue;
    path.assign(1, start);
    pos.clear();
    pos[start] = 0;
    GridPoint cur = start;
    while (!in_tree.count(cur)) {
      GridPoint nbrs[4];
      int nn = 0;
      for (const auto& s : kVertexSteps)
        if (dom.has_vertex(cur + s)) nbrs[nn++] = cur + s;
      require(nn > 0, "isolated vertex in random walk");
      const GridPoint nxt = nbrs[bounded_uniform(rng, std::uint64_t(nn))];
      const auto it = pos.find(nxt);
      if (it != pos.end()) {
        // Loop erasure: drop the cycle just closed.
        for (std::size_t k = std::size_t(it->second) + 1; k < path.size(); ++k)
          pos.erase(path[k]);
        path.resize(std::size_t(it->second) + 1);
      } else {
        pos[nxt] = int(path.size());
        path.push_back(nxt);
      }
      cur = nxt;
    }
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
      parent[path[k]] = path[k + 1];
      in_tree.insert(path[k]);
    }
  }
  return parent;
}

Matching tree_to_matching(
    const SymmetricDomain& dom,
    const std::unordered_map<GridPoint, GridPoint, GridPointHash>& parent) {
  const BipartiteGraph g = dom.full_graph();
  Matching matching;
  std::unordered_set<GridPoint, GridPointHash> tree_whites;
  for (const auto& [v, p] : parent) {
    const GridPoint mid{(v.x + p.x) / 2, (v.y + p.y) / 2};
    matching.push_back(EdgeKey{mid, v});
    tree_whites.insert(mid);
  }
  // Dual walk: the edges not in the tree form a spanning tree of the
  // faces plus the outer face, and each inner face pairs with the edge
  // toward the outer root.
  std::unordered_map<GridPoint, std::vector<std::pair<GridPoint, std::optional<GridPoint>>>,
                     GridPointHash>
      face_adj;  // inner face -> (crossing white, face on the other side)
  std::vector<std::pair<GridPoint, GridPoint>> outer_links;  // (white, inner face)
  for (const GridPoint& w : g.whites) {
    if (tree_whites.count(w)) continue;
    const GridPoint off = classify(w) == NodeClass::W1 ? GridPoint{0, 1} : GridPoint{1, 0};
    std::optional<GridPoint> sides[2];
    for (int s = 0; s < 2; ++s) {
      const GridPoint f = s == 0 ? w + off : w - off;
      if (g.has_black(f)) sides[s] = f;
    }
    for (int s = 0; s < 2; ++s) {
      if (!sides[s]) continue;
      if (sides[1 - s])
        face_adj[*sides[s]].push_back({w, sides[1 - s]});
      else
        outer_links.push_back({w, *sides[s]});
    }
  }
  std::unordered_set<GridPoint, GridPointHash> visited;
  std::vector<GridPoint> queue;
  for (const auto& [w, f] : outer_links) {
    if (!visited.insert(f).second) continue;
    matching.push_back(EdgeKey{w, f});
    queue.push_back(f);
  }
  while (!queue.empty()) {
    const GridPoint f = queue.back();
    queue.pop_back();
    for (const auto& [w, other] : face_adj[f]) {
      if (!other || !visited.insert(*other).second) continue;
      matching.push_back(EdgeKey{w, *other});
      queue.push_back(*other);
    }
  }
  require(matching.size() == std::size_t(g.white_count()),
          "matched edge count disagrees with white count");
  return matching;
}

Matching sample_full_matching(const SymmetricDomain& dom, std::mt19937_64& rng) {
  return tree_to_matching(dom, wilson_spanning_tree(dom, rng));
}

std::vector<WindingCounts> sample_windings(const SymmetricDomain& dom,
                                           std::uint64_t seed, int count,
                                           int threads) {
  std::vector<WindingCounts> out(static_cast<std::size_t>(count));
  const GridPoint face = dom.marked_face();
  auto worker = [&](int lo, int hi) {
    for (int i = lo; i < hi; ++i) {
      std::mt19937_64 rng = substream(seed, std::uint64_t(i));
      const Matching m = sample_full_matching(dom, rng);
      const FoldedPair fp = fold_matching(m);
      out[std::size_t(i)] = arc_windings(superimpose(fp.m1, fp.m2), face);
    }
  };
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    worker(0, count);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (count + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const int lo = t * chunk, hi = std::min(count, lo + chunk);
      if (lo < hi) pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return out;
}

DeterminantalSampler::DeterminantalSampler(const BipartiteGraph& g,
                                           const EdgePhases& ph)
    : g_(&g) {
  require(g.white_count() == g.black_count(), "sampler needs a square patch");
  k_ = phase_matrix_dense(g, ph);
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(k_);
  require(lu.isInvertible(), "weight matrix is singular; patch not matchable");
  inv_ = lu.inverse();
}

double DeterminantalSampler::edge_marginal(int w, int b) const {
  return std::abs((k_(w, b) * inv_(b, w)).real());
}

std::vector<int> DeterminantalSampler::sample(std::mt19937_64& rng) {
  const int nw = g_->white_count();
  Eigen::MatrixXcd b_inv = inv_;
  std::vector<int> matched(std::size_t(nw), -1);
  std::vector<char> black_used(std::size_t(nw), 0);
  std::vector<double> probs;
  auto conditionals = [&](int w) {
    probs.clear();
    double sum = 0.0;
    for (int b : g_->adj[std::size_t(w)]) {
      double p = black_used[std::size_t(b)] ? 0.0 : (k_(w, b) * b_inv(b, w)).real();
      p = std::max(p, 0.0);
      probs.push_back(p);
      sum += p;
    }
    return sum;
  };
  auto refresh = [&](int w) {
    std::vector<int> alive_b;
    for (int b = 0; b < nw; ++b)
      if (!black_used[std::size_t(b)]) alive_b.push_back(b);
    const int na = nw - w;
    require(int(alive_b.size()) == na, "alive counts out of step");
    Eigen::MatrixXcd kr(na, na);
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < na; ++j) kr(i, j) = k_(w + i, alive_b[std::size_t(j)]);
    const Eigen::MatrixXcd br = invert(kr);
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < na; ++j) b_inv(alive_b[std::size_t(i)], w + j) = br(i, j);
  };
  for (int w = 0; w < nw; ++w) {
    double sum = conditionals(w);
    if (std::abs(sum - 1.0) > 1e-6) {
      // Accumulated update error; rebuild the inverse on the live block.
      refresh(w);
      sum = conditionals(w);
      require(std::abs(sum - 1.0) < 1e-6, "conditional mass far from one");
    }
    const double u = uniform_double(rng) * sum;
    double acc = 0.0;
    int pick = -1;
    const auto& adj = g_->adj[std::size_t(w)];
    for (std::size_t k = 0; k < adj.size(); ++k) {
      if (probs[k] <= 0.0) continue;
      acc += probs[k];
      pick = adj[k];
      if (u < acc) break;
    }
    require(pick >= 0, "no available partner");
    matched[std::size_t(w)] = pick;
    black_used[std::size_t(pick)] = 1;
    if (w + 1 < nw) pair_deletion_update(b_inv, pick, w);
  }
  return matched;
}

}  // namespace dimerarc
