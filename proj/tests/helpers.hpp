#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "lll/maxsat.hpp"
#include "lll/model.hpp"
#include "lll/ugraph.hpp"

namespace testutil {

inline double three_sigma(double freq, double trials) {
  return 3.0 * std::sqrt(freq * (1.0 - freq) / trials);
}

// independent O(m^2) clause degree oracle
inline std::vector<int> clause_degrees_oracle(const lll::maxsat::CnfFormula& f) {
  std::vector<int> deg(f.m(), 0);
  for (int a = 0; a < f.m(); ++a)
    for (int b = a + 1; b < f.m(); ++b) {
      bool shares = false;
      for (int la : f.clauses[a])
        for (int lb : f.clauses[b])
          if (std::abs(la) == std::abs(lb)) shares = true;
      if (shares) { deg[a]++; deg[b]++; }
    }
  return deg;
}

// quadratic squarefree oracle, structured differently from the library one
inline bool squarefree_oracle(const std::vector<std::uint64_t>& seq) {
  for (std::size_t end = 2; end <= seq.size(); ++end)
    for (std::size_t start = 0; start + 2 <= end + 0 && start < end; ++start) {
      std::size_t len = end - start;
      if (len % 2 != 0) continue;
      std::size_t half = len / 2;
      if (std::equal(seq.begin() + start, seq.begin() + start + half,
                     seq.begin() + start + half))
        return false;
    }
  return true;
}

// all simple cycles of a small graph, as sorted edge-id lists
inline std::vector<std::vector<int>> all_cycles(const lll::Graph& g) {
  std::vector<std::vector<int>> cycles;
  std::set<std::vector<int>> seen;
  std::vector<int> path_edges;
  std::vector<char> on_path(g.n, 0);

  // DFS from each root; a cycle is recorded when we return to the root
  auto dfs = [&](auto&& self, int root, int v) -> void {
    for (auto [w, e] : g.adj[v]) {
      if (!path_edges.empty() && e == path_edges.back()) continue;
      if (w == root && path_edges.size() >= 2) {
        std::vector<int> cyc = path_edges;
        cyc.push_back(e);
        std::sort(cyc.begin(), cyc.end());
        if (seen.insert(cyc).second) cycles.push_back(cyc);
        continue;
      }
      if (on_path[w] || w == root) continue;
      on_path[w] = 1;
      path_edges.push_back(e);
      self(self, root, w);
      path_edges.pop_back();
      on_path[w] = 0;
    }
  };
  for (int root = 0; root < g.n; ++root) {
    std::fill(on_path.begin(), on_path.end(), 0);
    path_edges.clear();
    dfs(dfs, root, root);
  }
  return cycles;
}

// exhaustive acyclic-coloring oracle: proper + every cycle gets >= 3 colors
inline bool acyclic_coloring_oracle(const lll::Graph& g,
                                    const std::vector<std::uint64_t>& colors) {
  for (int v = 0; v < g.n; ++v) {
    std::set<std::uint64_t> seen;
    for (auto [w, e] : g.adj[v])
      if (!seen.insert(colors[e]).second) return false;
  }
  for (const auto& cycle : all_cycles(g)) {
    std::set<std::uint64_t> palette;
    for (int e : cycle) palette.insert(colors[e]);
    if (palette.size() < 3) return false;
  }
  return true;
}

// Edmonds-Karp max flow on (from, to, cap) arcs; independent of the Dinic in src
struct EkFlow {
  int n;
  std::vector<std::vector<std::int64_t>> cap;
  explicit EkFlow(int nodes) : n(nodes), cap(nodes, std::vector<std::int64_t>(nodes, 0)) {}
  void add(int u, int v, std::int64_t c) { cap[u][v] += c; }
  std::int64_t run(int s, int t) {
    std::int64_t total = 0;
    while (true) {
      std::vector<int> parent(n, -1);
      parent[s] = s;
      std::vector<int> queue{s};
      for (std::size_t qi = 0; qi < queue.size() && parent[t] == -1; ++qi) {
        int u = queue[qi];
        for (int v = 0; v < n; ++v)
          if (parent[v] == -1 && cap[u][v] > 0) {
            parent[v] = u;
            queue.push_back(v);
          }
      }
      if (parent[t] == -1) break;
      std::int64_t push = INT64_MAX;
      for (int v = t; v != s; v = parent[v]) push = std::min(push, cap[parent[v]][v]);
      for (int v = t; v != s; v = parent[v]) {
        cap[parent[v]][v] -= push;
        cap[v][parent[v]] += push;
      }
      total += push;
    }
    return total;
  }
};

}  // namespace testutil
