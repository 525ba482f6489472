#include <stdexcept>
#include <vector>

#include "lll/acyclic.hpp"

namespace lll {

EdgeColoring vizing_color(const Graph& g) {
  int palette = std::max(g.max_degree + 1, 1);
  std::vector<int> color(g.m(), -1);
  std::vector<std::vector<int>> used(g.n, std::vector<int>(palette, -1));  // vertex x color -> edge

  auto set_color = [&](int e, int c) {
    auto [a, b] = g.edges[e];
    if (color[e] != -1) {
      used[a][color[e]] = -1;
      used[b][color[e]] = -1;
    }
    color[e] = c;
    if (c != -1) {
      used[a][c] = e;
      used[b][c] = e;
    }
  };
  auto is_free = [&](int v, int c) { return used[v][c] == -1; };
  auto free_color = [&](int v) {
    for (int c = 0; c < palette; ++c)
      if (used[v][c] == -1) return c;
    throw std::logic_error("no free color at vertex");
  };

  for (int e0 = 0; e0 < g.m(); ++e0) {
    int u = g.edges[e0].first;

    // maximal fan of u starting at the other end of e0
    std::vector<int> fan_vertex{g.edges[e0].second};
    std::vector<int> fan_edge{e0};
    std::vector<char> in_fan(g.n, 0);
    in_fan[fan_vertex[0]] = 1;
    bool grew = true;
    while (grew) {
      grew = false;
      int tip = fan_vertex.back();
      for (auto [w, e] : g.adj[u]) {
        if (in_fan[w] || color[e] == -1) continue;
        if (is_free(tip, color[e])) {
          fan_vertex.push_back(w);
          fan_edge.push_back(e);
          in_fan[w] = 1;
          grew = true;
          break;
        }
      }
    }

    int c = free_color(u);
    int d = free_color(fan_vertex.back());

    if (c != d) {
      // collect the cd path from u (first edge colored d), then flip it;
      // uncolor everything first so the used table never aliases
      std::vector<int> path;
      int cur = u, want = d;
      while (used[cur][want] != -1) {
        int e = used[cur][want];
        path.push_back(e);
        cur = g.other_end(e, cur);
        want = want == d ? c : d;
      }
      std::vector<int> flipped(path.size());
      for (std::size_t i = 0; i < path.size(); ++i)
        flipped[i] = color[path[i]] == d ? c : d;
      for (int e : path) set_color(e, -1);
      for (std::size_t i = 0; i < path.size(); ++i) set_color(path[i], flipped[i]);
    }

    // first fan prefix that is still valid and has d free at its tip
    int w = -1;
    for (std::size_t j = 0; j < fan_vertex.size(); ++j) {
      if (j > 0 && !is_free(fan_vertex[j - 1], color[fan_edge[j]])) break;
      if (is_free(fan_vertex[j], d)) {
        w = static_cast<int>(j);
        break;
      }
    }
    if (w == -1) throw std::logic_error("vizing fan rotation found no slot");

    for (int i = 0; i < w; ++i) {
      int next_color = color[fan_edge[i + 1]];
      set_color(fan_edge[i + 1], -1);
      set_color(fan_edge[i], next_color);
    }
    set_color(fan_edge[w], d);
  }

  EdgeColoring out;
  out.palette = static_cast<std::uint64_t>(palette);
  out.color.resize(g.m());
  for (int e = 0; e < g.m(); ++e) out.color[e] = static_cast<std::uint64_t>(color[e]);
  return out;
}

}  // namespace lll
