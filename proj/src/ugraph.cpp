#include "lll/ugraph.hpp"

#include <algorithm>
#include <istream>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

#include "lll/errors.hpp"

namespace lll {

Graph make_graph(int n, std::vector<std::pair<int, int>> edges) {
  Graph g;
  g.n = n;
  g.adj.resize(n);
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("loops are not allowed");
    auto key = std::minmax(u, v);
    if (!seen.insert(key).second) throw std::invalid_argument("parallel edge");
    int id = g.m();
    g.edges.emplace_back(u, v);
    g.adj[u].emplace_back(v, id);
    g.adj[v].emplace_back(u, id);
  }
  for (const auto& nbrs : g.adj)
    g.max_degree = std::max(g.max_degree, static_cast<int>(nbrs.size()));
  return g;
}

Graph read_edge_list(std::istream& in) {
  int n = 0, m = 0;
  if (!(in >> n >> m)) throw ParseError("edge list missing 'n m' header");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < m; ++i) {
    int u, v;
    if (!(in >> u >> v)) throw ParseError("edge list truncated");
    edges.emplace_back(u, v);
  }
  return make_graph(n, std::move(edges));
}

Graph read_edge_list(const std::string& text) {
  std::istringstream in(text);
  return read_edge_list(in);
}

std::string write_edge_list(const Graph& g) {
  std::ostringstream os;
  os << g.n << " " << g.m() << "\n";
  for (auto [u, v] : g.edges) os << u << " " << v << "\n";
  return os.str();
}

int girth(const Graph& g) {
  int best = kInfiniteGirth;
  std::vector<int> dist(g.n), parent_edge(g.n);
  for (int start = 0; start < g.n; ++start) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(parent_edge.begin(), parent_edge.end(), -1);
    std::queue<int> q;
    dist[start] = 0;
    q.push(start);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      if (2 * dist[u] >= best) continue;
      for (auto [w, e] : g.adj[u]) {
        if (e == parent_edge[u]) continue;
        if (dist[w] == -1) {
          dist[w] = dist[u] + 1;
          parent_edge[w] = e;
          q.push(w);
        } else {
          // cross or back edge closes a cycle through start
          best = std::min(best, dist[u] + dist[w] + 1);
        }
      }
    }
  }
  return best;
}

Graph path_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return make_graph(n, std::move(edges));
}

Graph cycle_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return make_graph(n, std::move(edges));
}

Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return make_graph(n, std::move(edges));
}

Graph star_graph(int leaves) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return make_graph(leaves + 1, std::move(edges));
}

Graph petersen_graph() {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);          // outer cycle
    edges.emplace_back(i, i + 5);                // spokes
    edges.emplace_back(i + 5, (i + 2) % 5 + 5);  // inner pentagram
  }
  return make_graph(10, std::move(edges));
}

}  // namespace lll
