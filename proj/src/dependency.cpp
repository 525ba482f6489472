#include "lll/dependency.hpp"

#include <algorithm>

namespace lll {

std::size_t DependencyGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& nbrs : adjacency) twice += nbrs.size();
  return twice / 2;
}

DependencyGraph build_dependency_graph(const VariableSpace& space, const EventSet& events) {
  events.validate(space);
  int m = events.m();
  std::vector<std::vector<int>> by_var(space.n());
  for (const auto& e : events.events)
    for (int v : e.vbl) by_var[v].push_back(e.id);

  std::vector<std::vector<int>> adj(m);
  for (const auto& clique : by_var)
    for (std::size_t i = 0; i < clique.size(); ++i)
      for (std::size_t j = i + 1; j < clique.size(); ++j) {
        adj[clique[i]].push_back(clique[j]);
        adj[clique[j]].push_back(clique[i]);
      }

  for (auto& nbrs : adj) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  return DependencyGraph{std::move(adj)};
}

std::vector<int> footprint_neighbors(const EventSet& events, const std::vector<int>& vbl,
                                     int exclude_id) {
  std::vector<int> out;
  for (const auto& e : events.events) {
    if (e.id == exclude_id) continue;
    // both vbl lists are sorted
    bool shares = false;
    std::size_t i = 0, j = 0;
    while (i < vbl.size() && j < e.vbl.size()) {
      if (vbl[i] == e.vbl[j]) { shares = true; break; }
      if (vbl[i] < e.vbl[j]) ++i; else ++j;
    }
    if (shares) out.push_back(e.id);
  }
  return out;
}

}  // namespace lll
