#include "lll/maxflow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace lll {

MaxFlow::MaxFlow(int nodes) : n_(nodes), adj_(nodes), level_(nodes), iter_(nodes) {}

int MaxFlow::add_edge(int from, int to, std::int64_t capacity) {
  int fwd_slot = static_cast<int>(adj_[from].size());
  int rev_slot = static_cast<int>(adj_[to].size());
  adj_[from].push_back(Arc{to, capacity, rev_slot});
  adj_[to].push_back(Arc{from, 0, fwd_slot});
  arc_index_.emplace_back(from, fwd_slot);
  original_cap_.push_back(capacity);
  return static_cast<int>(arc_index_.size()) - 1;
}

bool MaxFlow::bfs() {
  std::fill(level_.begin(), level_.end(), -1);
  std::queue<int> q;
  level_[source_] = 0;
  q.push(source_);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (const Arc& a : adj_[v])
      if (a.cap > 0 && level_[a.to] < 0) {
        level_[a.to] = level_[v] + 1;
        q.push(a.to);
      }
  }
  return level_[sink_] >= 0;
}

std::int64_t MaxFlow::dfs(int v, std::int64_t limit) {
  if (v == sink_) return limit;
  for (int& i = iter_[v]; i < static_cast<int>(adj_[v].size()); ++i) {
    Arc& a = adj_[v][i];
    if (a.cap <= 0 || level_[a.to] != level_[v] + 1) continue;
    std::int64_t pushed = dfs(a.to, std::min(limit, a.cap));
    if (pushed > 0) {
      a.cap -= pushed;
      adj_[a.to][a.rev].cap += pushed;
      return pushed;
    }
  }
  return 0;
}

std::int64_t MaxFlow::run(int source, int sink) {
  source_ = source;
  sink_ = sink;
  std::int64_t total = 0;
  while (bfs()) {
    std::fill(iter_.begin(), iter_.end(), 0);
    while (std::int64_t pushed = dfs(source, std::numeric_limits<std::int64_t>::max()))
      total += pushed;
  }
  return total;
}

std::int64_t MaxFlow::flow_on(int arc) const {
  auto [node, slot] = arc_index_[arc];
  return original_cap_[arc] - adj_[node][slot].cap;
}

std::vector<char> MaxFlow::min_cut_side() const {
  std::vector<char> side(n_, 0);
  std::queue<int> q;
  side[source_] = 1;
  q.push(source_);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (const Arc& a : adj_[v])
      if (a.cap > 0 && !side[a.to]) {
        side[a.to] = 1;
        q.push(a.to);
      }
  }
  return side;
}

std::int64_t MaxFlow::cut_capacity() const {
  auto side = min_cut_side();
  std::int64_t cap = 0;
  for (std::size_t arc = 0; arc < arc_index_.size(); ++arc) {
    auto [node, slot] = arc_index_[arc];
    int to = adj_[node][slot].to;
    if (side[node] && !side[to]) cap += original_cap_[arc];
  }
  return cap;
}

}  // namespace lll
