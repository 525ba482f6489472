#pragma once

#include <cstdint>
#include <vector>

namespace lll {

// Dinic max flow: BFS level graph + blocking-flow DFS, so augmentation always
// follows shortest paths. Integral capacities, integral flow.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes);

  // returns the arc index (use it to read flows back)
  int add_edge(int from, int to, std::int64_t capacity);

  std::int64_t run(int source, int sink);

  std::int64_t flow_on(int arc) const;

  // nodes reachable from the source in the residual graph (the source side
  // of a minimum cut); valid after run().
  std::vector<char> min_cut_side() const;

  // capacity of the cut induced by min_cut_side()
  std::int64_t cut_capacity() const;

 private:
  struct Arc {
    int to;
    std::int64_t cap;
    int rev;
  };

  bool bfs();
  std::int64_t dfs(int v, std::int64_t limit);

  int n_;
  int source_ = -1, sink_ = -1;
  std::vector<std::vector<Arc>> adj_;
  std::vector<std::pair<int, int>> arc_index_;  // external arc -> (node, slot)
  std::vector<std::int64_t> original_cap_;
  std::vector<int> level_, iter_;
};

}  // namespace lll
