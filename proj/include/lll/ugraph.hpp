#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace lll {

// Simple undirected graph with stable edge ids.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<std::pair<int, int>>> adj;  // (neighbor, edge id)
  int max_degree = 0;

  int m() const { return static_cast<int>(edges.size()); }
  int other_end(int edge, int v) const {
    return edges[edge].first == v ? edges[edge].second : edges[edge].first;
  }
};

Graph make_graph(int n, std::vector<std::pair<int, int>> edges);

// Text format: first line "n m", then m lines "u v" (0-based).
Graph read_edge_list(std::istream& in);
Graph read_edge_list(const std::string& text);
std::string write_edge_list(const Graph& g);

inline constexpr int kInfiniteGirth = std::numeric_limits<int>::max();

// Shortest cycle length via BFS from every vertex; kInfiniteGirth on forests.
int girth(const Graph& g);

Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph star_graph(int leaves);
Graph petersen_graph();

}  // namespace lll
