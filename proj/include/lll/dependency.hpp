#pragma once

#include <vector>

#include "lll/model.hpp"

namespace lll {

// Variable-sharing graph on the events: A ~ B iff A != B and
// vbl(A) intersects vbl(B). Adjacency lists are sorted.
struct DependencyGraph {
  std::vector<std::vector<int>> adjacency;

  int degree(int event) const { return static_cast<int>(adjacency[event].size()); }
  std::size_t edge_count() const;
};

DependencyGraph build_dependency_graph(const VariableSpace& space, const EventSet& events);

// Neighborhood of an arbitrary footprint against the event set; exclude_id
// drops the event itself when the footprint belongs to a member.
std::vector<int> footprint_neighbors(const EventSet& events, const std::vector<int>& vbl,
                                     int exclude_id = -1);

}  // namespace lll
