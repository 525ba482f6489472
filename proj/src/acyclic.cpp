#include "lll/acyclic.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "lll/errors.hpp"

namespace lll {

namespace {

// Walks the two-color subgraph component containing start_edge. Every vertex
// has degree <= 2 here (the coloring is proper by the time we scan pairs), so
// components are paths or cycles; a cycle is returned in traversal order.
std::optional<std::vector<int>> cycle_in_pair_subgraph(const Graph& g,
                                                       const std::vector<int>& subgraph_edges,
                                                       std::vector<char>& edge_seen,
                                                       int start_edge) {
  // local adjacency over the component
  std::map<int, std::vector<int>> local;  // vertex -> incident edge ids in subgraph
  for (int e : subgraph_edges) {
    local[g.edges[e].first].push_back(e);
    local[g.edges[e].second].push_back(e);
  }

  // follow the path/cycle starting from start_edge in one direction
  std::vector<int> walk{start_edge};
  edge_seen[start_edge] = 1;
  int first_vertex = g.edges[start_edge].first;
  int cur_vertex = g.edges[start_edge].second;
  int cur_edge = start_edge;
  while (true) {
    int next_edge = -1;
    for (int e : local[cur_vertex])
      if (e != cur_edge) { next_edge = e; break; }
    if (next_edge == -1) break;  // dead end: path, not cycle (in this direction)
    edge_seen[next_edge] = 1;
    walk.push_back(next_edge);
    cur_vertex = g.other_end(next_edge, cur_vertex);
    cur_edge = next_edge;
    if (cur_vertex == first_vertex) return walk;  // closed up
  }
  // mark the other direction traversed too so the component is not rescanned
  cur_vertex = first_vertex;
  cur_edge = start_edge;
  while (true) {
    int next_edge = -1;
    for (int e : local[cur_vertex])
      if (e != cur_edge) { next_edge = e; break; }
    if (next_edge == -1) break;
    edge_seen[next_edge] = 1;
    cur_vertex = g.other_end(next_edge, cur_vertex);
    cur_edge = next_edge;
  }
  return std::nullopt;
}

}  // namespace

std::optional<AcyclicViolation> find_acyclic_violation(const Graph& g, const EdgeColoring& col) {
  // incident pairs first, cheapest check
  for (int v = 0; v < g.n; ++v) {
    std::map<std::uint64_t, int> first_with;  // color -> smallest incident edge id
    std::vector<int> incident;
    for (auto [w, e] : g.adj[v]) incident.push_back(e);
    std::sort(incident.begin(), incident.end());
    for (int e : incident) {
      auto [it, fresh] = first_with.emplace(col.color[e], e);
      if (!fresh) {
        AcyclicViolation viol;
        viol.kind = AcyclicViolation::Kind::IncidentPair;
        viol.edges = {it->second, e};
        viol.colors = {col.color[e], col.color[e]};
        return viol;
      }
    }
  }

  // bucket edges by color; colors can be sparse so use an ordered map
  std::map<std::uint64_t, std::vector<int>> bucket;
  for (int e = 0; e < g.m(); ++e) bucket[col.color[e]].push_back(e);

  std::vector<char> edge_seen(g.m(), 0);
  for (auto it1 = bucket.begin(); it1 != bucket.end(); ++it1) {
    for (auto it2 = std::next(it1); it2 != bucket.end(); ++it2) {
      std::vector<int> sub = it1->second;
      sub.insert(sub.end(), it2->second.begin(), it2->second.end());
      if (sub.size() < 4) continue;  // a bichromatic cycle needs >= 4 edges
      std::sort(sub.begin(), sub.end());
      std::optional<AcyclicViolation> found;
      for (int e : sub) {
        if (edge_seen[e]) continue;
        auto cycle = cycle_in_pair_subgraph(g, sub, edge_seen, e);
        if (cycle) {
          AcyclicViolation viol;
          viol.kind = AcyclicViolation::Kind::BichromaticCycle;
          viol.edges = std::move(*cycle);
          viol.colors = {it1->first, it2->first};
          found = std::move(viol);
          break;
        }
      }
      for (int e : sub) edge_seen[e] = 0;  // reset only what this pair touched
      if (found) return found;
    }
  }
  return std::nullopt;
}

namespace {

std::uint64_t acyclic_cap(const Graph& g, std::uint64_t palette, double cap_factor) {
  // budget shape: cap_factor * n_e * log2(1/delta) with
  // log2(1/delta) = O(n_e log C) from the smallest event value
  double m = std::max(1, g.m());
  double log2_inv_delta =
      std::max(1.0, m * std::log2(std::max<double>(2.0, static_cast<double>(palette))));
  double cap = std::ceil(cap_factor * m * log2_inv_delta);
  if (cap >= 9e18) return UINT64_MAX;
  return static_cast<std::uint64_t>(std::max(cap, 16.0));
}

}  // namespace

AcyclicRun mt_acyclic_16(const Graph& g, Rng& rng, double cap_factor) {
  if (g.max_degree < 1) throw std::invalid_argument("graph has no edges");
  std::uint64_t palette = 16ULL * static_cast<std::uint64_t>(g.max_degree);

  AcyclicRun run;
  run.coloring.palette = palette;
  run.coloring.color.resize(g.m());
  // palette << 2^64, modulo bias is negligible
  for (auto& c : run.coloring.color) c = rng() % palette;

  std::uint64_t cap = acyclic_cap(g, palette, cap_factor);
  while (auto viol = find_acyclic_violation(g, run.coloring)) {
    if (run.resamples >= cap) {
      run.status = ColoringStatus::CapExceeded;
      return run;
    }
    run.resamples++;
    for (int e : viol->edges) run.coloring.color[e] = rng() % palette;
  }
  run.status = ColoringStatus::Success;
  return run;
}

AcyclicRun mt_acyclic_girth(const Graph& g, Rng& rng, double cap_factor, double girth_coeff) {
  if (g.max_degree < 1) throw std::invalid_argument("graph has no edges");
  int delta = g.max_degree;
  double needed = girth_coeff * delta * std::log2(static_cast<double>(delta) + 1.0);
  int have = girth(g);
  if (have != kInfiniteGirth && have < needed)
    throw GirthTooSmall("girth " + std::to_string(have) + " below required " +
                        std::to_string(needed));

  EdgeColoring base = vizing_color(g);  // colors 0..delta
  std::uint64_t switch_color = static_cast<std::uint64_t>(delta) + 1;
  double switch_prob = 1.0 / (32.0 * delta);

  std::vector<char> switched(g.m(), 0);
  auto draw_coin = [&](int e) {
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    switched[e] = u < switch_prob;
  };
  for (int e = 0; e < g.m(); ++e) draw_coin(e);

  AcyclicRun run;
  run.coloring.palette = static_cast<std::uint64_t>(delta) + 2;
  run.coloring.color.resize(g.m());
  auto refresh = [&]() {
    for (int e = 0; e < g.m(); ++e)
      run.coloring.color[e] = switched[e] ? switch_color : base.color[e];
  };
  refresh();

  std::uint64_t cap = acyclic_cap(g, run.coloring.palette, cap_factor);
  while (auto viol = find_acyclic_violation(g, run.coloring)) {
    if (run.resamples >= cap) {
      run.status = ColoringStatus::CapExceeded;
      return run;
    }
    run.resamples++;
    // the violation is one of: both edges switched (incident pair), a stage-1
    // bichromatic cycle with no switch, or a half-monochromatic cycle whose
    // other half switched; its variables are exactly the coins of its edges
    for (int e : viol->edges) draw_coin(e);
    refresh();
  }
  run.status = ColoringStatus::Success;
  return run;
}

}  // namespace lll
