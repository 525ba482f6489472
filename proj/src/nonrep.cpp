#include "lll/nonrep.hpp"

#include <algorithm>
#include <cmath>

#include "lll/errors.hpp"

namespace lll {

NonRepConfig make_nonrep_config(const Graph& g, double eps_prime,
                                std::optional<std::uint64_t> palette_override) {
  if (!(eps_prime > 0.0 && eps_prime < 1.0))
    throw std::invalid_argument("eps_prime must lie in (0,1)");
  if (g.max_degree < 2 && !palette_override)
    throw std::invalid_argument("Delta < 2 needs a palette override");

  NonRepConfig cfg;
  cfg.eps_prime = eps_prime;
  double delta = static_cast<double>(std::max(g.max_degree, 1));
  cfg.base_palette = (2.0 * std::exp(16.0) + 1.0) * delta * delta;
  if (palette_override) {
    cfg.palette = *palette_override;
    if (cfg.palette < 1) throw std::invalid_argument("palette override must be >= 1");
  } else {
    cfg.palette = static_cast<std::uint64_t>(
        std::ceil(std::pow(cfg.base_palette, 1.0 / (1.0 - eps_prime))));
  }
  double m = std::max(g.m(), 2);
  cfg.core_half_length = std::max(
      1, static_cast<int>(std::ceil(3.0 * std::log2(m) /
                                    (eps_prime * std::max(1.0, std::log2(delta))))));
  return cfg;
}

bool is_squarefree(std::span<const std::uint64_t> seq) {
  std::size_t n = seq.size();
  for (std::size_t half = 1; 2 * half <= n; ++half)
    for (std::size_t start = 0; start + 2 * half <= n; ++start) {
      bool square = true;
      for (std::size_t i = 0; i < half; ++i)
        if (seq[start + i] != seq[start + half + i]) { square = false; break; }
      if (square) return false;
    }
  return true;
}

namespace {

struct PathSearch {
  const Graph& g;
  const EdgeColoring& col;
  int max_edges;           // 2 * half-length bound
  bool require_canonical;  // count each path once, from its smaller endpoint
  std::vector<char> on_path;
  std::vector<int> edge_stack;
  std::vector<std::uint64_t> color_stack;
  int start = 0;
  std::vector<int> found;

  PathSearch(const Graph& g_, const EdgeColoring& col_, int max_edges_)
      : g(g_), col(col_), max_edges(max_edges_), require_canonical(true), on_path(g_.n, 0) {}

  // word of the current path is xx?
  bool current_is_square() const {
    std::size_t len = color_stack.size();
    if (len % 2 != 0 || len == 0) return false;
    std::size_t half = len / 2;
    for (std::size_t i = 0; i < half; ++i)
      if (color_stack[i] != color_stack[half + i]) return false;
    return true;
  }

  bool dfs(int v) {
    if (static_cast<int>(edge_stack.size()) >= max_edges) return false;
    for (auto [w, e] : g.adj[v]) {
      if (on_path[w]) continue;
      on_path[w] = 1;
      edge_stack.push_back(e);
      color_stack.push_back(col.color[e]);
      bool canonical = !require_canonical || start < w;
      if (canonical && current_is_square()) {
        found = edge_stack;
        return true;
      }
      if (dfs(w)) return true;
      on_path[w] = 0;
      edge_stack.pop_back();
      color_stack.pop_back();
    }
    return false;
  }

  std::optional<std::vector<int>> run() {
    for (start = 0; start < g.n; ++start) {
      std::fill(on_path.begin(), on_path.end(), 0);
      on_path[start] = 1;
      edge_stack.clear();
      color_stack.clear();
      if (dfs(start)) return found;
    }
    return std::nullopt;
  }
};

}  // namespace

std::optional<std::vector<int>> find_repetitive_path(const Graph& g, const EdgeColoring& col,
                                                     int max_half_length) {
  if (max_half_length < 1) throw std::invalid_argument("max_half_length must be >= 1");
  int max_edges = std::min(2 * max_half_length, g.m());
  PathSearch search(g, col, max_edges);
  return search.run();
}

NonRepRun mt_nonrep(const Graph& g, double eps_prime, Rng& rng,
                    std::optional<std::uint64_t> palette_override, double cap_factor) {
  NonRepRun run;
  run.config = make_nonrep_config(g, eps_prime, palette_override);

  run.coloring.palette = run.config.palette;
  run.coloring.color.resize(g.m());
  for (auto& c : run.coloring.color) c = rng() % run.config.palette;

  // budget shape from x_i = 1/(2^i Delta^(2i)):
  // log2(1/x_L) = L (1 + 2 log2 Delta)
  double delta = std::max(g.max_degree, 2);
  double per_event = run.config.core_half_length * (1.0 + 2.0 * std::log2(delta));
  double cap_d = std::ceil(cap_factor * std::max(1.0, g.m() * per_event));
  std::uint64_t cap = cap_d >= 9e18 ? UINT64_MAX : static_cast<std::uint64_t>(cap_d);

  while (auto path = find_repetitive_path(g, run.coloring, run.config.core_half_length)) {
    if (run.resamples >= cap) {
      run.status = ColoringStatus::CapExceeded;
      return run;
    }
    run.resamples++;
    for (int e : *path) run.coloring.color[e] = rng() % run.config.palette;
  }
  run.status = ColoringStatus::Success;
  return run;
}

bool verify_nonrepetitive_full(const Graph& g, const EdgeColoring& col) {
  if (g.m() > 24) throw GraphTooLarge("full verification is limited to 24 edges");
  PathSearch search(g, col, g.m());
  return !search.run().has_value();
}

double nonrep_dependency_bound(int i, int j, int max_degree) {
  return 4.0 * i * j * std::pow(static_cast<double>(max_degree), 2.0 * j);
}

}  // namespace lll
