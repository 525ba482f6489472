#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lll/acyclic.hpp"
#include "lll/rng.hpp"
#include "lll/ugraph.hpp"

namespace lll {

struct NonRepConfig {
  double eps_prime = 0.0;
  double base_palette = 0.0;       // C = (2 e^16 + 1) Delta^2
  std::uint64_t palette = 0;       // ceil(C^(1/(1-eps'))), or the override
  int core_half_length = 1;        // L: monitored paths have length <= 2L
};

// L = ceil(3 log2(m) / (eps' max(1, log2 Delta))). Requires Delta >= 2
// unless a palette override is supplied.
NonRepConfig make_nonrep_config(const Graph& g, double eps_prime,
                                std::optional<std::uint64_t> palette_override = {});

// No contiguous block equals the block immediately after it.
bool is_squarefree(std::span<const std::uint64_t> seq);

// DFS over simple paths of even length 2i, i <= max_half_length, from every
// start vertex (each path taken once, from its smaller endpoint); first path
// whose color word reads xx, as edge ids in path order.
std::optional<std::vector<int>> find_repetitive_path(const Graph& g, const EdgeColoring& col,
                                                     int max_half_length);

struct NonRepRun {
  EdgeColoring coloring;
  NonRepConfig config;
  std::uint64_t resamples = 0;
  ColoringStatus status = ColoringStatus::Success;
};

NonRepRun mt_nonrep(const Graph& g, double eps_prime, Rng& rng,
                    std::optional<std::uint64_t> palette_override = {},
                    double cap_factor = 50.0);

// Exponential full verifier over all simple paths; graphs up to 24 edges.
bool verify_nonrepetitive_full(const Graph& g, const EdgeColoring& col);

// Diagnostic: a length-2i path event shares variables with at most
// 4 i j Delta^(2j) length-2j path events.
double nonrep_dependency_bound(int i, int j, int max_degree);

}  // namespace lll
