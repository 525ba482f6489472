#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "lll/rng.hpp"
#include "lll/ugraph.hpp"

namespace lll {

struct EdgeColoring {
  std::vector<std::uint64_t> color;  // per edge id
  std::uint64_t palette = 0;
};

struct AcyclicViolation {
  enum class Kind { IncidentPair, BichromaticCycle };
  Kind kind = Kind::IncidentPair;
  std::vector<int> edges;                 // the pair, or the cycle in order
  std::array<std::uint64_t, 2> colors{};  // one repeated color, or the two cycle colors
};

// Incident same-color pairs first (per vertex, edge-id order), then for each
// color pair in lexicographic order a cycle scan of the two-color subgraph.
// nullopt iff the coloring is proper and every cycle sees >= 3 colors.
std::optional<AcyclicViolation> find_acyclic_violation(const Graph& g, const EdgeColoring& col);

// Proper edge coloring with at most max_degree + 1 colors (fan + alternating
// path recoloring).
EdgeColoring vizing_color(const Graph& g);

enum class ColoringStatus { Success, CapExceeded };

struct AcyclicRun {
  EdgeColoring coloring;
  std::uint64_t resamples = 0;
  ColoringStatus status = ColoringStatus::Success;
};

// Resampling over a palette of exactly 16 * max_degree colors: redraw the
// violating edges until the verifier is silent.
AcyclicRun mt_acyclic_16(const Graph& g, Rng& rng, double cap_factor = 50.0);

// Two-stage variant for high-girth graphs: a proper (Delta+1)-coloring, then
// per-edge switch coins with probability 1/(32 Delta) moving edges to the
// extra color. Requires girth >= girth_coeff * Delta * log2(Delta + 1).
AcyclicRun mt_acyclic_girth(const Graph& g, Rng& rng, double cap_factor = 50.0,
                            double girth_coeff = 2.0);

}  // namespace lll
