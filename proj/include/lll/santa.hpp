#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lll/rng.hpp"

namespace lll {
namespace santa {

// p groups of up to l children; every child owns a k-item set; every item
// appears in at most beta*l sets.
struct KLBSystem {
  int p = 0;
  int l = 0;
  int k = 0;
  int universe = 0;  // item ids are 0..universe-1
  std::vector<std::vector<std::vector<int>>> groups;  // group -> child -> sorted items

  int total_children() const;
  int max_item_occurrence() const;
  double beta() const;  // max occurrence / l
  void validate() const;
};

KLBSystem gen_system(int p, int l, int k, double beta_target, Rng& rng);

KLBSystem system_from_json(const std::string& text);
std::string system_to_json(const KLBSystem& s);

struct ReductionStep {
  enum class Kind { ReduceL, ReduceK };
  Kind kind = Kind::ReduceK;
  int k_before = 0, k_after = 0;
  int l_before = 0, l_after = 0;
  double beta_before = 0.0, beta_after = 0.0;
  double gamma_before = 0.0, gamma_after = 0.0;
  std::uint64_t resamples = 0;
  std::size_t collection_events = 0;  // enumerated B_i events (reduce-k only)
};

struct ReductionTrace {
  std::vector<ReductionStep> steps;
};

// Per-group subsampling down to floor(log2(l)^5) children; the per-item
// multiplicity events are kept quiet by resampling the selections of every
// group owning the offending item. l_target_override forces a smaller target
// (experiments only; the formula target exceeds l for every desk-scale l).
std::pair<KLBSystem, ReductionStep> reduce_l(const KLBSystem& s, Rng& rng,
                                             double cap_factor = 50.0,
                                             int l_target_override = -1);

// Half the items by fair coins; events are per-set survival deficits (B_1)
// and over-surviving tight connected collections (B_i); on success every set
// is truncated to its k' lowest surviving ids.
std::pair<KLBSystem, ReductionStep> reduce_k(const KLBSystem& s, double gamma, Rng& rng,
                                             double cap_factor = 50.0,
                                             std::size_t enum_budget = 2000000);

// k' = ceil((1 - log2(k)/sqrt(k)) k / 2)
int reduce_k_new_k(int k);

// gamma_after = delta' (k/2) / k' with delta' = gamma (1 + log2(k)/sqrt(gamma k))
double reduce_k_gamma_forward(double gamma, int k);
// inverse of the forward map (bisection; exact to ~1e-15)
double reduce_k_gamma_backward(double gamma_after, int k);

struct ChoiceFunction {
  std::vector<int> child;  // chosen child index per group
};

struct ItemAssignment {
  std::vector<std::vector<int>> items;  // per group, sorted
};

struct BaseCaseResult {
  ChoiceFunction f;
  ItemAssignment assignment;
  double gamma = 0.0;  // floor(k / max_occurrence) / k
};

// First child per group plus a max-flow assignment of q = floor(k/ceil(beta l))
// items each; feasible for any choice since each item absorbs at most
// ceil(beta l) memberships.
BaseCaseResult base_case(const KLBSystem& s);

struct GoodCheck {
  std::optional<ItemAssignment> assignment;
  std::int64_t flow_value = 0;
  std::int64_t target = 0;        // floor(gamma k) * p
  std::int64_t cut_capacity = 0;  // saturated cut witness when infeasible
};

// Source -> children (cap floor(gamma k)) -> owned items (cap 1) -> sink (cap 1);
// gamma-good iff the integral max flow saturates the source.
GoodCheck check_gamma_good(const KLBSystem& s, const ChoiceFunction& f, double gamma);

struct SolveResult {
  ChoiceFunction f;
  ItemAssignment assignment;
  ReductionTrace trace;
  double gamma_final = 0.0;
  int retries_used = 0;
};

// Reduce until l <= c or no reduction applies, solve the base case, reuse f
// on the original system with gamma mapped back through the trace chain;
// rerun with a fresh stream on the unlikely final-check failure.
SolveResult solve(const KLBSystem& s, std::uint64_t root_seed, int c = 8, int max_retries = 5,
                  double cap_factor = 50.0);

}  // namespace santa
}  // namespace lll
