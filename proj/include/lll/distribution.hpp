#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lll/mt.hpp"

namespace lll {

// Exact conditional probability Pr[B | no bad event] per monitor, by
// enumerating the whole product space. Throws SpaceTooLarge past max_outcomes
// and NoGoodAssignment when nothing avoids all events.
std::vector<double> brute_force_conditional(const VariableSpace& space, const EventSet& events,
                                            const std::vector<BadEvent>& monitors,
                                            std::uint64_t max_outcomes = (1ULL << 24));

// P(B) * prod_{C in G(B)} (1 - x(C))^-1, with G(B) taken against the events
// the algorithm actually runs on (restrict controls membership; member_id
// excludes B itself when it belongs to the set).
double distrib_bound(const BadEvent& monitor, const EventSet& events,
                     const std::vector<double>& x, int member_id = -1,
                     const std::vector<int>* restrict_to = nullptr);

struct MonitorStat {
  int monitor_id = 0;
  std::optional<double> exact;  // filled when the oracle ran
  double empirical = 0.0;       // ever-true frequency
  double bound = 0.0;
  std::uint64_t trials = 0;
  double ci_half_width = 0.0;   // 3 sqrt(f(1-f)/trials)
  bool pass = false;            // empirical <= bound + ci_half_width
};

struct DistributionReport {
  std::vector<MonitorStat> rows;
  std::uint64_t cap_exceeded_runs = 0;
};

struct TrialOutcome {
  std::vector<char> hit;  // per monitor: held at least once
  bool capped = false;
};

// One mt_core_run on stream `trial` of root_seed, with every monitor checked
// after the initial sample and after each resampling step.
TrialOutcome ever_true_trial(const VariableSpace& space, const EventSet& events,
                             const std::vector<int>& core,
                             const std::vector<BadEvent>& monitors,
                             const DependencyGraph& graph, const LLLParams& params,
                             std::uint64_t root_seed, std::uint64_t trial);

// Aggregates ever_true_trial over trials 0..trials-1. A monitor that is
// itself a member event must carry that event's id; external monitors need
// ids outside 0..m-1.
DistributionReport empirical_ever_true(const VariableSpace& space, const EventSet& events,
                                       const std::vector<int>& core,
                                       const std::vector<BadEvent>& monitors,
                                       std::uint64_t trials, const DependencyGraph& graph,
                                       const LLLParams& params, std::uint64_t root_seed,
                                       bool with_exact = false);

// Builds the report rows from per-monitor ever-true counts (the merge step
// for fanned-out trials; order-independent).
DistributionReport summarize_ever_true(const EventSet& events, const std::vector<int>& core,
                                       const std::vector<BadEvent>& monitors,
                                       const std::vector<std::uint64_t>& ever_true,
                                       std::uint64_t trials, std::uint64_t capped_runs,
                                       const LLLParams& params,
                                       const std::vector<double>* exact = nullptr);

std::string report_to_json(const DistributionReport& report);

}  // namespace lll
