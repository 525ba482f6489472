#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "lll/params.hpp"

namespace lll {

enum class Policy { FirstIndex, UniformRandom };

enum class RunStatus { Success, CapExceeded };

struct ResampleLog {
  std::vector<int> steps;  // event id resampled at each step
  std::uint64_t seed = 0;
};

struct RunReport {
  RunStatus status = RunStatus::Success;
  std::uint64_t resample_count = 0;
  std::vector<std::uint64_t> per_event_resamples;
  Assignment final_assignment;
  double wall_ms = 0.0;
};

Assignment sample_assignment(const VariableSpace& space, Rng& rng);

void resample_variables(const VariableSpace& space, const std::vector<int>& vars,
                        Assignment& assignment, Rng& rng);

// First violated event id under the policy, or nullopt. subset restricts the
// search; rng is only consulted for UniformRandom.
std::optional<int> find_violated(const EventSet& events, const Assignment& assignment,
                                 Policy policy, Rng* rng = nullptr,
                                 const std::vector<int>* subset = nullptr);

struct MtOptions {
  Policy policy = Policy::FirstIndex;
  bool override_check = false;  // run even if the LLL condition fails (warn-only)
  std::uint64_t seed = 0;       // recorded in the log
  // Called on the initial sample and after every resampling step.
  std::function<void(const Assignment&)> observer;
};

struct MtResult {
  RunReport report;
  ResampleLog log;
};

// The resampling loop: sample everything, then repeatedly pick a violated
// event and redraw exactly its variables until none holds or the cap hits.
// Throws ConditionViolated if check_lll fails and override_check is off.
MtResult mt_run(const VariableSpace& space, const EventSet& events, const DependencyGraph& graph,
                const LLLParams& params, Rng& rng, const MtOptions& opts = {});

struct CoreSubset {
  std::vector<int> ids;     // events with prob >= threshold
  double threshold = 0.0;
  double size_bound = 0.0;  // T / threshold
};

CoreSubset select_core(const EventSet& events, double p_threshold, double big_t);

struct CoreRunResult {
  RunReport report;
  ResampleLog log;
  std::vector<int> violated_noncore;      // filled when post_check is on
  double predicted_failure_bound = 0.0;   // sum of x over non-core events
};

// MT restricted to the core; the precondition is the core-restricted LLL
// condition over the full event set.
CoreRunResult mt_core_run(const VariableSpace& space, const EventSet& events,
                          const std::vector<int>& core, const DependencyGraph& graph,
                          const LLLParams& params, Rng& rng, bool post_check,
                          const MtOptions& opts = {});

// Replays a log against the same seed and checks that every logged event was
// violated just before its resampling and that only its variables changed.
bool replay_validates(const VariableSpace& space, const EventSet& events,
                      const DependencyGraph& graph, const LLLParams& params,
                      const ResampleLog& log, const MtOptions& opts = {});

}  // namespace lll
