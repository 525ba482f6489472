#include "lll/mt.hpp"

#include <chrono>
#include <cmath>

#include "lll/errors.hpp"

namespace lll {

namespace {

// 53-bit uniform in [0,1); one generator call per draw keeps replay portable.
inline double unit_double(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline int draw_value(const Variable& var, Rng& rng) {
  if (var.domain_size == 1) return 0;
  double u = unit_double(rng);
  double acc = 0.0;
  for (int v = 0; v + 1 < var.domain_size; ++v) {
    acc += var.weights[v];
    if (u < acc) return v;
  }
  return var.domain_size - 1;
}

}  // namespace

Assignment sample_assignment(const VariableSpace& space, Rng& rng) {
  Assignment a;
  a.values.resize(space.n());
  for (int i = 0; i < space.n(); ++i) a.values[i] = draw_value(space.variables[i], rng);
  return a;
}

void resample_variables(const VariableSpace& space, const std::vector<int>& vars,
                        Assignment& assignment, Rng& rng) {
  for (int v : vars) assignment.values[v] = draw_value(space.variables[v], rng);
}

std::optional<int> find_violated(const EventSet& events, const Assignment& assignment,
                                 Policy policy, Rng* rng, const std::vector<int>* subset) {
  auto check_one = [&](int id) { return holds(events.events[id], assignment); };

  if (policy == Policy::FirstIndex) {
    if (subset) {
      for (int id : *subset)
        if (check_one(id)) return id;
    } else {
      for (int id = 0; id < events.m(); ++id)
        if (check_one(id)) return id;
    }
    return std::nullopt;
  }

  std::vector<int> violated;
  if (subset) {
    for (int id : *subset)
      if (check_one(id)) violated.push_back(id);
  } else {
    for (int id = 0; id < events.m(); ++id)
      if (check_one(id)) violated.push_back(id);
  }
  if (violated.empty()) return std::nullopt;
  std::uniform_int_distribution<std::size_t> pick(0, violated.size() - 1);
  return violated[pick(*rng)];
}

namespace {

MtResult run_loop(const VariableSpace& space, const EventSet& events, const LLLParams& params,
                  Rng& rng, const MtOptions& opts, const std::vector<int>* subset) {
  auto start = std::chrono::steady_clock::now();
  std::uint64_t cap = resample_cap(params, space.n());

  MtResult out;
  out.log.seed = opts.seed;
  out.report.per_event_resamples.assign(events.m(), 0);

  Assignment a = sample_assignment(space, rng);
  if (opts.observer) opts.observer(a);

  while (true) {
    auto violated = find_violated(events, a, opts.policy, &rng, subset);
    if (!violated) {
      out.report.status = RunStatus::Success;
      break;
    }
    if (out.report.resample_count >= cap) {
      out.report.status = RunStatus::CapExceeded;
      break;
    }
    out.log.steps.push_back(*violated);
    out.report.per_event_resamples[*violated]++;
    out.report.resample_count++;
    resample_variables(space, events.events[*violated].vbl, a, rng);
    if (opts.observer) opts.observer(a);
  }

  out.report.final_assignment = std::move(a);
  out.report.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace

MtResult mt_run(const VariableSpace& space, const EventSet& events, const DependencyGraph& graph,
                const LLLParams& params, Rng& rng, const MtOptions& opts) {
  if (!opts.override_check) {
    if (!check_lll(events, graph, params).ok)
      throw ConditionViolated("LLL condition fails on the supplied event set");
  }
  return run_loop(space, events, params, rng, opts, nullptr);
}

CoreSubset select_core(const EventSet& events, double p_threshold, double big_t) {
  if (!(p_threshold >= 0.0 && p_threshold < 1.0))
    throw std::invalid_argument("p_threshold must lie in [0,1)");
  CoreSubset sel;
  sel.threshold = p_threshold;
  for (const auto& e : events.events)
    if (e.prob >= p_threshold) sel.ids.push_back(e.id);
  sel.size_bound = p_threshold > 0.0 ? big_t / p_threshold
                                     : static_cast<double>(events.m());
  return sel;
}

CoreRunResult mt_core_run(const VariableSpace& space, const EventSet& events,
                          const std::vector<int>& core, const DependencyGraph& graph,
                          const LLLParams& params, Rng& rng, bool post_check,
                          const MtOptions& opts) {
  if (!opts.override_check) {
    if (!check_lll_core(events, graph, params, core).ok)
      throw ConditionViolated("core-restricted LLL condition fails");
  }

  CoreRunResult out;
  std::vector<char> in_core(events.m(), 0);
  for (int id : core) in_core[id] = 1;
  for (const auto& e : events.events)
    if (!in_core[e.id]) out.predicted_failure_bound += params.x[e.id];

  MtResult mt = run_loop(space, events, params, rng, opts, &core);
  out.report = std::move(mt.report);
  out.log = std::move(mt.log);

  if (post_check && out.report.status == RunStatus::Success) {
    for (const auto& e : events.events)
      if (!in_core[e.id] && holds(e, out.report.final_assignment))
        out.violated_noncore.push_back(e.id);
  }
  return out;
}

bool replay_validates(const VariableSpace& space, const EventSet& events,
                      const DependencyGraph& graph, const LLLParams& params,
                      const ResampleLog& log, const MtOptions& opts) {
  (void)graph;
  (void)params;
  Rng rng(log.seed);  // log.seed is the exact generator seed of the run
  Assignment a = sample_assignment(space, rng);

  for (std::size_t t = 0; t < log.steps.size(); ++t) {
    auto violated = find_violated(events, a, opts.policy, &rng, nullptr);
    if (!violated || *violated != log.steps[t]) return false;
    const auto& e = events.events[log.steps[t]];
    if (!holds(e, a)) return false;
    Assignment before = a;
    resample_variables(space, e.vbl, a, rng);
    // locality: nothing outside vbl moved
    std::size_t vi = 0;
    for (int v = 0; v < space.n(); ++v) {
      bool in_vbl = vi < e.vbl.size() && e.vbl[vi] == v;
      if (in_vbl) { ++vi; continue; }
      if (a.values[v] != before.values[v]) return false;
    }
  }
  return true;
}

}  // namespace lll
