#include "lll/distribution.hpp"

#include <cmath>
#include <sstream>

#include "lll/errors.hpp"

namespace lll {

std::vector<double> brute_force_conditional(const VariableSpace& space, const EventSet& events,
                                            const std::vector<BadEvent>& monitors,
                                            std::uint64_t max_outcomes) {
  std::vector<int> all_vars(space.n());
  for (int i = 0; i < space.n(); ++i) all_vars[i] = i;
  std::uint64_t total = footprint_size(space, all_vars);
  if (total > max_outcomes) throw SpaceTooLarge("product space too large to enumerate");

  Assignment a;
  a.values.assign(space.n(), 0);
  double good_mass = 0.0;
  std::vector<double> monitor_mass(monitors.size(), 0.0);

  for (std::uint64_t code = 0; code < total; ++code) {
    double w = 1.0;
    for (int v = 0; v < space.n(); ++v) w *= space.variables[v].weights[a.values[v]];
    if (w > 0.0) {
      bool good = true;
      for (const auto& e : events.events)
        if (holds(e, a)) { good = false; break; }
      if (good) {
        good_mass += w;
        for (std::size_t i = 0; i < monitors.size(); ++i)
          if (holds(monitors[i], a)) monitor_mass[i] += w;
      }
    }
    for (int v = 0; v < space.n(); ++v) {
      if (++a.values[v] < space.variables[v].domain_size) break;
      a.values[v] = 0;
    }
  }

  if (good_mass <= 0.0) throw NoGoodAssignment("no assignment avoids every event");
  for (auto& m : monitor_mass) m /= good_mass;
  return monitor_mass;
}

double distrib_bound(const BadEvent& monitor, const EventSet& events,
                     const std::vector<double>& x, int member_id,
                     const std::vector<int>* restrict_to) {
  std::vector<char> allowed;
  if (restrict_to) {
    allowed.assign(events.m(), 0);
    for (int id : *restrict_to) allowed[id] = 1;
  }
  double log_inv = 0.0;
  for (int id : footprint_neighbors(events, monitor.vbl, member_id)) {
    if (restrict_to && !allowed[id]) continue;
    log_inv -= std::log1p(-x[id]);
  }
  return monitor.prob * std::exp(log_inv);
}

TrialOutcome ever_true_trial(const VariableSpace& space, const EventSet& events,
                             const std::vector<int>& core,
                             const std::vector<BadEvent>& monitors,
                             const DependencyGraph& graph, const LLLParams& params,
                             std::uint64_t root_seed, std::uint64_t trial) {
  TrialOutcome out;
  out.hit.assign(monitors.size(), 0);
  Rng rng = make_rng(root_seed, trial);
  MtOptions opts;
  opts.seed = derive_seed(root_seed, trial);
  opts.observer = [&](const Assignment& a) {
    for (std::size_t i = 0; i < monitors.size(); ++i)
      if (!out.hit[i] && holds(monitors[i], a)) out.hit[i] = 1;
  };
  auto run = mt_core_run(space, events, core, graph, params, rng, false, opts);
  out.capped = run.report.status == RunStatus::CapExceeded;
  return out;
}

DistributionReport summarize_ever_true(const EventSet& events, const std::vector<int>& core,
                                       const std::vector<BadEvent>& monitors,
                                       const std::vector<std::uint64_t>& ever_true,
                                       std::uint64_t trials, std::uint64_t capped_runs,
                                       const LLLParams& params,
                                       const std::vector<double>* exact) {
  DistributionReport report;
  report.cap_exceeded_runs = capped_runs;
  std::uint64_t counted = trials - capped_runs;
  for (std::size_t i = 0; i < monitors.size(); ++i) {
    MonitorStat s;
    s.monitor_id = monitors[i].id;
    s.trials = counted;
    s.empirical = counted > 0 ? static_cast<double>(ever_true[i]) / counted : 0.0;
    s.bound = distrib_bound(monitors[i], events, params.x, monitors[i].id, &core);
    s.ci_half_width =
        counted > 0 ? 3.0 * std::sqrt(s.empirical * (1.0 - s.empirical) / counted) : 0.0;
    s.pass = s.empirical <= s.bound + s.ci_half_width;
    if (exact) s.exact = (*exact)[i];
    report.rows.push_back(s);
  }
  return report;
}

DistributionReport empirical_ever_true(const VariableSpace& space, const EventSet& events,
                                       const std::vector<int>& core,
                                       const std::vector<BadEvent>& monitors,
                                       std::uint64_t trials, const DependencyGraph& graph,
                                       const LLLParams& params, std::uint64_t root_seed,
                                       bool with_exact) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");

  std::vector<std::uint64_t> ever_true(monitors.size(), 0);
  std::uint64_t capped = 0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    TrialOutcome one = ever_true_trial(space, events, core, monitors, graph, params,
                                       root_seed, trial);
    if (one.capped) {
      capped++;
      continue;
    }
    for (std::size_t i = 0; i < monitors.size(); ++i)
      if (one.hit[i]) ever_true[i]++;
  }

  std::vector<double> exact;
  if (with_exact) exact = brute_force_conditional(space, events, monitors);
  return summarize_ever_true(events, core, monitors, ever_true, trials, capped, params,
                             with_exact ? &exact : nullptr);
}

std::string report_to_json(const DistributionReport& report) {
  std::ostringstream os;
  os.precision(17);
  os << "{\"schema\":1,\"cap_exceeded_runs\":" << report.cap_exceeded_runs << ",\"monitors\":[";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& s = report.rows[i];
    if (i) os << ",";
    os << "{\"monitor\":" << s.monitor_id << ",\"exact\":";
    if (s.exact) os << *s.exact; else os << "null";
    os << ",\"empirical\":" << s.empirical << ",\"bound\":" << s.bound
       << ",\"trials\":" << s.trials << ",\"ci\":" << s.ci_half_width
       << ",\"pass\":" << (s.pass ? "true" : "false") << "}";
  }
  os << "]}";
  return os.str();
}

}  // namespace lll
