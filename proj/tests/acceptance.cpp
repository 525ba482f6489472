// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "lll/distribution.hpp"
#include "lll/errors.hpp"
#include "lll/instance_gen.hpp"
#include "lll/maxsat.hpp"
#include "lll/nonrep.hpp"
#include "lll/santa.hpp"
#include "lll/witness.hpp"

using namespace lll;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

GeneratedInstance tiny_binary_instance(Rng& rng, int max_events) {
  LllGenOptions opts;
  opts.n_vars = 5;
  opts.m_events = 3 + static_cast<int>(rng() % max_events);
  opts.max_domain = 2;
  opts.max_footprint = 2;
  opts.margin = 0.25;
  opts.pad_domain = 2;
  opts.max_total_vars = 12;
  return random_lll_instance(opts, rng);
}

// ---------------------------------------------------------------- criterion 1
Outcome oracle_dominance() {
  Outcome out;
  Rng rng = make_rng(101);
  int instances = 0;
  while (instances < 20) {
    GeneratedInstance inst = tiny_binary_instance(rng, 2);
    DependencyGraph graph = build_dependency_graph(inst.space, inst.events);
    LLLParams params = make_lll_params(inst.events, graph, inst.x);
    if (!check_lll(inst.events, graph, params).ok) {
      out.require(false, "generated instance fails check_lll");
      return out;
    }
    instances++;

    std::vector<int> core;
    for (int e = 0; e < inst.events.m(); ++e) core.push_back(e);

    std::vector<BadEvent> monitors;
    for (const auto& e : inst.events.events) monitors.push_back(e);
    for (int extra = 0; extra < 5; ++extra) {
      std::set<int> vars;
      int want = 1 + static_cast<int>(rng() % 2);
      while (static_cast<int>(vars.size()) < want)
        vars.insert(static_cast<int>(rng() % inst.space.n()));
      std::vector<int> vbl(vars.begin(), vars.end());
      std::uint64_t total = footprint_size(inst.space, vbl);
      std::uint64_t threshold = 1 + rng() % (total - 1);
      monitors.push_back(
          threshold_event(inst.events.m() + extra, inst.space, vbl, threshold));
    }

    auto exact = brute_force_conditional(inst.space, inst.events, monitors);
    for (std::size_t i = 0; i < monitors.size(); ++i) {
      double bound = distrib_bound(monitors[i], inst.events, params.x, monitors[i].id, &core);
      out.require(exact[i] <= bound + 1e-9, "exact conditional above the distribution bound");
    }

    auto report = empirical_ever_true(inst.space, inst.events, core, monitors, 10000, graph,
                                      params, derive_seed(102, instances));
    out.require(report.cap_exceeded_runs == 0, "cap exceeded during MT trials");
    for (const auto& row : report.rows)
      out.require(row.pass, "empirical ever-true frequency above bound + 3 sigma");
  }
  out.detail = "20 instances, zero bound violations";
  return out;
}

// ---------------------------------------------------------------- criterion 2
Outcome t_bound() {
  Outcome out;
  Rng rng = make_rng(201);
  int checked = 0;
  for (int round = 0; round < 1000; ++round) {
    LllGenOptions opts;
    if (round % 10 < 7) {
      opts.n_vars = 3 + static_cast<int>(rng() % 6);
      opts.m_events = 4 + static_cast<int>(rng() % 11);
      opts.max_domain = 4;
    } else {
      opts.n_vars = 6 + static_cast<int>(rng() % 4);
      opts.m_events = 20 + static_cast<int>(rng() % 21);
      opts.near_tight_clique = true;
    }
    GeneratedInstance inst = random_lll_instance(opts, rng);
    DependencyGraph graph = build_dependency_graph(inst.space, inst.events);
    LLLParams params = make_lll_params(inst.events, graph, inst.x);
    out.require(check_lll(inst.events, graph, params).ok, "instance fails check_lll");
    TBoundReport r = compute_t_bound(inst.space, inst.events, params);
    out.require(r.holds, "T exceeds n log2(1/delta)");
    out.require(r.per_variable_ok, "per-variable x sum exceeds log2(1/delta)");
    checked++;
  }
  std::ostringstream os;
  os << checked << "/1000 instances within both bounds";
  out.detail = os.str();
  return out;
}

// ---------------------------------------------------------------- criterion 3
Outcome markov_budget() {
  Outcome out;
  Rng gen = make_rng(301);
  maxsat::CnfFormula f = random_kcnf(6, 150, 60, gen, 22);

  VariableSpace space = VariableSpace::uniform_binary(f.n_vars);
  EventSet events;
  for (int c = 0; c < f.m(); ++c) {
    std::vector<int> vbl;
    for (int lit : f.clauses[c]) vbl.push_back(std::abs(lit) - 1);
    std::sort(vbl.begin(), vbl.end());
    std::vector<int> lits = f.clauses[c];
    BadEvent e;
    e.id = c;
    e.vbl = vbl;
    e.predicate = [vbl, lits](LocalValues values) {
      for (int lit : lits) {
        int var = std::abs(lit) - 1;
        std::size_t pos = std::lower_bound(vbl.begin(), vbl.end(), var) - vbl.begin();
        bool value = values[pos] != 0;
        if (lit > 0 ? value : !value) return false;
      }
      return true;
    };
    e.prob = std::exp2(-6);
    events.events.push_back(std::move(e));
  }
  DependencyGraph graph = build_dependency_graph(space, events);
  double x = std::numbers::e_v<double> / 64.0;
  LLLParams params = make_lll_params(events, graph, std::vector<double>(f.m(), x));
  out.require(check_lll(events, graph, params).ok, "6-SAT instance fails check_lll");
  double v1 = resample_bounds(params, space.n()).v1;

  const int seeds = 500;
  std::vector<std::uint64_t> counts;
  for (int s = 0; s < seeds; ++s) {
    Rng rng = make_rng(302, s);
    MtResult r = mt_run(space, events, graph, params, rng, {});
    out.require(r.report.status == RunStatus::Success, "run hit the cap");
    for (const auto& e : events.events)
      if (holds(e, r.report.final_assignment)) out.require(false, "clause left violated");
    counts.push_back(r.report.resample_count);
  }
  std::ostringstream os;
  os << "v1=" << v1;
  for (double lambda : {2.0, 4.0, 8.0}) {
    int over = 0;
    for (auto c : counts)
      if (static_cast<double>(c) > lambda * v1) over++;
    double fraction = static_cast<double>(over) / seeds;
    double allowed = 1.0 / lambda + testutil::three_sigma(1.0 / lambda, seeds);
    os << " overshoot(" << lambda << ")=" << fraction;
    out.require(fraction <= allowed, "Markov overshoot fraction too large");
  }
  out.detail = os.str();
  return out;
}

// ---------------------------------------------------------------- criterion 4
Outcome core_failure_bound() {
  Outcome out;
  Rng rng = make_rng(401);
  std::ostringstream os;
  int tested = 0;
  for (int round = 0; round < 24 && tested < 8; ++round) {
    GeneratedInstance inst = tiny_binary_instance(rng, 2);
    DependencyGraph graph = build_dependency_graph(inst.space, inst.events);
    LLLParams params = make_lll_params(inst.events, graph, inst.x);

    // median probability threshold; skip degenerate splits
    std::vector<double> probs;
    for (const auto& e : inst.events.events) probs.push_back(e.prob);
    std::sort(probs.begin(), probs.end());
    double threshold = probs[probs.size() / 2];
    CoreSubset core = select_core(inst.events, threshold, params.big_t);
    if (core.ids.empty() || static_cast<int>(core.ids.size()) == inst.events.m()) continue;
    tested++;

    double predicted = 0.0;
    std::vector<char> in_core(inst.events.m(), 0);
    for (int id : core.ids) in_core[id] = 1;
    for (const auto& e : inst.events.events)
      if (!in_core[e.id]) predicted += params.x[e.id];

    const std::uint64_t trials = 10000;
    std::uint64_t failures = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
      Rng run_rng = make_rng(402 + round, t);
      auto run = mt_core_run(inst.space, inst.events, core.ids, graph, params, run_rng, true, {});
      out.require(run.report.status == RunStatus::Success, "core run hit the cap");
      if (!run.violated_noncore.empty()) failures++;
    }
    double freq = static_cast<double>(failures) / trials;
    out.require(freq <= predicted + testutil::three_sigma(std::min(predicted, 1.0), trials),
                "non-core failure frequency above sum of x + 3 sigma");
    os << " " << freq << "<=" << predicted;
  }
  out.require(tested >= 5, "not enough instances with a proper core split");
  out.detail = "non-core failure vs bound:" + os.str();
  return out;
}

// ---------------------------------------------------------------- criterion 5
Outcome maxsat_beyond_threshold() {
  Outcome out;
  Rng gen = make_rng(501);
  maxsat::CnfFormula f = random_kcnf(8, 1000, 2000, gen, 186);
  auto degrees = maxsat::clause_degrees(f);
  int d = *std::max_element(degrees.begin(), degrees.end());
  out.require(d <= 186, "degree cap violated by the generator");

  const int seeds = 50;
  double total_violated = 0.0;
  for (int s = 0; s < seeds; ++s) {
    Rng rng = make_rng(502, s);
    maxsat::MaxSatReport rep = maxsat::solve_beyond_threshold(f, 2.0, rng);
    out.require(rep.violated.core == 0, "a core clause was left violated");
    total_violated += static_cast<double>(rep.violated.total);
  }
  double mean = total_violated / seeds;
  double budget = 1.25 * maxsat::lambda_bound(2.0) * f.m() * std::exp2(-8);
  out.require(mean <= budget, "mean violated count above 1.25 lambda m p");

  // under-threshold path: everything satisfied
  Rng gen2 = make_rng(503);
  maxsat::CnfFormula low = random_kcnf(8, 500, 300, gen2, 93);
  for (int s = 0; s < 3; ++s) {
    Rng rng = make_rng(504, s);
    maxsat::MaxSatReport rep = maxsat::solve_beyond_threshold(low, 1.0, rng);
    out.require(rep.violated.total == 0, "under-threshold instance not fully satisfied");
  }
  std::ostringstream os;
  os << "mean violated " << mean << " <= " << budget << " (d=" << d << ")";
  out.detail = os.str();
  return out;
}

// ---------------------------------------------------------------- criterion 6
Outcome acyclic_coloring() {
  Outcome out;
  for (int s = 0; s < 20; ++s) {
    Rng gen = make_rng(601, s);
    Graph g = random_graph_max_degree(200, 600, 10, gen);
    Rng rng = make_rng(602, s);
    AcyclicRun run = mt_acyclic_16(g, rng);
    out.require(run.status == ColoringStatus::Success, "16-Delta run hit the cap");
    out.require(run.coloring.palette == 16ULL * g.max_degree, "palette is not 16 Delta");
    out.require(!find_acyclic_violation(g, run.coloring).has_value(),
                "16-Delta output fails the verifier");
  }

  // verifier agreement against the exhaustive oracle on every subgraph of K5
  // with at most 8 edges
  Graph k5 = complete_graph(5);
  Rng color_rng = make_rng(603);
  int compared = 0;
  for (int mask = 1; mask < (1 << 10); ++mask) {
    if (__builtin_popcount(mask) > 8) continue;
    std::vector<std::pair<int, int>> edges;
    for (int b = 0; b < 10; ++b)
      if (mask & (1 << b)) edges.push_back(k5.edges[b]);
    Graph g = make_graph(5, edges);
    for (int trial = 0; trial < 2; ++trial) {
      int palette = 2 + static_cast<int>(color_rng() % 3);
      EdgeColoring col;
      col.palette = palette;
      col.color.resize(g.m());
      for (auto& c : col.color) c = color_rng() % palette;
      bool clean = !find_acyclic_violation(g, col).has_value();
      out.require(clean == testutil::acyclic_coloring_oracle(g, col.color),
                  "verifier disagrees with the exhaustive oracle");
      compared++;
    }
  }

  // high-girth variant on C64
  Graph c64 = cycle_graph(64);
  for (int s = 0; s < 20; ++s) {
    Rng rng = make_rng(604, s);
    AcyclicRun run = mt_acyclic_girth(c64, rng);
    out.require(run.status == ColoringStatus::Success, "girth run hit the cap");
    out.require(run.coloring.palette <= 4, "girth palette above Delta + 2");
    std::set<std::uint64_t> used(run.coloring.color.begin(), run.coloring.color.end());
    out.require(used.size() <= 4, "more than Delta + 2 colors used");
    out.require(!find_acyclic_violation(c64, run.coloring).has_value(),
                "girth output fails the verifier");
  }
  std::ostringstream os;
  os << "20/20 large runs, " << compared << " oracle comparisons, 20/20 C64 runs";
  out.detail = os.str();
  return out;
}

// ---------------------------------------------------------------- criterion 7
Outcome nonrepetitive_coloring() {
  Outcome out;
  Rng shape_rng = make_rng(701);
  int attempted = 0, verified = 0;
  for (int s = 0; s < 100; ++s) {
    Graph g;
    switch (s % 4) {
      case 0: g = random_graph_max_degree(12, 14, 4, shape_rng); break;
      case 1: g = random_graph_max_degree(18, 20, 3, shape_rng); break;
      case 2: g = cycle_graph(6 + (s % 12)); break;
      default: g = random_graph_max_degree(20, 22, 4, shape_rng); break;
    }
    attempted++;
    Rng rng = make_rng(702, s);
    NonRepRun run = mt_nonrep(g, 0.2, rng);
    if (run.status == ColoringStatus::Success && verify_nonrepetitive_full(g, run.coloring))
      verified++;
  }
  out.require(attempted == 100, "graph generation fell short");
  out.require(verified >= 95, "fewer than 95/100 runs fully verified");

  Graph p8 = path_graph(8);
  for (int s = 0; s < 100; ++s) {
    Rng rng = make_rng(703, s);
    NonRepRun run = mt_nonrep(p8, 0.2, rng, 4);
    out.require(run.status == ColoringStatus::Success, "P8 run with 4 colors hit the cap");
    out.require(verify_nonrepetitive_full(p8, run.coloring), "P8 coloring not squarefree");
  }
  std::ostringstream os;
  os << verified << "/100 full verifications, P8 100/100";
  out.detail = os.str();
  return out;
}

// ---------------------------------------------------------------- criterion 8
Outcome santa_pipeline() {
  Outcome out;
  int success = 0, total = 0;
  int flow_cross_checks = 0;
  for (int s = 0; s < 20; ++s) {
    Rng gen = make_rng(801, s);
    santa::KLBSystem sys;
    switch (s % 4) {
      case 0: sys = santa::gen_system(8 + s, 4, 64, 1.0, gen); break;
      case 1: sys = santa::gen_system(50, 8, 256, 3.0, gen); break;
      case 2: sys = santa::gen_system(12, 10, 64, 0.5, gen); break;
      default: sys = santa::gen_system(10, 64, 256, 1.5, gen); break;
    }
    total++;
    try {
      santa::SolveResult r = santa::solve(sys, derive_seed(802, s), 8, 2);
      success++;

      // hard assertions: quota, ownership, disjointness
      auto quota = static_cast<std::size_t>(std::floor(r.gamma_final * sys.k + 1e-9));
      std::set<int> used;
      for (int g = 0; g < sys.p; ++g) {
        out.require(r.assignment.items[g].size() >= quota, "assignment below quota");
        const auto& own = sys.groups[g].at(r.f.child[g]);
        for (int item : r.assignment.items[g]) {
          out.require(std::binary_search(own.begin(), own.end(), item),
                      "assigned item outside the chosen set");
          out.require(used.insert(item).second, "item assigned twice");
        }
      }

      // base-case systems: flow saturates floor(gamma k) p exactly
      if (r.trace.steps.empty()) {
        auto check = santa::check_gamma_good(sys, r.f, r.gamma_final);
        out.require(check.assignment.has_value() && check.flow_value == check.target,
                    "base-case flow does not saturate the target");
      }
    } catch (const RetriesExhausted&) {
    }
  }
  out.require(success >= 19, "more than one system needed over 2 retries");

  // independent Edmonds-Karp cross-check on small instances
  for (int s = 0; s < 5; ++s) {
    Rng gen = make_rng(803, s);
    santa::KLBSystem sys = santa::gen_system(6 + s, 3, 16, 1.5, gen);
    santa::BaseCaseResult base = santa::base_case(sys);
    int q = static_cast<int>(std::floor(base.gamma * sys.k + 1e-9));

    std::set<int> items;
    for (int g = 0; g < sys.p; ++g)
      for (int item : sys.groups[g][0]) items.insert(item);
    std::vector<int> item_list(items.begin(), items.end());
    int nodes = 2 + sys.p + static_cast<int>(item_list.size());
    out.require(nodes <= 1000, "cross-check instance too large");
    testutil::EkFlow ek(nodes);
    int source = 0, sink = nodes - 1;
    for (int g = 0; g < sys.p; ++g) {
      ek.add(source, 1 + g, q);
      for (int item : sys.groups[g][0]) {
        int idx = static_cast<int>(std::lower_bound(item_list.begin(), item_list.end(), item) -
                                   item_list.begin());
        ek.add(1 + g, 1 + sys.p + idx, 1);
      }
    }
    for (std::size_t i = 0; i < item_list.size(); ++i)
      ek.add(1 + sys.p + static_cast<int>(i), sink, 1);
    out.require(ek.run(source, sink) == static_cast<std::int64_t>(q) * sys.p,
                "independent flow disagrees with the pipeline");
    flow_cross_checks++;
  }
  std::ostringstream os;
  os << success << "/" << total << " systems solved, " << flow_cross_checks
     << " flow cross-checks";
  out.detail = os.str();
  return out;
}

// ---------------------------------------------------------------- criterion 9
Outcome witness_trees() {
  Outcome out;

  // properness of trees from random logs
  DependencyGraph tri;
  tri.adjacency = {{1, 2}, {0, 2}, {0, 1}};
  Rng rng = make_rng(901);
  for (int round = 0; round < 1000; ++round) {
    ResampleLog log;
    int len = 1 + static_cast<int>(rng() % 12);
    for (int i = 0; i < len; ++i) log.steps.push_back(static_cast<int>(rng() % 3));
    std::size_t t = rng() % log.steps.size();
    out.require(is_proper(build_witness_tree(log, t, tri), tri), "improper witness tree");
  }

  // fixed-tree occurrence on a three-event chain: A0 - A1 - A2
  VariableSpace space = VariableSpace::uniform_binary(6);
  EventSet events;
  events.events.push_back(threshold_event(0, space, {0, 1}, 1));
  events.events.push_back(threshold_event(1, space, {1, 2, 3}, 1));
  events.events.push_back(threshold_event(2, space, {3, 4}, 1));
  DependencyGraph graph = build_dependency_graph(space, events);
  LLLParams params = make_lll_params(events, graph, {0.4, 0.35, 0.4});
  out.require(check_lll(events, graph, params).ok, "3-event chain fails check_lll");

  WitnessTree target;
  target.nodes.push_back(WitnessNode{1, -1, 0, {}});
  target.nodes.push_back(WitnessNode{0, 0, 1, {}});
  target.nodes[0].children.push_back(1);
  double bound = tree_probability(target, events);

  const int runs = 100000;
  int occurrences = 0;
  for (int r = 0; r < runs; ++r) {
    Rng run_rng = make_rng(902, r);
    MtResult res = mt_run(space, events, graph, params, run_rng, {});
    if (tree_occurs(target, res.log, graph)) occurrences++;
  }
  double freq = static_cast<double>(occurrences) / runs;
  out.require(freq <= bound + testutil::three_sigma(bound, runs),
              "fixed-tree occurrence frequency above its probability product");
  std::ostringstream os;
  os << "1000 proper trees; occurrence " << freq << " <= " << bound << " + 3 sigma";
  out.detail = os.str();
  return out;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    Outcome (*run)();
  };
  const Entry entries[] = {
      {1, "oracle dominance (exact and empirical vs bound)", oracle_dominance},
      {2, "T <= n log2(1/delta) on 1000 feasible instances", t_bound},
      {3, "Markov resampling budget on symmetric 6-SAT", markov_budget},
      {4, "core-subset non-core failure bound", core_failure_bound},
      {5, "beyond-threshold MAX-8-SAT", maxsat_beyond_threshold},
      {6, "acyclic edge coloring (16 Delta and girth variants)", acyclic_coloring},
      {7, "non-repetitive coloring with full verification", nonrepetitive_coloring},
      {8, "santa (k,l,beta) pipeline", santa_pipeline},
      {9, "witness tree properness and occurrence bound", witness_trees},
  };

  int failures = 0;
  for (const auto& entry : entries) {
    auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = entry.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %d: %s (%.1fs) %s\n", outcome.pass ? "PASS" : "FAIL",
                entry.id, entry.name, secs, outcome.detail.c_str());
    std::fflush(stdout);
    if (!outcome.pass) failures++;
  }
  return failures;
}
