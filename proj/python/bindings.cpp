#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lll/distribution.hpp"
#include "lll/errors.hpp"
#include "lll/instance_gen.hpp"
#include "lll/maxsat.hpp"
#include "lll/nonrep.hpp"
#include "lll/santa.hpp"

namespace py = pybind11;
using namespace lll;

namespace {

VariableSpace space_from(const std::vector<int>& domains,
                         const std::vector<std::vector<double>>& weights) {
  VariableSpace space;
  for (std::size_t i = 0; i < domains.size(); ++i) {
    Variable v;
    v.domain_size = domains[i];
    if (i < weights.size() && !weights[i].empty()) {
      v.weights = weights[i];
    } else {
      v.weights.assign(domains[i], 1.0 / domains[i]);
    }
    space.variables.push_back(std::move(v));
  }
  space.validate();
  return space;
}

EventSet events_from(const VariableSpace& space,
                     const std::vector<std::pair<std::vector<int>, std::vector<std::uint64_t>>>&
                         specs) {
  EventSet events;
  int id = 0;
  for (const auto& [vbl, minterms] : specs)
    events.events.push_back(minterm_event(id++, space, vbl, minterms));
  events.validate(space);
  return events;
}

py::dict run_report(const RunReport& report) {
  py::dict out;
  out["status"] = report.status == RunStatus::Success ? "success" : "cap-exceeded";
  out["resamples"] = report.resample_count;
  out["assignment"] = report.final_assignment.values;
  return out;
}

}  // namespace

PYBIND11_MODULE(_lllmt, m) {
  m.doc() = "Constructive Lovasz Local Lemma toolkit (Moser-Tardos resampling engine)";

  // ---- core resampling ------------------------------------------------------
  m.def(
      "mt_run",
      [](const std::vector<int>& domains,
         const std::vector<std::pair<std::vector<int>, std::vector<std::uint64_t>>>& events,
         const std::vector<double>& x, double eps, std::uint64_t seed, double cap_factor,
         bool override_check, const std::vector<std::vector<double>>& weights) {
        VariableSpace space = space_from(domains, weights);
        EventSet es = events_from(space, events);
        DependencyGraph graph = build_dependency_graph(space, es);
        LLLParams params = make_lll_params(es, graph, x, eps, cap_factor);
        Rng rng = make_rng(seed);
        MtOptions opts;
        opts.seed = derive_seed(seed, 0);
        opts.override_check = override_check;
        MtResult r = mt_run(space, es, graph, params, rng, opts);
        py::dict out = run_report(r.report);
        out["log"] = r.log.steps;
        return out;
      },
      py::arg("domains"), py::arg("events"), py::arg("x"), py::arg("eps") = 0.0,
      py::arg("seed") = 1, py::arg("cap_factor") = 50.0, py::arg("override_check") = false,
      py::arg("weights") = std::vector<std::vector<double>>{},
      "Moser-Tardos resampling over minterm events (vbl, bad local codes).");

  m.def(
      "check_lll",
      [](const std::vector<int>& domains,
         const std::vector<std::pair<std::vector<int>, std::vector<std::uint64_t>>>& events,
         const std::vector<double>& x, double eps,
         const std::vector<std::vector<double>>& weights) {
        VariableSpace space = space_from(domains, weights);
        EventSet es = events_from(space, events);
        DependencyGraph graph = build_dependency_graph(space, es);
        LLLParams params = make_lll_params(es, graph, x, eps);
        auto check = lll::check_lll(es, graph, params);
        py::dict out;
        out["ok"] = check.ok;
        out["margin"] = check.margin;
        out["delta"] = params.delta;
        out["T"] = params.big_t;
        return out;
      },
      py::arg("domains"), py::arg("events"), py::arg("x"), py::arg("eps") = 0.0,
      py::arg("weights") = std::vector<std::vector<double>>{});

  m.def(
      "conditional_probabilities",
      [](const std::vector<int>& domains,
         const std::vector<std::pair<std::vector<int>, std::vector<std::uint64_t>>>& events,
         const std::vector<std::pair<std::vector<int>, std::vector<std::uint64_t>>>& monitors,
         const std::vector<std::vector<double>>& weights) {
        VariableSpace space = space_from(domains, weights);
        EventSet es = events_from(space, events);
        std::vector<BadEvent> ms;
        int id = es.m();
        for (const auto& [vbl, codes] : monitors)
          ms.push_back(minterm_event(id++, space, vbl, codes));
        return brute_force_conditional(space, es, ms);
      },
      py::arg("domains"), py::arg("events"), py::arg("monitors"),
      py::arg("weights") = std::vector<std::vector<double>>{},
      "Exact LLL-distribution probabilities of the monitors.");

  // ---- maxsat -----------------------------------------------------------------
  m.def("lambda_bound", &maxsat::lambda_bound, py::arg("alpha"));

  m.def(
      "maxsat_solve",
      [](const std::string& dimacs, double alpha, std::uint64_t seed) {
        maxsat::CnfFormula f = maxsat::parse_dimacs(dimacs);
        Rng rng = make_rng(seed);
        maxsat::MaxSatReport rep = maxsat::solve_beyond_threshold(f, alpha, rng);
        py::dict out;
        out["violated_total"] = rep.violated.total;
        out["violated_core"] = rep.violated.core;
        out["violated_noncore"] = rep.violated.noncore;
        out["violated_eliminated"] = rep.violated.eliminated;
        out["fraction"] = rep.fraction_violated;
        out["lambda_mp"] = rep.lambda_mp;
        out["under_threshold"] = rep.under_threshold;
        std::vector<int> assignment(rep.assignment.begin(), rep.assignment.end());
        out["assignment"] = assignment;
        return out;
      },
      py::arg("dimacs"), py::arg("alpha"), py::arg("seed") = 1);

  m.def(
      "random_kcnf",
      [](int k, int n_vars, int m, std::uint64_t seed, int max_degree) {
        Rng rng = make_rng(seed);
        return maxsat::emit_dimacs(random_kcnf(k, n_vars, m, rng, max_degree));
      },
      py::arg("k"), py::arg("n_vars"), py::arg("m"), py::arg("seed") = 1,
      py::arg("max_degree") = -1);

  // ---- graph colorings ----------------------------------------------------------
  m.def(
      "girth",
      [](int n, const std::vector<std::pair<int, int>>& edges) {
        int g = girth(make_graph(n, edges));
        return g == kInfiniteGirth ? -1 : g;
      },
      py::arg("n"), py::arg("edges"), "Shortest cycle length; -1 for forests.");

  m.def(
      "vizing_color",
      [](int n, const std::vector<std::pair<int, int>>& edges) {
        return vizing_color(make_graph(n, edges)).color;
      },
      py::arg("n"), py::arg("edges"));

  m.def(
      "acyclic_color",
      [](int n, const std::vector<std::pair<int, int>>& edges, const std::string& variant,
         std::uint64_t seed, double cap_factor) {
        Graph g = make_graph(n, edges);
        Rng rng = make_rng(seed);
        AcyclicRun run = variant == "girth" ? mt_acyclic_girth(g, rng, cap_factor)
                                            : mt_acyclic_16(g, rng, cap_factor);
        py::dict out;
        out["ok"] = run.status == ColoringStatus::Success;
        out["palette"] = run.coloring.palette;
        out["resamples"] = run.resamples;
        out["colors"] = run.coloring.color;
        return out;
      },
      py::arg("n"), py::arg("edges"), py::arg("variant") = "16d", py::arg("seed") = 1,
      py::arg("cap_factor") = 50.0);

  m.def(
      "verify_acyclic",
      [](int n, const std::vector<std::pair<int, int>>& edges,
         const std::vector<std::uint64_t>& colors) {
        Graph g = make_graph(n, edges);
        EdgeColoring col{colors, 0};
        return !find_acyclic_violation(g, col).has_value();
      },
      py::arg("n"), py::arg("edges"), py::arg("colors"));

  m.def("is_squarefree",
        [](const std::vector<std::uint64_t>& seq) { return is_squarefree(seq); },
        py::arg("sequence"));

  m.def(
      "nonrep_color",
      [](int n, const std::vector<std::pair<int, int>>& edges, double eps, std::uint64_t seed,
         std::uint64_t palette_override, double cap_factor) {
        Graph g = make_graph(n, edges);
        Rng rng = make_rng(seed);
        std::optional<std::uint64_t> palette;
        if (palette_override > 0) palette = palette_override;
        NonRepRun run = mt_nonrep(g, eps, rng, palette, cap_factor);
        py::dict out;
        out["ok"] = run.status == ColoringStatus::Success;
        out["palette"] = run.config.palette;
        out["L"] = run.config.core_half_length;
        out["resamples"] = run.resamples;
        out["colors"] = run.coloring.color;
        return out;
      },
      py::arg("n"), py::arg("edges"), py::arg("eps") = 0.2, py::arg("seed") = 1,
      py::arg("palette_override") = 0, py::arg("cap_factor") = 50.0);

  m.def(
      "verify_nonrepetitive",
      [](int n, const std::vector<std::pair<int, int>>& edges,
         const std::vector<std::uint64_t>& colors) {
        Graph g = make_graph(n, edges);
        return verify_nonrepetitive_full(g, EdgeColoring{colors, 0});
      },
      py::arg("n"), py::arg("edges"), py::arg("colors"));

  // ---- santa -------------------------------------------------------------------
  m.def(
      "santa_gen",
      [](int p, int l, int k, double beta, std::uint64_t seed) {
        Rng rng = make_rng(seed);
        return santa::system_to_json(santa::gen_system(p, l, k, beta, rng));
      },
      py::arg("p"), py::arg("l"), py::arg("k"), py::arg("beta"), py::arg("seed") = 1);

  m.def(
      "santa_solve",
      [](const std::string& system_json, std::uint64_t seed, int c, int retries) {
        santa::KLBSystem sys = santa::system_from_json(system_json);
        santa::SolveResult r = santa::solve(sys, seed, c, retries);
        py::dict out;
        out["f"] = r.f.child;
        out["assignment"] = r.assignment.items;
        out["gamma_final"] = r.gamma_final;
        out["retries_used"] = r.retries_used;
        out["reductions"] = r.trace.steps.size();
        return out;
      },
      py::arg("system_json"), py::arg("seed") = 1, py::arg("c") = 8, py::arg("retries") = 5);

  py::register_exception<ConditionViolated>(m, "ConditionViolated");
  py::register_exception<CapExceededError>(m, "CapExceededError");
  py::register_exception<RetriesExhausted>(m, "RetriesExhaustedError");
}
