#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "lll/distribution.hpp"
#include "lll/errors.hpp"
#include "lll/instance_gen.hpp"
#include "lll/maxsat.hpp"
#include "lll/nonrep.hpp"
#include "lll/santa.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitCap = 2;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("LLLMT_SEED")) return std::strtoull(env, nullptr, 10);
  return 1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw lll::ParseError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit(const json& report, const std::string& out_path) {
  std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw lll::ParseError("cannot write " + out_path);
    out << text;
  }
}

// Instance file: {"variables":[{"domain":d,"weights":[...]}...],
//   "events":[{"vbl":[...],"threshold":t} | {"vbl":[...],"minterms":[...]}...],
//   "x":[...], "eps":e, "core":[ids]|"all",
//   "monitors":[event specs with optional "id"]}
struct DistlabInstance {
  lll::VariableSpace space;
  lll::EventSet events;
  std::vector<double> x;
  double eps = 0.0;
  std::vector<int> core;
  std::vector<lll::BadEvent> monitors;
};

lll::BadEvent event_from_json(const json& spec, int id, const lll::VariableSpace& space) {
  std::vector<int> vbl = spec.at("vbl").get<std::vector<int>>();
  if (spec.contains("threshold"))
    return lll::threshold_event(id, space, vbl, spec.at("threshold").get<std::uint64_t>());
  return lll::minterm_event(id, space, vbl,
                            spec.at("minterms").get<std::vector<std::uint64_t>>());
}

DistlabInstance load_instance(const std::string& path) {
  json j = json::parse(slurp(path));
  DistlabInstance inst;
  for (const auto& v : j.at("variables")) {
    lll::Variable var;
    var.domain_size = v.at("domain").get<int>();
    if (v.contains("weights")) {
      var.weights = v.at("weights").get<std::vector<double>>();
    } else {
      var.weights.assign(var.domain_size, 1.0 / var.domain_size);
    }
    inst.space.variables.push_back(std::move(var));
  }
  inst.space.validate();

  int id = 0;
  for (const auto& spec : j.at("events"))
    inst.events.events.push_back(event_from_json(spec, id++, inst.space));
  inst.events.validate(inst.space);

  inst.x = j.at("x").get<std::vector<double>>();
  inst.eps = j.value("eps", 0.0);
  if (!j.contains("core") || j.at("core").is_string()) {
    for (int e = 0; e < inst.events.m(); ++e) inst.core.push_back(e);
  } else {
    inst.core = j.at("core").get<std::vector<int>>();
  }
  int monitor_id = inst.events.m();
  for (const auto& spec : j.value("monitors", json::array())) {
    int mid = spec.contains("member") ? spec.at("member").get<int>() : monitor_id++;
    inst.monitors.push_back(event_from_json(spec, mid, inst.space));
  }
  return inst;
}

json run_config_json(const std::string& subcommand, std::uint64_t seed, const json& extra) {
  json cfg;
  cfg["subcommand"] = subcommand;
  cfg["seed"] = seed;
  for (auto it = extra.begin(); it != extra.end(); ++it) cfg[it.key()] = it.value();
  return cfg;
}

// --- subcommand runners -----------------------------------------------------

int run_gen(const std::string& kind, std::uint64_t seed, const std::string& out,
            int k, int vars, int clauses, int max_degree,
            int vertices, int edges,
            int p, int l, int kk, double beta) {
  lll::Rng rng = lll::make_rng(seed);
  if (kind == "cnf") {
    auto f = lll::random_kcnf(k, vars, clauses, rng, max_degree);
    std::string text = lll::maxsat::emit_dimacs(f);
    if (out.empty()) std::cout << text;
    else std::ofstream(out) << text;
    return kExitOk;
  }
  if (kind == "graph") {
    auto g = lll::random_graph_max_degree(vertices, edges, max_degree < 0 ? vertices : max_degree,
                                          rng);
    std::string text = lll::write_edge_list(g);
    if (out.empty()) std::cout << text;
    else std::ofstream(out) << text;
    return kExitOk;
  }
  if (kind == "klb") {
    auto s = lll::santa::gen_system(p, l, kk, beta, rng);
    std::string text = lll::santa::system_to_json(s) + "\n";
    if (out.empty()) std::cout << text;
    else std::ofstream(out) << text;
    return kExitOk;
  }
  std::cerr << "unknown gen kind: " << kind << "\n";
  return kExitInput;
}

int run_check(const std::string& cnf_path, const std::string& assignment_path,
              const std::string& graph_path, const std::string& coloring_path,
              const std::string& mode, std::uint64_t seed, const std::string& out) {
  json report;
  report["schema"] = 1;
  if (!cnf_path.empty()) {
    auto f = lll::maxsat::parse_dimacs(slurp(cnf_path));
    lll::maxsat::SatAssignment a;
    std::istringstream in(slurp(assignment_path));
    int bit;
    while (in >> bit) a.push_back(static_cast<std::uint8_t>(bit != 0));
    auto counts = lll::maxsat::count_violated(f, a);
    report["config"] = run_config_json("check", seed, {{"cnf", cnf_path}});
    report["violated"] = counts.total;
    report["clauses"] = f.m();
    emit(report, out);
    return kExitOk;
  }
  auto g = lll::read_edge_list(slurp(graph_path));
  lll::EdgeColoring col;
  std::istringstream in(slurp(coloring_path));
  int edge;
  std::uint64_t color;
  col.color.assign(g.m(), 0);
  while (in >> edge >> color) {
    col.color.at(edge) = color;
    col.palette = std::max(col.palette, color + 1);
  }
  report["config"] = run_config_json("check", seed, {{"graph", graph_path}, {"mode", mode}});
  if (mode == "acyclic") {
    auto viol = lll::find_acyclic_violation(g, col);
    report["pass"] = !viol.has_value();
    if (viol) {
      report["violation"]["kind"] =
          viol->kind == lll::AcyclicViolation::Kind::IncidentPair ? "incident-pair"
                                                                  : "bichromatic-cycle";
      report["violation"]["edges"] = viol->edges;
    }
  } else if (mode == "nonrep") {
    report["pass"] = lll::verify_nonrepetitive_full(g, col);
  } else {
    std::cerr << "unknown check mode: " << mode << "\n";
    return kExitInput;
  }
  emit(report, out);
  return kExitOk;
}

int run_distlab(const std::string& instance_path, std::uint64_t seed, std::uint64_t trials,
                bool exact, int parallel, const std::string& out, bool timing) {
  auto t0 = std::chrono::steady_clock::now();
  DistlabInstance inst = load_instance(instance_path);
  auto graph = lll::build_dependency_graph(inst.space, inst.events);
  auto params = lll::make_lll_params(inst.events, graph, inst.x, inst.eps);

  // monitors also cover every event, per the distribution-lab contract
  std::vector<lll::BadEvent> monitors;
  for (const auto& e : inst.events.events) monitors.push_back(e);
  for (const auto& m : inst.monitors) monitors.push_back(m);

  lll::DistributionReport combined;
  if (parallel <= 1) {
    combined = lll::empirical_ever_true(inst.space, inst.events, inst.core, monitors, trials,
                                        graph, params, seed, exact);
  } else {
    // fan the serial trial streams across workers; worker w owns trials
    // w, w+parallel, ... so the merged counts match a serial run exactly
    std::vector<std::vector<std::uint64_t>> ever(parallel,
                                                 std::vector<std::uint64_t>(monitors.size(), 0));
    std::vector<std::uint64_t> capped(parallel, 0);
    std::vector<std::thread> workers;
    for (int w = 0; w < parallel; ++w) {
      workers.emplace_back([&, w]() {
        for (std::uint64_t t = w; t < trials; t += parallel) {
          auto one = lll::ever_true_trial(inst.space, inst.events, inst.core, monitors, graph,
                                          params, seed, t);
          if (one.capped) {
            capped[w]++;
            continue;
          }
          for (std::size_t i = 0; i < monitors.size(); ++i)
            if (one.hit[i]) ever[w][i]++;
        }
      });
    }
    for (auto& th : workers) th.join();
    std::vector<std::uint64_t> total(monitors.size(), 0);
    std::uint64_t capped_total = 0;
    for (int w = 0; w < parallel; ++w) {
      capped_total += capped[w];
      for (std::size_t i = 0; i < monitors.size(); ++i) total[i] += ever[w][i];
    }
    std::vector<double> exact_vals;
    if (exact) exact_vals = lll::brute_force_conditional(inst.space, inst.events, monitors);
    combined = lll::summarize_ever_true(inst.events, inst.core, monitors, total, trials,
                                        capped_total, params, exact ? &exact_vals : nullptr);
  }

  json report = json::parse(lll::report_to_json(combined));
  report["config"] = run_config_json(
      "distlab", seed,
      {{"instance", instance_path}, {"trials", trials}, {"exact", exact}});
  bool all_pass = true;
  for (const auto& row : combined.rows) all_pass = all_pass && row.pass;
  report["all_pass"] = all_pass;
  if (timing)
    report["timing_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  emit(report, out);
  return kExitOk;
}

int run_maxsat(const std::string& input, double alpha, std::uint64_t seed, int trials,
               const std::string& out, bool timing) {
  auto t0 = std::chrono::steady_clock::now();
  auto f = lll::maxsat::parse_dimacs(slurp(input));
  json runs = json::array();
  double total_fraction = 0.0;
  int worst_core = 0;
  for (int t = 0; t < trials; ++t) {
    lll::Rng rng = lll::make_rng(seed, t);
    auto rep = lll::maxsat::solve_beyond_threshold(f, alpha, rng);
    json r;
    r["violated_total"] = rep.violated.total;
    r["violated_core"] = rep.violated.core;
    r["violated_noncore"] = rep.violated.noncore;
    r["violated_eliminated"] = rep.violated.eliminated;
    r["fraction"] = rep.fraction_violated;
    r["core_size"] = rep.selection.core.size();
    r["eliminated_size"] = rep.selection.eliminated.size();
    runs.push_back(r);
    total_fraction += rep.fraction_violated;
    worst_core = std::max(worst_core, rep.violated.core);
  }
  json report;
  report["schema"] = 1;
  report["config"] = run_config_json(
      "maxsat", seed, {{"input", input}, {"alpha", alpha}, {"trials", trials}});
  report["lambda"] = lll::maxsat::lambda_bound(alpha);
  report["lambda_mp"] =
      lll::maxsat::lambda_bound(alpha) * f.m() * std::exp2(-static_cast<double>(f.k));
  report["mean_fraction"] = trials > 0 ? total_fraction / trials : 0.0;
  report["worst_violated_core"] = worst_core;
  report["runs"] = runs;
  if (timing)
    report["timing_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  emit(report, out);
  return kExitOk;
}

int run_acyclic(const std::string& input, std::uint64_t seed, const std::string& variant,
                double cap_factor, const std::string& out, const std::string& coloring_out,
                bool timing) {
  auto t0 = std::chrono::steady_clock::now();
  auto g = lll::read_edge_list(slurp(input));
  lll::Rng rng = lll::make_rng(seed);
  lll::AcyclicRun run = variant == "girth" ? lll::mt_acyclic_girth(g, rng, cap_factor)
                                           : lll::mt_acyclic_16(g, rng, cap_factor);
  json report;
  report["schema"] = 1;
  report["config"] = run_config_json(
      "acyclic", seed, {{"input", input}, {"colors", variant}, {"cap_factor", cap_factor}});
  report["palette"] = run.coloring.palette;
  report["resamples"] = run.resamples;
  report["status"] = run.status == lll::ColoringStatus::Success ? "success" : "cap-exceeded";
  report["verifier_pass"] = run.status == lll::ColoringStatus::Success &&
                            !lll::find_acyclic_violation(g, run.coloring).has_value();
  report["coloring"] = run.coloring.color;
  if (timing)
    report["timing_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (!coloring_out.empty()) {
    std::ofstream cf(coloring_out);
    for (int e = 0; e < g.m(); ++e) cf << e << " " << run.coloring.color[e] << "\n";
  }
  emit(report, out);
  return run.status == lll::ColoringStatus::Success ? kExitOk : kExitCap;
}

int run_nonrep(const std::string& input, double eps, std::uint64_t seed,
               std::uint64_t palette_override, double cap_factor, const std::string& out,
               bool timing) {
  auto t0 = std::chrono::steady_clock::now();
  auto g = lll::read_edge_list(slurp(input));
  lll::Rng rng = lll::make_rng(seed);
  std::optional<std::uint64_t> override;
  if (palette_override > 0) override = palette_override;
  auto run = lll::mt_nonrep(g, eps, rng, override, cap_factor);
  json report;
  report["schema"] = 1;
  report["config"] = run_config_json(
      "nonrep", seed,
      {{"input", input}, {"eps", eps}, {"palette_override", palette_override}});
  report["palette"] = run.config.palette;
  report["L"] = run.config.core_half_length;
  report["resamples"] = run.resamples;
  report["status"] = run.status == lll::ColoringStatus::Success ? "success" : "cap-exceeded";
  report["coloring"] = run.coloring.color;
  if (g.m() <= 24 && run.status == lll::ColoringStatus::Success)
    report["full_verifier_pass"] = lll::verify_nonrepetitive_full(g, run.coloring);
  if (timing)
    report["timing_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  emit(report, out);
  return run.status == lll::ColoringStatus::Success ? kExitOk : kExitCap;
}

int run_santa(const std::string& input, std::uint64_t seed, int c, int retries,
              const std::string& out, bool timing) {
  auto t0 = std::chrono::steady_clock::now();
  auto s = lll::santa::system_from_json(slurp(input));
  auto result = lll::santa::solve(s, seed, c, retries);
  json report;
  report["schema"] = 1;
  report["config"] = run_config_json("santa", seed,
                                     {{"input", input}, {"c", c}, {"retries", retries}});
  report["f"] = result.f.child;
  report["assignment"] = result.assignment.items;
  report["gamma_final"] = result.gamma_final;
  report["retries_used"] = result.retries_used;
  json trace = json::array();
  for (const auto& st : result.trace.steps) {
    json one;
    one["kind"] = st.kind == lll::santa::ReductionStep::Kind::ReduceL ? "reduce-l" : "reduce-k";
    one["k_before"] = st.k_before;
    one["k_after"] = st.k_after;
    one["l_before"] = st.l_before;
    one["l_after"] = st.l_after;
    one["beta_before"] = st.beta_before;
    one["beta_after"] = st.beta_after;
    one["gamma_before"] = st.gamma_before;
    one["gamma_after"] = st.gamma_after;
    one["resamples"] = st.resamples;
    trace.push_back(one);
  }
  report["trace"] = trace;
  if (timing)
    report["timing_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  emit(report, out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constructive Lovasz Local Lemma toolkit"};
  app.require_subcommand(1);

  std::uint64_t seed = default_seed();
  std::string out;
  bool timing = false;
  app.add_option("--seed", seed, "root seed (env LLLMT_SEED)")->capture_default_str();
  app.add_option("--out", out, "write the JSON report here instead of stdout");
  app.add_flag("--timing", timing, "include wall-clock timings in reports");

  auto* gen = app.add_subcommand("gen", "generate instances");
  gen->fallthrough();
  std::string gen_kind = "cnf";
  int gen_k = 3, gen_vars = 20, gen_clauses = 40, gen_maxdeg = -1;
  int gen_vertices = 20, gen_edges = 30;
  int gen_p = 4, gen_l = 4, gen_kk = 16;
  double gen_beta = 2.0;
  gen->add_option("--kind", gen_kind, "cnf | graph | klb")->capture_default_str();
  gen->add_option("--k", gen_k, "clause width");
  gen->add_option("--vars", gen_vars, "variable count");
  gen->add_option("--clauses", gen_clauses, "clause count");
  gen->add_option("--max-degree", gen_maxdeg, "degree cap");
  gen->add_option("--vertices", gen_vertices, "vertex count");
  gen->add_option("--edges", gen_edges, "edge count");
  gen->add_option("--p", gen_p, "group count");
  gen->add_option("--l", gen_l, "children per group");
  gen->add_option("--set-size", gen_kk, "items per child set");
  gen->add_option("--beta", gen_beta, "occurrence factor");

  auto* check = app.add_subcommand("check", "verify an assignment or coloring");
  check->fallthrough();
  std::string check_cnf, check_assignment, check_graph, check_coloring, check_mode = "acyclic";
  check->add_option("--cnf", check_cnf, "DIMACS file");
  check->add_option("--assignment", check_assignment, "0/1 per variable");
  check->add_option("--graph", check_graph, "edge-list file");
  check->add_option("--coloring", check_coloring, "edge-index color lines");
  check->add_option("--mode", check_mode, "acyclic | nonrep")->capture_default_str();

  auto* distlab = app.add_subcommand("distlab", "output-distribution analysis");
  distlab->fallthrough();
  std::string dist_instance;
  std::uint64_t dist_trials = 10000;
  bool dist_exact = false;
  int parallel = 1;
  distlab->add_option("--instance", dist_instance, "instance JSON")->required();
  distlab->add_option("--trials", dist_trials, "MT runs")->capture_default_str();
  distlab->add_flag("--exact", dist_exact, "also run the exact conditional oracle");
  distlab->add_option("--parallel", parallel, "worker threads")->capture_default_str();

  auto* ms = app.add_subcommand("maxsat", "beyond-threshold MAX-k-SAT");
  ms->fallthrough();
  std::string ms_input;
  double ms_alpha = 2.0;
  int ms_trials = 1;
  ms->add_option("--input", ms_input, "DIMACS file")->required();
  ms->add_option("--alpha", ms_alpha, "dependency overshoot")->capture_default_str();
  ms->add_option("--trials", ms_trials, "independent seeds")->capture_default_str();
  ms->add_option("--seeds", ms_trials, "alias for --trials");

  auto* ac = app.add_subcommand("acyclic", "acyclic edge coloring");
  ac->fallthrough();
  std::string ac_input, ac_variant = "16d", ac_coloring_out;
  double ac_cap = 50.0;
  ac->add_option("--input", ac_input, "edge-list file")->required();
  ac->add_option("--colors", ac_variant, "16d | girth")->capture_default_str();
  ac->add_option("--cap-factor", ac_cap, "budget multiplier")->capture_default_str();
  ac->add_option("--coloring-out", ac_coloring_out, "edge-index color lines");

  auto* nr = app.add_subcommand("nonrep", "non-repetitive edge coloring");
  nr->fallthrough();
  std::string nr_input;
  double nr_eps = 0.2, nr_cap = 50.0;
  std::uint64_t nr_palette = 0;
  nr->add_option("--input", nr_input, "edge-list file")->required();
  nr->add_option("--eps", nr_eps, "slack eps'")->capture_default_str();
  nr->add_option("--palette", nr_palette, "palette override (0 = formula)");
  nr->add_option("--cap-factor", nr_cap, "budget multiplier")->capture_default_str();

  auto* sa = app.add_subcommand("santa", "(k,l,beta)-system pipeline");
  sa->fallthrough();
  std::string sa_input;
  int sa_c = 8, sa_retries = 5;
  sa->add_option("--input", sa_input, "system JSON")->required();
  sa->add_option("--c", sa_c, "base-case threshold")->capture_default_str();
  sa->add_option("--retries", sa_retries, "pipeline retries")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed())
      return run_gen(gen_kind, seed, out, gen_k, gen_vars, gen_clauses, gen_maxdeg, gen_vertices,
                     gen_edges, gen_p, gen_l, gen_kk, gen_beta);
    if (check->parsed())
      return run_check(check_cnf, check_assignment, check_graph, check_coloring, check_mode,
                       seed, out);
    if (distlab->parsed())
      return run_distlab(dist_instance, seed, dist_trials, dist_exact, parallel, out, timing);
    if (ms->parsed()) return run_maxsat(ms_input, ms_alpha, seed, ms_trials, out, timing);
    if (ac->parsed())
      return run_acyclic(ac_input, seed, ac_variant, ac_cap, out, ac_coloring_out, timing);
    if (nr->parsed()) return run_nonrep(nr_input, nr_eps, seed, nr_palette, nr_cap, out, timing);
    if (sa->parsed()) return run_santa(sa_input, seed, sa_c, sa_retries, out, timing);
  } catch (const lll::CapExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const lll::RetriesExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
