#include "lll/instance_gen.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "lll/dependency.hpp"

namespace lll {

GeneratedInstance random_lll_instance(const LllGenOptions& opts, Rng& rng) {
  auto unit = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  for (int attempt = 0; attempt < 64; ++attempt) {
    GeneratedInstance inst;
    auto& space = inst.space;
    for (int i = 0; i < opts.n_vars; ++i) {
      int d = opts.max_domain <= 2 ? 2 : 2 + static_cast<int>(rng() % (opts.max_domain - 1));
      space.variables.push_back(
          Variable{d, std::vector<double>(d, 1.0 / d)});
    }

    // footprints and x-values first; probabilities are fitted afterwards
    std::vector<std::vector<int>> footprints(opts.m_events);
    inst.x.resize(opts.m_events);
    for (int e = 0; e < opts.m_events; ++e) {
      std::set<int> vars;
      if (opts.near_tight_clique) vars.insert(0);
      int want = 1 + static_cast<int>(rng() % opts.max_footprint);
      while (static_cast<int>(vars.size()) < std::min(want, opts.n_vars))
        vars.insert(static_cast<int>(rng() % opts.n_vars));
      footprints[e].assign(vars.begin(), vars.end());
      inst.x[e] = opts.near_tight_clique ? 0.04 + 0.04 * unit() : 0.15 + 0.3 * unit();
    }

    // rhs of the LLL condition under the shared-variable graph
    std::vector<double> rhs(opts.m_events);
    for (int e = 0; e < opts.m_events; ++e) {
      double prod = 1.0;
      for (int o = 0; o < opts.m_events; ++o) {
        if (o == e) continue;
        bool shares = false;
        for (int v : footprints[o])
          if (std::binary_search(footprints[e].begin(), footprints[e].end(), v)) shares = true;
        if (shares) prod *= 1.0 - inst.x[o];
      }
      rhs[e] = inst.x[e] * prod;
    }

    // pad footprints with private variables until the target probability is
    // representable as t / footprint_size with t >= 1
    int var_cap = opts.max_total_vars > 0 ? opts.max_total_vars
                                          : opts.n_vars + 8 * opts.m_events;
    bool ok = true;
    for (int e = 0; e < opts.m_events && ok; ++e) {
      double target = (1.0 - opts.margin) * rhs[e];
      double size = 1.0;
      for (int v : footprints[e]) size *= space.variables[v].domain_size;
      while (size * target < 1.0) {
        if (space.n() >= var_cap) { ok = false; break; }
        int fresh = space.n();
        space.variables.push_back(Variable{
            opts.pad_domain, std::vector<double>(opts.pad_domain, 1.0 / opts.pad_domain)});
        footprints[e].push_back(fresh);
        size *= opts.pad_domain;
      }
      if (!ok) break;
      std::sort(footprints[e].begin(), footprints[e].end());
      std::uint64_t total = footprint_size(space, footprints[e]);
      auto threshold = static_cast<std::uint64_t>(std::floor(target * static_cast<double>(total)));
      if (threshold < 1 || threshold >= total) { ok = false; break; }
      inst.events.events.push_back(
          threshold_event(e, space, footprints[e], threshold));
    }
    if (!ok) continue;
    return inst;
  }
  throw std::runtime_error("random_lll_instance could not fit a feasible instance");
}

maxsat::CnfFormula random_kcnf(int k, int n_vars, int m, Rng& rng, int max_degree) {
  if (n_vars < k) throw std::invalid_argument("need at least k variables");
  maxsat::CnfFormula f;
  f.n_vars = n_vars;
  f.k = k;

  std::vector<std::vector<int>> by_var(n_vars + 1);
  std::vector<int> degree;
  std::vector<std::set<int>> var_sets;

  auto draw_clause = [&]() {
    std::set<int> vars;
    while (static_cast<int>(vars.size()) < k)
      vars.insert(1 + static_cast<int>(rng() % n_vars));
    std::vector<int> clause;
    for (int v : vars) clause.push_back((rng() & 1) ? v : -v);
    return std::make_pair(clause, vars);
  };

  for (int c = 0; c < m; ++c) {
    for (int attempt = 0;; ++attempt) {
      if (attempt >= 10000)
        throw std::runtime_error("random_kcnf cannot satisfy the degree cap");
      auto [clause, vars] = draw_clause();
      if (max_degree < 0) {
        f.clauses.push_back(clause);
        break;
      }
      // neighbors this clause would gain
      std::set<int> nbrs;
      for (int v : vars)
        for (int o : by_var[v]) nbrs.insert(o);
      bool fits = static_cast<int>(nbrs.size()) <= max_degree;
      for (int o : nbrs)
        if (degree[o] + 1 > max_degree) fits = false;
      if (!fits) continue;
      int id = f.m();
      f.clauses.push_back(clause);
      degree.push_back(static_cast<int>(nbrs.size()));
      var_sets.push_back(vars);
      for (int o : nbrs) degree[o]++;
      for (int v : vars) by_var[v].push_back(id);
      break;
    }
  }
  f.validate();
  return f;
}

Graph random_graph_max_degree(int n, int m, int max_degree, Rng& rng) {
  std::set<std::pair<int, int>> used;
  std::vector<int> degree(n, 0);
  std::vector<std::pair<int, int>> edges;
  int attempts = 0;
  while (static_cast<int>(edges.size()) < m) {
    if (++attempts > 1000 * m + 1000)
      throw std::runtime_error("random_graph_max_degree cannot place all edges");
    int u = static_cast<int>(rng() % n);
    int v = static_cast<int>(rng() % n);
    if (u == v) continue;
    auto key = std::minmax(u, v);
    if (used.count(key)) continue;
    if (degree[u] >= max_degree || degree[v] >= max_degree) continue;
    used.insert(key);
    degree[u]++;
    degree[v]++;
    edges.emplace_back(key.first, key.second);
  }
  return make_graph(n, std::move(edges));
}

}  // namespace lll
