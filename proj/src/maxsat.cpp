#include "lll/maxsat.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <set>
#include <sstream>

#include "lll/errors.hpp"

namespace lll {
namespace maxsat {

void CnfFormula::validate() const {
  for (const auto& clause : clauses) {
    if (clause.empty()) throw ParseError("empty clause");
    std::set<int> vars;
    for (int lit : clause) {
      if (lit == 0 || std::abs(lit) > n_vars) throw ParseError("literal out of range");
      if (!vars.insert(std::abs(lit)).second) throw ParseError("clause repeats a variable");
    }
    if (k > 0 && static_cast<int>(clause.size()) != k)
      throw ParseError("clause width differs from k");
  }
}

CnfFormula parse_dimacs(std::istream& in) {
  CnfFormula f;
  int declared_clauses = -1;
  std::string line;
  std::vector<int> current;
  bool header_seen = false;

  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    if (line[0] == 'p') {
      std::string p, cnf;
      if (!(ls >> p >> cnf >> f.n_vars >> declared_clauses) || cnf != "cnf")
        throw ParseError("malformed DIMACS header");
      header_seen = true;
      continue;
    }
    if (!header_seen) throw ParseError("clause before DIMACS header");
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        if (current.empty()) throw ParseError("empty clause line");
        f.clauses.push_back(current);
        current.clear();
      } else {
        current.push_back(lit);
      }
    }
  }
  if (!header_seen) throw ParseError("missing DIMACS header");
  if (!current.empty()) f.clauses.push_back(current);
  if (declared_clauses >= 0 && f.m() != declared_clauses)
    throw ParseError("clause count differs from header");

  // uniform width -> k-CNF mode
  f.k = f.clauses.empty() ? 0 : static_cast<int>(f.clauses[0].size());
  for (const auto& c : f.clauses)
    if (static_cast<int>(c.size()) != f.k) { f.k = 0; break; }
  f.validate();
  return f;
}

CnfFormula parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

std::string emit_dimacs(const CnfFormula& f) {
  std::ostringstream os;
  os << "p cnf " << f.n_vars << " " << f.m() << "\n";
  for (const auto& clause : f.clauses) {
    for (int lit : clause) os << lit << " ";
    os << "0\n";
  }
  return os.str();
}

std::vector<int> clause_degrees(const CnfFormula& f) {
  std::vector<std::vector<int>> by_var(f.n_vars + 1);
  for (int c = 0; c < f.m(); ++c)
    for (int lit : f.clauses[c]) by_var[std::abs(lit)].push_back(c);

  std::vector<int> degree(f.m(), 0);
  std::vector<int> last_seen(f.m(), -1);
  for (int c = 0; c < f.m(); ++c) {
    for (int lit : f.clauses[c])
      for (int other : by_var[std::abs(lit)]) {
        if (other == c || last_seen[other] == c) continue;
        last_seen[other] = c;
        degree[c]++;
      }
  }
  return degree;
}

double lambda_bound(double alpha) {
  if (alpha <= 0.0) throw std::invalid_argument("alpha must be positive");
  if (alpha <= 1.0) return 0.0;
  if (alpha >= std::numbers::e_v<double>) return 1.0;
  return std::numbers::e_v<double> * std::log(alpha) / alpha;
}

CoreParams core_params(double alpha, int d) {
  if (!(alpha > 1.0 && alpha < std::numbers::e_v<double>))
    throw std::invalid_argument("core_params needs 1 < alpha < e");
  if (d < 8) throw std::invalid_argument("core_params needs d >= 8");

  CoreParams p;
  p.gamma = 1.0 / alpha;
  // 1/beta = (1 + ln gamma)/gamma gives equality in 1/e < gamma e^{-gamma/beta};
  // the 1.01 inflation makes it strict.
  p.beta = 1.01 / (alpha * (1.0 - std::log(alpha)));
  p.eps = std::min(0.5, 3.0 * std::sqrt(std::log(d) / d));
  p.theta = std::clamp((1.0 - p.eps) / (alpha * p.beta), 1e-12, 1.0 - 1e-12);
  if (!(1.0 / std::numbers::e_v<double> < p.gamma * std::exp(-p.gamma / p.beta)))
    throw InfeasibleParams("gamma e^{-gamma/beta} does not clear 1/e");
  return p;
}

CoreSelection build_random_core(const CnfFormula& f, double alpha, Rng& rng) {
  auto degrees = clause_degrees(f);
  int d = degrees.empty() ? 0 : *std::max_element(degrees.begin(), degrees.end());
  CoreParams cp = core_params(alpha, std::max(d, 8));

  CoreSelection sel;
  sel.alpha = alpha;
  sel.beta = cp.beta;
  sel.gamma = cp.gamma;
  sel.eps = cp.eps;
  sel.theta = cp.theta;
  sel.d = d;

  std::vector<char> candidate(f.m(), 0);
  for (int c = 0; c < f.m(); ++c) {
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    candidate[c] = u < cp.theta;
  }

  // adjacency needed twice; build it once
  std::vector<std::vector<int>> by_var(f.n_vars + 1);
  for (int c = 0; c < f.m(); ++c)
    for (int lit : f.clauses[c]) by_var[std::abs(lit)].push_back(c);
  auto neighbors_of = [&](int c) {
    std::vector<int> nbrs;
    for (int lit : f.clauses[c])
      for (int other : by_var[std::abs(lit)])
        if (other != c) nbrs.push_back(other);
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    return nbrs;
  };

  double degree_cap = d / (alpha * cp.beta);
  std::vector<char> eliminated(f.m(), 0);
  std::vector<std::vector<int>> adjacency(f.m());
  for (int c = 0; c < f.m(); ++c) {
    adjacency[c] = neighbors_of(c);
    int candidate_nbrs = 0;
    for (int other : adjacency[c]) candidate_nbrs += candidate[other];
    if (candidate_nbrs > degree_cap) eliminated[c] = 1;
  }

  sel.core_degree.assign(f.m(), 0);
  for (int c = 0; c < f.m(); ++c) {
    if (eliminated[c]) sel.eliminated.push_back(c);
    else if (candidate[c]) sel.core.push_back(c);
  }
  std::vector<char> in_core(f.m(), 0);
  for (int c : sel.core) in_core[c] = 1;
  for (int c = 0; c < f.m(); ++c)
    for (int other : adjacency[c]) sel.core_degree[c] += in_core[other];

  // elimination only removed candidates, so surviving core degrees fit the cap
  for (int c : sel.core)
    if (sel.core_degree[c] > degree_cap)
      throw std::logic_error("core degree exceeds d/(alpha beta) after elimination");
  return sel;
}

bool clause_satisfied(const std::vector<int>& clause, const SatAssignment& a) {
  for (int lit : clause) {
    bool value = a[std::abs(lit) - 1];
    if (lit > 0 ? value : !value) return true;
  }
  return false;
}

namespace {

// Clause-violation events over fair coins for the given clause subset.
EventSet clause_events(const CnfFormula& f, const std::vector<int>& subset) {
  EventSet events;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    const auto& clause = f.clauses[subset[i]];
    BadEvent e;
    e.id = static_cast<int>(i);
    for (int lit : clause) e.vbl.push_back(std::abs(lit) - 1);
    std::sort(e.vbl.begin(), e.vbl.end());
    // violation: every literal false; local values arrive in vbl order
    std::vector<int> vbl = e.vbl;
    std::vector<int> lits(clause);
    e.predicate = [vbl, lits](LocalValues values) {
      for (int lit : lits) {
        int var = std::abs(lit) - 1;
        std::size_t pos = std::lower_bound(vbl.begin(), vbl.end(), var) - vbl.begin();
        bool value = values[pos] != 0;
        if (lit > 0 ? value : !value) return false;
      }
      return true;
    };
    e.prob = std::exp2(-static_cast<double>(clause.size()));
    events.events.push_back(std::move(e));
  }
  return events;
}

}  // namespace

SatAssignment solve_core_clauses(const CnfFormula& f, const std::vector<int>& core, Rng& rng,
                               double x_value) {
  VariableSpace space = VariableSpace::uniform_binary(f.n_vars);
  if (core.empty()) {
    Assignment a = sample_assignment(space, rng);
    SatAssignment out(f.n_vars);
    for (int i = 0; i < f.n_vars; ++i) out[i] = static_cast<std::uint8_t>(a.values[i]);
    return out;
  }

  // precondition: within the core every clause keeps at most
  // 2^k/e - 1 neighbors.
  {
    CnfFormula core_formula;
    core_formula.n_vars = f.n_vars;
    core_formula.k = f.k;
    for (int c : core) core_formula.clauses.push_back(f.clauses[c]);
    auto degrees = clause_degrees(core_formula);
    double cap = std::exp2(f.k) / std::numbers::e_v<double> - 1.0;
    for (int deg : degrees)
      if (deg > cap)
        throw ConditionViolated("core clause degree exceeds 2^k/e - 1");
  }

  if (x_value <= 0.0) x_value = std::numbers::e_v<double> / std::exp2(f.k);
  x_value = std::min(x_value, 0.5);

  EventSet events = clause_events(f, core);
  DependencyGraph graph = build_dependency_graph(space, events);
  LLLParams params = make_lll_params(events, graph, std::vector<double>(events.m(), x_value),
                                     0.0, 1.0);
  // cap n^3 * v1
  double n3 = std::pow(static_cast<double>(std::max(f.n_vars, 2)), 3.0);
  params.cap_factor = n3;

  MtOptions opts;
  opts.override_check = true;  // the caller's degree precondition is the contract here
  MtResult run = mt_run(space, events, graph, params, rng, opts);
  if (run.report.status == RunStatus::CapExceeded)
    throw CapExceededError("core MT run exceeded its n^3 v1 budget");

  SatAssignment out(f.n_vars);
  for (int i = 0; i < f.n_vars; ++i)
    out[i] = static_cast<std::uint8_t>(run.report.final_assignment.values[i]);
  return out;
}

ViolationCounts count_violated(const CnfFormula& f, const SatAssignment& a,
                               const CoreSelection* classes) {
  if (static_cast<int>(a.size()) != f.n_vars)
    throw std::invalid_argument("assignment size differs from variable count");

  std::vector<char> in_core, in_elim;
  if (classes) {
    in_core.assign(f.m(), 0);
    in_elim.assign(f.m(), 0);
    for (int c : classes->core) in_core[c] = 1;
    for (int c : classes->eliminated) in_elim[c] = 1;
  }

  ViolationCounts counts;
  for (int c = 0; c < f.m(); ++c) {
    if (clause_satisfied(f.clauses[c], a)) continue;
    counts.total++;
    if (!classes) continue;
    if (in_core[c]) counts.core++;
    else if (in_elim[c]) counts.eliminated++;
    else counts.noncore++;
  }
  return counts;
}

MaxSatReport solve_beyond_threshold(const CnfFormula& f, double alpha, Rng& rng) {
  if (f.k <= 0) throw std::invalid_argument("solve_beyond_threshold needs a k-CNF formula");
  MaxSatReport report;
  double p = std::exp2(-static_cast<double>(f.k));
  report.lambda_mp = lambda_bound(alpha) * f.m() * p;

  if (alpha <= 1.0) {
    // under the LLL threshold: plain MT on every clause satisfies everything
    std::vector<int> all(f.m());
    for (int c = 0; c < f.m(); ++c) all[c] = c;
    report.under_threshold = true;
    report.assignment = solve_core_clauses(f, all, rng);
    report.violated = count_violated(f, report.assignment, nullptr);
    report.fraction_violated = static_cast<double>(report.violated.total) / std::max(f.m(), 1);
    return report;
  }

  report.selection = build_random_core(f, alpha, rng);
  double x = report.selection.gamma * alpha / std::max(report.selection.d, 1);
  report.assignment = solve_core_clauses(f, report.selection.core, rng, x);
  report.violated = count_violated(f, report.assignment, &report.selection);
  report.fraction_violated = static_cast<double>(report.violated.total) / std::max(f.m(), 1);
  return report;
}

}  // namespace maxsat
}  // namespace lll
