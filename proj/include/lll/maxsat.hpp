#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lll/mt.hpp"

namespace lll {
namespace maxsat {

// Clause literals are DIMACS-style signed 1-based ints.
struct CnfFormula {
  int n_vars = 0;
  int k = 0;  // uniform clause width; 0 when widths are mixed
  std::vector<std::vector<int>> clauses;

  int m() const { return static_cast<int>(clauses.size()); }
  void validate() const;
};

CnfFormula parse_dimacs(std::istream& in);
CnfFormula parse_dimacs(const std::string& text);
std::string emit_dimacs(const CnfFormula& f);

// Per-clause count of other clauses that share at least one variable.
std::vector<int> clause_degrees(const CnfFormula& f);

// Guaranteed violated-fraction factor at dependency overshoot alpha:
// 0 for alpha <= 1, e ln(alpha)/alpha inside (1,e), 1 beyond.
double lambda_bound(double alpha);

struct CoreParams {
  double gamma = 0.0;  // 1/alpha
  double beta = 0.0;   // 1.01 / (alpha (1 - ln alpha))
  double eps = 0.0;    // min(0.5, 3 sqrt(ln d / d))
  double theta = 0.0;  // (1 - eps) / (alpha beta), clamped to (0,1)
};

// Throws InfeasibleParams when 1/e < gamma e^{-gamma/beta} fails.
CoreParams core_params(double alpha, int d);

struct CoreSelection {
  double alpha = 0.0, beta = 0.0, gamma = 0.0, eps = 0.0, theta = 0.0;
  int d = 0;  // max clause degree of the formula
  std::vector<int> core;        // candidates that survived elimination
  std::vector<int> eliminated;  // clauses with too many candidate neighbors
  std::vector<int> core_degree; // per clause, neighbors inside the final core
};

// Random core: each clause becomes a candidate with prob theta; every clause
// whose candidate neighborhood exceeds d/(alpha beta) is eliminated.
CoreSelection build_random_core(const CnfFormula& f, double alpha, Rng& rng);

using SatAssignment = std::vector<std::uint8_t>;

// MT on the core clauses only, fair coins, x = x_value per event
// (default e/2^k). Throws CapExceededError on a non-terminating run.
SatAssignment solve_core_clauses(const CnfFormula& f, const std::vector<int>& core, Rng& rng,
                               double x_value = -1.0);

struct ViolationCounts {
  int total = 0;
  int core = 0;
  int noncore = 0;
  int eliminated = 0;
};

ViolationCounts count_violated(const CnfFormula& f, const SatAssignment& a,
                               const CoreSelection* classes = nullptr);

bool clause_satisfied(const std::vector<int>& clause, const SatAssignment& a);

struct MaxSatReport {
  CoreSelection selection;
  SatAssignment assignment;
  ViolationCounts violated;
  double fraction_violated = 0.0;   // violated.total / m
  double lambda_mp = 0.0;           // lambda(alpha) * m * 2^-k
  bool under_threshold = false;     // alpha <= 1 path: plain MT on everything
};

// Full pipeline: core_params -> build_random_core -> solve_core_clauses with
// x = gamma alpha / d -> violation accounting against lambda(alpha) m 2^-k.
MaxSatReport solve_beyond_threshold(const CnfFormula& f, double alpha, Rng& rng);

}  // namespace maxsat
}  // namespace lll
