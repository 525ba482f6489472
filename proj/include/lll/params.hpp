#pragma once

#include <cstdint>
#include <vector>

#include "lll/dependency.hpp"
#include "lll/model.hpp"

namespace lll {

// x-values plus the derived quantities delta = min_A x(A) prod_{B in G(A)} (1-x(B))
// and T = sum_A x(A). cap_factor is the lambda multiplier on the resample budget.
struct LLLParams {
  std::vector<double> x;
  double eps = 0.0;
  double delta = 0.0;
  double big_t = 0.0;
  double cap_factor = 50.0;
};

LLLParams make_lll_params(const EventSet& events, const DependencyGraph& graph,
                          std::vector<double> x, double eps = 0.0, double cap_factor = 50.0);

// prod_{B in nbrs} (1 - x(B)); switches to log-space accumulation on very
// large neighborhoods to avoid underflow.
double neighbor_product(const std::vector<double>& x, const std::vector<int>& nbrs);

double compute_delta(const EventSet& events, const DependencyGraph& graph,
                     const std::vector<double>& x);

struct LLLCheck {
  bool ok = false;
  std::vector<double> margin;  // rhs - prob, per event
};

// P(A) <= (1 - eps) x(A) prod_{B in G(A)} (1 - x(B)) for every A.
LLLCheck check_lll(const EventSet& events, const DependencyGraph& graph, const LLLParams& params);

// P(A)^(1-eps) <= x(A) prod_{B in G(A)} (1 - x(B)); requires eps in (0,1)
// and all x < 1 - eps.
bool check_lll_exponential(const EventSet& events, const DependencyGraph& graph,
                           const LLLParams& params);

// Core-restricted condition: P(A) <= (1 - eps) x(A) prod_{B in G(A) ^ core} (1 - x(B))
// for every A in the full set.
LLLCheck check_lll_core(const EventSet& events, const DependencyGraph& graph,
                        const LLLParams& params, const std::vector<int>& core);

struct TBoundReport {
  double big_t = 0.0;
  double log2_inv_delta = 0.0;
  bool holds = false;                      // T <= n log2(1/delta)
  std::vector<double> per_variable_sum;    // sum_{B in A_P} x_B per variable
  bool per_variable_ok = false;            // every sum <= log2(1/delta)
};

TBoundReport compute_t_bound(const VariableSpace& space, const EventSet& events,
                             const LLLParams& params);

struct ResampleBudget {
  double v1 = 0.0;  // T * max_A 1/(1-x(A))
  double v2 = 0.0;  // 8 (n/eps) ln(max(T/eps, 2)); infinity sentinel when eps = 0
};

ResampleBudget resample_bounds(const LLLParams& params, int n_variables);

// ceil(cap_factor * v1), or ceil(cap_factor * v2) when eps > 0; at least 1.
std::uint64_t resample_cap(const LLLParams& params, int n_variables);

}  // namespace lll
