#include "lll/params.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lll {

namespace {
constexpr double kTol = 1e-12;
constexpr std::size_t kLogSpaceThreshold = 10000;
}  // namespace

double neighbor_product(const std::vector<double>& x, const std::vector<int>& nbrs) {
  if (nbrs.size() > kLogSpaceThreshold) {
    double log_sum = 0.0;
    for (int b : nbrs) log_sum += std::log1p(-x[b]);
    return std::exp(log_sum);
  }
  double prod = 1.0;
  for (int b : nbrs) prod *= 1.0 - x[b];
  return prod;
}

double compute_delta(const EventSet& events, const DependencyGraph& graph,
                     const std::vector<double>& x) {
  double delta = std::numeric_limits<double>::infinity();
  for (const auto& e : events.events)
    delta = std::min(delta, x[e.id] * neighbor_product(x, graph.adjacency[e.id]));
  if (events.m() == 0) return 0.0;
  // Normalization: with any dependency edge, x(1-x) <= 1/4 forces delta <= 1/4.
  if (graph.edge_count() > 0) assert(delta <= 0.25 + kTol);
  return delta;
}

LLLParams make_lll_params(const EventSet& events, const DependencyGraph& graph,
                          std::vector<double> x, double eps, double cap_factor) {
  if (static_cast<int>(x.size()) != events.m())
    throw std::invalid_argument("x size != event count");
  for (double v : x)
    if (!(v > 0.0 && v < 1.0)) throw std::invalid_argument("x values must lie in (0,1)");
  if (eps < 0.0 || eps >= 1.0) throw std::invalid_argument("eps must lie in [0,1)");
  if (cap_factor <= 0.0) throw std::invalid_argument("cap_factor must be positive");

  LLLParams p;
  p.x = std::move(x);
  p.eps = eps;
  p.cap_factor = cap_factor;
  p.delta = compute_delta(events, graph, p.x);
  p.big_t = 0.0;
  for (double v : p.x) p.big_t += v;
  return p;
}

LLLCheck check_lll(const EventSet& events, const DependencyGraph& graph,
                   const LLLParams& params) {
  LLLCheck out;
  out.ok = true;
  out.margin.resize(events.m());
  for (const auto& e : events.events) {
    double rhs = (1.0 - params.eps) * params.x[e.id] *
                 neighbor_product(params.x, graph.adjacency[e.id]);
    out.margin[e.id] = rhs - e.prob;
    if (e.prob > rhs + kTol) out.ok = false;
  }
  return out;
}

bool check_lll_exponential(const EventSet& events, const DependencyGraph& graph,
                           const LLLParams& params) {
  if (!(params.eps > 0.0 && params.eps < 1.0))
    throw std::invalid_argument("exponential check needs eps in (0,1)");
  for (const auto& e : events.events) {
    double lhs = std::pow(e.prob, 1.0 - params.eps);
    double rhs = params.x[e.id] * neighbor_product(params.x, graph.adjacency[e.id]);
    if (lhs > rhs + kTol) return false;
  }
  return true;
}

LLLCheck check_lll_core(const EventSet& events, const DependencyGraph& graph,
                        const LLLParams& params, const std::vector<int>& core) {
  std::vector<char> in_core(events.m(), 0);
  for (int id : core) in_core[id] = 1;

  LLLCheck out;
  out.ok = true;
  out.margin.resize(events.m());
  for (const auto& e : events.events) {
    double prod = 1.0;
    for (int b : graph.adjacency[e.id])
      if (in_core[b]) prod *= 1.0 - params.x[b];
    double rhs = (1.0 - params.eps) * params.x[e.id] * prod;
    out.margin[e.id] = rhs - e.prob;
    if (e.prob > rhs + kTol) out.ok = false;
  }
  return out;
}

TBoundReport compute_t_bound(const VariableSpace& space, const EventSet& events,
                             const LLLParams& params) {
  TBoundReport r;
  r.big_t = params.big_t;
  r.log2_inv_delta = std::log2(1.0 / params.delta);
  r.holds = r.big_t <= space.n() * r.log2_inv_delta + 1e-9;

  r.per_variable_sum.assign(space.n(), 0.0);
  for (const auto& e : events.events)
    for (int v : e.vbl) r.per_variable_sum[v] += params.x[e.id];
  r.per_variable_ok = true;
  for (double s : r.per_variable_sum)
    if (s > r.log2_inv_delta + 1e-9) r.per_variable_ok = false;
  return r;
}

ResampleBudget resample_bounds(const LLLParams& params, int n_variables) {
  ResampleBudget b;
  double max_factor = 0.0;
  for (double v : params.x) max_factor = std::max(max_factor, 1.0 / (1.0 - v));
  b.v1 = params.big_t * max_factor;
  if (params.eps > 0.0) {
    // K = 8; natural log with a floor of 2 inside.
    b.v2 = 8.0 * (static_cast<double>(n_variables) / params.eps) *
           std::log(std::max(params.big_t / params.eps, 2.0));
  } else {
    b.v2 = std::numeric_limits<double>::infinity();
  }
  return b;
}

std::uint64_t resample_cap(const LLLParams& params, int n_variables) {
  ResampleBudget b = resample_bounds(params, n_variables);
  double base = params.eps > 0.0 ? b.v2 : b.v1;
  double cap = std::ceil(params.cap_factor * base);
  if (!(cap >= 1.0)) return 1;
  if (cap >= 9e18) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(cap);
}

}  // namespace lll
