#include "lll/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lll/errors.hpp"

namespace lll {

void VariableSpace::validate() const {
  for (std::size_t i = 0; i < variables.size(); ++i) {
    const auto& v = variables[i];
    if (v.domain_size < 1) throw std::invalid_argument("variable domain_size < 1");
    if (static_cast<int>(v.weights.size()) != v.domain_size)
      throw std::invalid_argument("weights length != domain_size");
    double sum = 0.0;
    for (double w : v.weights) {
      if (w < 0.0) throw std::invalid_argument("negative weight");
      sum += w;
    }
    if (std::fabs(sum - 1.0) > 1e-12) throw std::invalid_argument("weights do not sum to 1");
  }
}

VariableSpace VariableSpace::uniform_binary(int n) {
  VariableSpace s;
  s.variables.assign(n, Variable{2, {0.5, 0.5}});
  return s;
}

void EventSet::validate(const VariableSpace& space) const {
  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto& e = events[i];
    if (e.id != static_cast<int>(i)) throw std::invalid_argument("event ids must be 0..m-1");
    if (e.vbl.empty()) throw std::invalid_argument("event with empty vbl");
    if (!std::is_sorted(e.vbl.begin(), e.vbl.end())) throw std::invalid_argument("vbl not sorted");
    if (std::adjacent_find(e.vbl.begin(), e.vbl.end()) != e.vbl.end())
      throw std::invalid_argument("vbl has duplicates");
    if (e.vbl.front() < 0 || e.vbl.back() >= space.n())
      throw std::invalid_argument("vbl references invalid variable id");
    if (!(e.prob > 0.0 && e.prob < 1.0)) throw std::invalid_argument("event prob outside (0,1)");
  }
}

bool holds(const BadEvent& event, const Assignment& assignment) {
  thread_local std::vector<int> local;
  local.clear();
  for (int v : event.vbl) local.push_back(assignment.values[v]);
  return event.predicate(LocalValues(local));
}

std::uint64_t footprint_size(const VariableSpace& space, const std::vector<int>& vbl) {
  std::uint64_t size = 1;
  for (int v : vbl) {
    std::uint64_t d = static_cast<std::uint64_t>(space.variables[v].domain_size);
    if (size > (1ULL << 62) / d) return 1ULL << 62;
    size *= d;
  }
  return size;
}

double enumerate_probability(const VariableSpace& space, const BadEvent& event,
                             std::uint64_t max_outcomes) {
  std::uint64_t total = footprint_size(space, event.vbl);
  if (total > max_outcomes) throw SpaceTooLarge("event footprint too large to enumerate");

  std::vector<int> values(event.vbl.size(), 0);
  double sum = 0.0;
  for (std::uint64_t code = 0; code < total; ++code) {
    if (event.predicate(LocalValues(values))) {
      double w = 1.0;
      for (std::size_t i = 0; i < event.vbl.size(); ++i)
        w *= space.variables[event.vbl[i]].weights[values[i]];
      sum += w;
    }
    // advance mixed-radix counter, first position least significant
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (++values[i] < space.variables[event.vbl[i]].domain_size) break;
      values[i] = 0;
    }
  }
  return sum;
}

std::uint64_t local_code(const VariableSpace& space, const std::vector<int>& vbl,
                         LocalValues values) {
  std::uint64_t code = 0;
  std::uint64_t stride = 1;
  for (std::size_t i = 0; i < vbl.size(); ++i) {
    code += stride * static_cast<std::uint64_t>(values[i]);
    stride *= static_cast<std::uint64_t>(space.variables[vbl[i]].domain_size);
  }
  return code;
}

namespace {

// Domain sizes of the footprint, so predicates own everything they need.
std::vector<std::uint64_t> footprint_domains(const VariableSpace& space,
                                             const std::vector<int>& vbl) {
  std::vector<std::uint64_t> d;
  d.reserve(vbl.size());
  for (int v : vbl) d.push_back(static_cast<std::uint64_t>(space.variables[v].domain_size));
  return d;
}

std::uint64_t code_of(const std::vector<std::uint64_t>& domains, LocalValues values) {
  std::uint64_t code = 0;
  std::uint64_t stride = 1;
  for (std::size_t i = 0; i < domains.size(); ++i) {
    code += stride * static_cast<std::uint64_t>(values[i]);
    stride *= domains[i];
  }
  return code;
}

}  // namespace

BadEvent threshold_event(int id, const VariableSpace& space, std::vector<int> vbl,
                         std::uint64_t threshold) {
  BadEvent e;
  e.id = id;
  e.vbl = std::move(vbl);
  std::uint64_t total = footprint_size(space, e.vbl);
  if (threshold == 0 || threshold >= total)
    throw std::invalid_argument("threshold must give probability in (0,1)");
  auto domains = footprint_domains(space, e.vbl);
  e.predicate = [domains, threshold](LocalValues values) {
    return code_of(domains, values) < threshold;
  };
  // Exact under uniform weights; enumerated otherwise.
  bool uniform = true;
  for (int v : e.vbl)
    for (double w : space.variables[v].weights)
      if (std::fabs(w - 1.0 / space.variables[v].domain_size) > 1e-15) uniform = false;
  if (uniform) {
    e.prob = static_cast<double>(threshold) / static_cast<double>(total);
  } else {
    e.prob = enumerate_probability(space, e);
  }
  return e;
}

BadEvent minterm_event(int id, const VariableSpace& space, std::vector<int> vbl,
                       std::vector<std::uint64_t> codes) {
  BadEvent e;
  e.id = id;
  e.vbl = std::move(vbl);
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  auto domains = footprint_domains(space, e.vbl);
  e.predicate = [domains, codes](LocalValues values) {
    return std::binary_search(codes.begin(), codes.end(), code_of(domains, values));
  };
  e.prob = enumerate_probability(space, e);
  return e;
}

}  // namespace lll
