#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "lll/rng.hpp"

namespace lll {

// One independent discrete random variable: values 0..domain_size-1 drawn
// with the given weights.
struct Variable {
  int domain_size = 0;
  std::vector<double> weights;
};

struct VariableSpace {
  std::vector<Variable> variables;

  int n() const { return static_cast<int>(variables.size()); }

  // Checks weight lengths, non-negativity and normalization (1e-12).
  void validate() const;

  static VariableSpace uniform_binary(int n);
};

struct Assignment {
  std::vector<int> values;
};

using LocalValues = std::span<const int>;

// A bad event: a predicate over the restriction of an assignment to vbl.
// The predicate receives the values of vbl in vbl order.
struct BadEvent {
  int id = -1;
  std::vector<int> vbl;  // sorted, distinct variable ids
  std::function<bool(LocalValues)> predicate;
  double prob = 0.0;
};

struct EventSet {
  std::vector<BadEvent> events;

  int m() const { return static_cast<int>(events.size()); }
  void validate(const VariableSpace& space) const;
};

bool holds(const BadEvent& event, const Assignment& assignment);

// Number of outcomes of the restriction to vbl, clamped at 2^62 on overflow.
std::uint64_t footprint_size(const VariableSpace& space, const std::vector<int>& vbl);

// Exact probability of the predicate by enumerating the footprint.
// Throws SpaceTooLarge above max_outcomes.
double enumerate_probability(const VariableSpace& space, const BadEvent& event,
                             std::uint64_t max_outcomes = (1ULL << 20));

// Event that holds iff the mixed-radix code of the local values (first vbl
// entry = least significant digit) is < threshold. With uniform weights its
// probability is exactly threshold / footprint_size.
BadEvent threshold_event(int id, const VariableSpace& space, std::vector<int> vbl,
                         std::uint64_t threshold);

// Event that holds iff the mixed-radix code is in the given sorted set.
BadEvent minterm_event(int id, const VariableSpace& space, std::vector<int> vbl,
                       std::vector<std::uint64_t> codes);

std::uint64_t local_code(const VariableSpace& space, const std::vector<int>& vbl,
                         LocalValues values);

}  // namespace lll
