#pragma once

#include <stdexcept>
#include <string>

namespace lll {

struct ConditionViolated : std::runtime_error {
  explicit ConditionViolated(const std::string& what) : std::runtime_error(what) {}
};

struct CapExceededError : std::runtime_error {
  explicit CapExceededError(const std::string& what) : std::runtime_error(what) {}
};

struct SpaceTooLarge : std::runtime_error {
  explicit SpaceTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct NoGoodAssignment : std::runtime_error {
  explicit NoGoodAssignment(const std::string& what) : std::runtime_error(what) {}
};

struct DepthCapExceeded : std::runtime_error {
  explicit DepthCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct InfeasibleParams : std::runtime_error {
  explicit InfeasibleParams(const std::string& what) : std::runtime_error(what) {}
};

struct GirthTooSmall : std::runtime_error {
  explicit GirthTooSmall(const std::string& what) : std::runtime_error(what) {}
};

struct GraphTooLarge : std::runtime_error {
  explicit GraphTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct CoreTooLarge : std::runtime_error {
  explicit CoreTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct FlowInfeasible : std::runtime_error {
  explicit FlowInfeasible(const std::string& what) : std::runtime_error(what) {}
};

struct RetriesExhausted : std::runtime_error {
  explicit RetriesExhausted(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lll
