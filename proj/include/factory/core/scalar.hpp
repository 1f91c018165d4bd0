#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace factory::core {

// Integer expression over state-bound variables. A Variable names a state
// specification ("Active") and is bound to the time that state was entered.
class SymbolicScalar {
 public:
  enum class Kind { Constant, Variable, Addition };

  static SymbolicScalar constant(std::int64_t value);
  static SymbolicScalar variable(std::string state_name);
  // Throws InvalidArgument for fewer than two operands.
  static SymbolicScalar addition(std::vector<SymbolicScalar> operands);

  Kind kind() const noexcept { return kind_; }
  std::int64_t constant_value() const noexcept { return constant_; }
  const std::string& variable_name() const noexcept { return variable_; }
  const std::vector<SymbolicScalar>& operands() const noexcept { return operands_; }

  friend bool operator==(const SymbolicScalar&, const SymbolicScalar&) = default;

 private:
  SymbolicScalar() = default;

  Kind kind_ = Kind::Constant;
  std::int64_t constant_ = 0;
  std::string variable_;
  std::vector<SymbolicScalar> operands_;
};

using Binding = std::map<std::string, std::int64_t, std::less<>>;

// Throws UnboundVariable when a variable has no binding.
std::int64_t evaluate(const SymbolicScalar& expr, const Binding& binding);

// Elapsed time from `start` to `scalar`; value() = eval(scalar) - eval(start).
struct TimeDuration {
  SymbolicScalar start;
  SymbolicScalar scalar;

  // start = Variable(state), scalar = Variable(state) + offset.
  static TimeDuration relative_to(const std::string& state_name, std::int64_t offset);

  std::int64_t value(const Binding& binding) const;

  friend bool operator==(const TimeDuration&, const TimeDuration&) = default;
};

struct TimeDurationRange {
  TimeDuration minimum;
  TimeDuration maximum;

  static TimeDurationRange relative_to(const std::string& state_name, std::int64_t min_offset,
                                       std::int64_t max_offset);

  // {value(minimum), value(maximum)}; throws InvalidRule when minimum exceeds maximum.
  std::pair<std::int64_t, std::int64_t> bounds(const Binding& binding) const;

  friend bool operator==(const TimeDurationRange&, const TimeDurationRange&) = default;
};

}  // namespace factory::core
