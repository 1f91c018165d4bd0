#include "factory/core/scalar.hpp"

#include "factory/core/error.hpp"

namespace factory::core {

SymbolicScalar SymbolicScalar::constant(std::int64_t value) {
  SymbolicScalar s;
  s.kind_ = Kind::Constant;
  s.constant_ = value;
  return s;
}

SymbolicScalar SymbolicScalar::variable(std::string state_name) {
  if (state_name.empty()) {
    throw Error(ErrorCode::InvalidArgument, "variable needs a state name");
  }
  SymbolicScalar s;
  s.kind_ = Kind::Variable;
  s.variable_ = std::move(state_name);
  return s;
}

SymbolicScalar SymbolicScalar::addition(std::vector<SymbolicScalar> operands) {
  if (operands.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "addition needs at least two operands");
  }
  SymbolicScalar s;
  s.kind_ = Kind::Addition;
  s.operands_ = std::move(operands);
  return s;
}

std::int64_t evaluate(const SymbolicScalar& expr, const Binding& binding) {
  switch (expr.kind()) {
    case SymbolicScalar::Kind::Constant:
      return expr.constant_value();
    case SymbolicScalar::Kind::Variable: {
      auto it = binding.find(expr.variable_name());
      if (it == binding.end()) {
        throw Error(ErrorCode::UnboundVariable, expr.variable_name());
      }
      return it->second;
    }
    case SymbolicScalar::Kind::Addition: {
      std::int64_t sum = 0;
      for (const auto& op : expr.operands()) {
        sum += evaluate(op, binding);
      }
      return sum;
    }
  }
  return 0;
}

TimeDuration TimeDuration::relative_to(const std::string& state_name, std::int64_t offset) {
  return TimeDuration{
      SymbolicScalar::variable(state_name),
      SymbolicScalar::addition({SymbolicScalar::variable(state_name), SymbolicScalar::constant(offset)})};
}

std::int64_t TimeDuration::value(const Binding& binding) const {
  return evaluate(scalar, binding) - evaluate(start, binding);
}

TimeDurationRange TimeDurationRange::relative_to(const std::string& state_name, std::int64_t min_offset,
                                                 std::int64_t max_offset) {
  return TimeDurationRange{TimeDuration::relative_to(state_name, min_offset),
                           TimeDuration::relative_to(state_name, max_offset)};
}

std::pair<std::int64_t, std::int64_t> TimeDurationRange::bounds(const Binding& binding) const {
  const auto lo = minimum.value(binding);
  const auto hi = maximum.value(binding);
  if (lo > hi) {
    throw Error(ErrorCode::InvalidRule,
                "duration range minimum " + std::to_string(lo) + " exceeds maximum " + std::to_string(hi));
  }
  return {lo, hi};
}

}  // namespace factory::core
