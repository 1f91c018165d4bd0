#include "factory/core/state.hpp"

#include <algorithm>
#include <set>

#include "factory/core/error.hpp"

namespace factory::core {

std::string_view to_string(Signal signal) {
  switch (signal) {
    case Signal::High: return "High";
    case Signal::Low: return "Low";
    case Signal::DontCare: return "DC";
  }
  return "DC";
}

std::optional<Signal> parse_signal(std::string_view text) {
  if (text == "High") return Signal::High;
  if (text == "Low") return Signal::Low;
  if (text == "DC" || text == "Don't Care") return Signal::DontCare;
  return std::nullopt;
}

std::string to_string(const DeviceState& state) {
  if (state.is_abstract()) {
    return state.name;
  }
  return state.name + std::string(to_string(state.signal));
}

SignalMapping::SignalMapping(DeviceState on_high, DeviceState on_low)
    : on_high_(std::move(on_high)), on_low_(std::move(on_low)) {
  if (on_high_.signal != Signal::High || on_low_.signal != Signal::Low) {
    throw Error(ErrorCode::InvalidArgument, "mapped states must carry the level they are mapped from");
  }
  if (on_high_.name == on_low_.name) {
    throw Error(ErrorCode::InvalidArgument,
                "signal mapping sends both levels to '" + on_high_.name + "'");
  }
}

std::optional<Signal> SignalMapping::signal_for(std::string_view state_name) const noexcept {
  if (on_high_.name == state_name) return Signal::High;
  if (on_low_.name == state_name) return Signal::Low;
  return std::nullopt;
}

VariationSet::VariationSet(std::string name, std::vector<std::string> positions)
    : name_(std::move(name)), positions_(std::move(positions)) {
  if (positions_.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "spatial variation '" + name_ + "' needs at least two positions");
  }
  std::set<std::string_view> seen;
  for (const auto& p : positions_) {
    if (!seen.insert(p).second) {
      throw Error(ErrorCode::DuplicateKey, "position '" + p + "' repeated in '" + name_ + "'");
    }
  }
}

bool VariationSet::contains(std::string_view position) const noexcept {
  return std::find(positions_.begin(), positions_.end(), position) != positions_.end();
}

}  // namespace factory::core
