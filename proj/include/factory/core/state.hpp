#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace factory::core {

// Electrical level of a binary device signal. DontCare marks an abstract state.
enum class Signal { High, Low, DontCare };

std::string_view to_string(Signal signal);
std::optional<Signal> parse_signal(std::string_view text);

// A named device state ("Active", "Obstructed", ...) plus the signal that carries it.
struct DeviceState {
  std::string name;
  Signal signal = Signal::DontCare;

  bool is_abstract() const noexcept { return signal == Signal::DontCare; }

  friend bool operator==(const DeviceState&, const DeviceState&) = default;
  friend std::strong_ordering operator<=>(const DeviceState&, const DeviceState&) = default;
};

std::string to_string(const DeviceState& state);

// Meaning of each signal level for one actuator or sensor. Total on {High, Low};
// the two states have distinct names and carry the level they are mapped from.
class SignalMapping {
 public:
  SignalMapping(DeviceState on_high, DeviceState on_low);

  const DeviceState& on_high() const noexcept { return on_high_; }
  const DeviceState& on_low() const noexcept { return on_low_; }

  // Level that encodes the named state, if either does.
  std::optional<Signal> signal_for(std::string_view state_name) const noexcept;

  friend bool operator==(const SignalMapping&, const SignalMapping&) = default;
  friend std::strong_ordering operator<=>(const SignalMapping&, const SignalMapping&) = default;

 private:
  DeviceState on_high_;
  DeviceState on_low_;
};

// Mutually exclusive set of discrete positions a movable part can be in.
class VariationSet {
 public:
  VariationSet(std::string name, std::vector<std::string> positions);

  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& positions() const noexcept { return positions_; }
  bool contains(std::string_view position) const noexcept;

  friend bool operator==(const VariationSet&, const VariationSet&) = default;
  friend std::strong_ordering operator<=>(const VariationSet&, const VariationSet&) = default;

 private:
  std::string name_;
  std::vector<std::string> positions_;
};

}  // namespace factory::core
