#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <variant>

#include "factory/core/box.hpp"
#include "factory/core/state.hpp"

namespace factory::core {

// Value side of a description entry. Exactly one payload, identified by tag().
class ComponentValue {
 public:
  enum class Tag { Text, Integer, Box, Variations, SignalMap, State };
  using Payload = std::variant<std::string, std::int64_t, Box3D, VariationSet, SignalMapping, DeviceState>;

  explicit ComponentValue(Payload payload) : payload_(std::move(payload)) {}
  explicit ComponentValue(const char* text) : payload_(std::string(text)) {}

  Tag tag() const noexcept { return static_cast<Tag>(payload_.index()); }
  const Payload& payload() const noexcept { return payload_; }

  template <typename T>
  const T* get_if() const noexcept {
    return std::get_if<T>(&payload_);
  }

  // Stable textual form; also the tie-breaker of the total order.
  std::string canonical() const;

  friend bool operator==(const ComponentValue&, const ComponentValue&) = default;
  friend std::strong_ordering operator<=>(const ComponentValue& a, const ComponentValue& b);

 private:
  Payload payload_;
};

}  // namespace factory::core
