#pragma once

#include <compare>
#include <cstdint>

namespace factory::core {

// Milliseconds since epoch or since simulation start.
struct TimePoint {
  std::int64_t ms = 0;

  friend bool operator==(const TimePoint&, const TimePoint&) = default;
  friend std::strong_ordering operator<=>(const TimePoint&, const TimePoint&) = default;
};

class TimeInterval {
 public:
  TimeInterval(TimePoint first, TimePoint second);

  TimePoint first() const noexcept { return first_; }
  TimePoint second() const noexcept { return second_; }
  bool contains(TimePoint t) const noexcept { return first_ <= t && t <= second_; }

  friend bool operator==(const TimeInterval&, const TimeInterval&) = default;
  friend std::strong_ordering operator<=>(const TimeInterval&, const TimeInterval&) = default;

 private:
  TimePoint first_;
  TimePoint second_;
};

}  // namespace factory::core

namespace factory::core {

enum class TimeUnit { Seconds, Milliseconds };

inline constexpr std::int64_t to_milliseconds(std::int64_t amount, TimeUnit unit) noexcept {
  return unit == TimeUnit::Seconds ? amount * 1000 : amount;
}

}  // namespace factory::core
