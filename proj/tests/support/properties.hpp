#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace factory::testing {

struct PropertyResult {
  std::string name;
  std::size_t cases = 0;
  std::optional<std::string> counterexample;  // "case i (seed s): what"

  bool ok() const noexcept { return !counterexample; }
};

using PropertyFn = PropertyResult (*)(std::uint64_t seed, std::size_t cases);

struct Property {
  std::string_view name;
  PropertyFn run;
  std::size_t default_cases;
};

// Every randomized invariant of the toolkit. Each case derives its own generator
// from (seed, case index), so a counterexample is reproducible from its message.
const std::vector<Property>& all_properties();

// Throws std::out_of_range for an unknown name.
PropertyResult run_property(std::string_view name, std::uint64_t seed, std::size_t cases);
PropertyResult run_property(std::string_view name, std::uint64_t seed = 1);

}  // namespace factory::testing
