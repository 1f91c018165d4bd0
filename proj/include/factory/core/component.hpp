#pragma once

#include <compare>
#include <string>

namespace factory::core {

// Device or concept name. Keys of descriptions and nodes of topologies.
class ComponentId {
 public:
  explicit ComponentId(std::string id);

  const std::string& str() const noexcept { return id_; }

  friend bool operator==(const ComponentId&, const ComponentId&) = default;
  friend std::strong_ordering operator<=>(const ComponentId&, const ComponentId&) = default;

 private:
  std::string id_;
};

}  // namespace factory::core
