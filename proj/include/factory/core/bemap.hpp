#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "factory/core/component.hpp"
#include "factory/core/term.hpp"
#include "factory/core/value.hpp"

namespace factory::core {

// Conjunction of key ==> value implications with unique keys; behaves as an
// insertion-ordered finite map.
class BeMap {
 public:
  using Entry = std::pair<ComponentId, ComponentValue>;

  BeMap() = default;

  // Throws DuplicateKey when a key appears twice.
  static BeMap build(std::vector<Entry> entries);

  std::optional<ComponentValue> lookup(const ComponentId& key) const;
  std::optional<ComponentValue> lookup(std::string_view key) const;
  const ComponentValue* find(const ComponentId& key) const noexcept;

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  std::set<ComponentId> premises() const;
  std::set<ComponentValue> conclusions() const;
  // Premises and conclusions as atoms.
  std::set<Term> elements() const;

  // BIGAND(IMPLIES(Component, ComponentValue), ...); absent for the empty map.
  std::optional<Term> to_term() const;

  friend bool operator==(const BeMap&, const BeMap&) = default;

 private:
  explicit BeMap(std::vector<Entry> entries) : entries_(std::move(entries)) {}

  std::vector<Entry> entries_;
};

}  // namespace factory::core
