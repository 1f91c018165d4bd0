#include "factory/core/bemap.hpp"

#include <algorithm>

#include "factory/core/error.hpp"

namespace factory::core {

BeMap BeMap::build(std::vector<Entry> entries) {
  std::set<ComponentId> keys;
  for (const auto& [key, value] : entries) {
    if (!keys.insert(key).second) {
      throw Error(ErrorCode::DuplicateKey, key.str());
    }
  }
  return BeMap(std::move(entries));
}

const ComponentValue* BeMap::find(const ComponentId& key) const noexcept {
  auto it = std::find_if(entries_.begin(), entries_.end(), [&](const Entry& e) { return e.first == key; });
  return it == entries_.end() ? nullptr : &it->second;
}

std::optional<ComponentValue> BeMap::lookup(const ComponentId& key) const {
  if (const auto* v = find(key)) {
    return *v;
  }
  return std::nullopt;
}

std::optional<ComponentValue> BeMap::lookup(std::string_view key) const {
  auto it = std::find_if(entries_.begin(), entries_.end(), [&](const Entry& e) { return e.first.str() == key; });
  if (it == entries_.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::set<ComponentId> BeMap::premises() const {
  std::set<ComponentId> out;
  for (const auto& e : entries_) out.insert(e.first);
  return out;
}

std::set<ComponentValue> BeMap::conclusions() const {
  std::set<ComponentValue> out;
  for (const auto& e : entries_) out.insert(e.second);
  return out;
}

std::set<Term> BeMap::elements() const {
  std::set<Term> out;
  for (const auto& e : entries_) {
    out.insert(Term::atom(e.first));
    out.insert(Term::atom(e.second));
  }
  return out;
}

std::optional<Term> BeMap::to_term() const {
  if (entries_.empty()) {
    return std::nullopt;
  }
  std::vector<Term> implications;
  implications.reserve(entries_.size());
  for (const auto& [key, value] : entries_) {
    implications.push_back(Term::implies(Term::atom(key), Term::atom(value)));
  }
  return Term::big_and(std::move(implications));
}

}  // namespace factory::core
