#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "factory/core/box.hpp"
#include "factory/core/component.hpp"
#include "factory/core/state.hpp"
#include "factory/core/time.hpp"
#include "factory/core/value.hpp"

namespace factory::core {

// Atom that is only a name, e.g. a spatial position such as "Stack Ejector Retracted Position".
struct NamedAtom {
  std::string name;

  friend bool operator==(const NamedAtom&, const NamedAtom&) = default;
  friend std::strong_ordering operator<=>(const NamedAtom&, const NamedAtom&) = default;
};

using AtomPayload =
    std::variant<ComponentId, ComponentValue, TimePoint, TimeInterval, Box3D, DeviceState, NamedAtom>;

// Formula tree: atoms combined by conjunction, exclusive-or and implication.
// Ordered by (kind, canonical text) so terms can live in sets and serialize deterministically.
class Term {
 public:
  enum class Kind { Atom, BigAnd, Xor, Implies };

  static Term atom(AtomPayload payload);
  static Term big_and(std::vector<Term> terms);
  static Term exclusive_or(std::vector<Term> terms);
  static Term implies(Term premise, Term conclusion);

  Kind kind() const noexcept { return kind_; }

  // Null unless kind() == Atom.
  const AtomPayload* atom_payload() const noexcept { return atom_ ? &*atom_ : nullptr; }
  // Operands of BigAnd / Xor; {premise, conclusion} for Implies; empty for atoms.
  const std::vector<Term>& terms() const noexcept { return terms_; }
  const Term& premise() const;
  const Term& conclusion() const;

  std::string canonical() const;

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  Term(Kind kind, std::optional<AtomPayload> atom, std::vector<Term> terms);

  Kind kind_;
  std::optional<AtomPayload> atom_;
  std::vector<Term> terms_;
};

std::string_view to_string(Term::Kind kind);

// Exactly-one check over an Xor term. Throws NotAMember when `active` holds a term
// that is not an operand of `xor_term`, InvalidArgument when it is not an Xor.
bool xor_check(const Term& xor_term, const std::set<Term>& active);

// XOR(ComponentValue(position), ...) view of a variation set.
Term to_term(const VariationSet& variations);

}  // namespace factory::core
