#include "factory/core/term.hpp"

#include <algorithm>

#include "factory/core/error.hpp"

namespace factory::core {

namespace {

std::string quoted(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') {
      out += '\\';
    }
    out += c;
  }
  out += '"';
  return out;
}

std::string canonical_state(const DeviceState& s) {
  return "State(" + quoted(s.name) + "," + std::string(to_string(s.signal)) + ")";
}

std::string canonical_box(const Box3D& b) {
  return "Occupy3DBox(" + std::to_string(b.x1()) + "," + std::to_string(b.y1()) + "," +
         std::to_string(b.z1()) + "," + std::to_string(b.x2()) + "," + std::to_string(b.y2()) + "," +
         std::to_string(b.z2()) + ")";
}

struct ValuePrinter {
  std::string operator()(const std::string& s) const { return quoted(s); }
  std::string operator()(std::int64_t n) const { return std::to_string(n); }
  std::string operator()(const Box3D& b) const { return canonical_box(b); }
  std::string operator()(const VariationSet& v) const {
    std::string out = "XOR" + quoted(v.name()) + "[";
    for (std::size_t i = 0; i < v.positions().size(); ++i) {
      if (i) out += ",";
      out += quoted(v.positions()[i]);
    }
    return out + "]";
  }
  std::string operator()(const SignalMapping& m) const {
    return "SignalTo{High->" + canonical_state(m.on_high()) + ",Low->" + canonical_state(m.on_low()) + "}";
  }
  std::string operator()(const DeviceState& s) const { return canonical_state(s); }
};

struct AtomPrinter {
  std::string operator()(const ComponentId& c) const { return "Component(" + quoted(c.str()) + ")"; }
  std::string operator()(const ComponentValue& v) const { return "ComponentValue(" + v.canonical() + ")"; }
  std::string operator()(const TimePoint& t) const { return "TimePoint(" + std::to_string(t.ms) + ")"; }
  std::string operator()(const TimeInterval& i) const {
    return "TimeInterval(" + std::to_string(i.first().ms) + "," + std::to_string(i.second().ms) + ")";
  }
  std::string operator()(const Box3D& b) const { return canonical_box(b); }
  std::string operator()(const DeviceState& s) const { return canonical_state(s); }
  std::string operator()(const NamedAtom& a) const { return "Atom(" + quoted(a.name) + ")"; }
};

}  // namespace

std::string ComponentValue::canonical() const { return std::visit(ValuePrinter{}, payload_); }

std::strong_ordering operator<=>(const ComponentValue& a, const ComponentValue& b) {
  if (auto c = a.payload_.index() <=> b.payload_.index(); c != 0) {
    return c;
  }
  return a.canonical() <=> b.canonical();
}

Term::Term(Kind kind, std::optional<AtomPayload> atom, std::vector<Term> terms)
    : kind_(kind), atom_(std::move(atom)), terms_(std::move(terms)) {}

Term Term::atom(AtomPayload payload) { return Term(Kind::Atom, std::move(payload), {}); }

Term Term::big_and(std::vector<Term> terms) {
  if (terms.empty()) {
    throw Error(ErrorCode::InvalidArgument, "BIGAND needs at least one term");
  }
  return Term(Kind::BigAnd, std::nullopt, std::move(terms));
}

Term Term::exclusive_or(std::vector<Term> terms) {
  if (terms.empty()) {
    throw Error(ErrorCode::InvalidArgument, "XOR needs at least one term");
  }
  return Term(Kind::Xor, std::nullopt, std::move(terms));
}

Term Term::implies(Term premise, Term conclusion) {
  std::vector<Term> both;
  both.reserve(2);
  both.push_back(std::move(premise));
  both.push_back(std::move(conclusion));
  return Term(Kind::Implies, std::nullopt, std::move(both));
}

const Term& Term::premise() const {
  if (kind_ != Kind::Implies) {
    throw Error(ErrorCode::InvalidArgument, "premise() on a non-implication");
  }
  return terms_[0];
}

const Term& Term::conclusion() const {
  if (kind_ != Kind::Implies) {
    throw Error(ErrorCode::InvalidArgument, "conclusion() on a non-implication");
  }
  return terms_[1];
}

std::string Term::canonical() const {
  if (kind_ == Kind::Atom) {
    return std::visit(AtomPrinter{}, *atom_);
  }
  std::string out(to_string(kind_));
  out += "(";
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) out += ",";
    out += terms_[i].canonical();
  }
  return out + ")";
}

bool operator==(const Term& a, const Term& b) {
  return a.kind_ == b.kind_ && a.atom_ == b.atom_ && a.terms_ == b.terms_;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) {
    return c;
  }
  return a.canonical() <=> b.canonical();
}

std::string_view to_string(Term::Kind kind) {
  switch (kind) {
    case Term::Kind::Atom: return "ATOM";
    case Term::Kind::BigAnd: return "BIGAND";
    case Term::Kind::Xor: return "XOR";
    case Term::Kind::Implies: return "IMPLIES";
  }
  return "ATOM";
}

bool xor_check(const Term& xor_term, const std::set<Term>& active) {
  if (xor_term.kind() != Term::Kind::Xor) {
    throw Error(ErrorCode::InvalidArgument, "xor_check expects an XOR term");
  }
  const auto& members = xor_term.terms();
  for (const auto& t : active) {
    if (std::find(members.begin(), members.end(), t) == members.end()) {
      throw Error(ErrorCode::NotAMember, t.canonical() + " is not a member of " + xor_term.canonical());
    }
  }
  return active.size() == 1;
}

Term to_term(const VariationSet& variations) {
  std::vector<Term> members;
  members.reserve(variations.positions().size());
  for (const auto& p : variations.positions()) {
    members.push_back(Term::atom(ComponentValue(ComponentValue::Payload(p))));
  }
  return Term::exclusive_or(std::move(members));
}

}  // namespace factory::core
