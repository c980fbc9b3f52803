#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "zerosum/group.hpp"

namespace zerosum {

/// An unordered sequence (multiset) of group elements. Multiplicities are
/// kept sparse and keyed by element code, which is also the canonical term
/// order used for formatting: ascending (a, b) for metacyclic groups.
class GroupSequence {
 public:
  explicit GroupSequence(GroupPtr group);

  static GroupSequence from_terms(GroupPtr group, std::span<const Element> terms);

  const FiniteGroup& group() const noexcept { return *group_; }
  const GroupPtr& group_ptr() const noexcept { return group_; }

  std::size_t length() const noexcept { return length_; }
  bool empty() const noexcept { return length_ == 0; }
  std::size_t distinct() const noexcept { return mult_.size(); }

  std::size_t multiplicity(Element g) const;
  const std::map<Element, std::size_t>& multiplicities() const noexcept { return mult_; }

  /// Terms expanded in canonical order.
  std::vector<Element> terms() const;

  void add(Element g, std::size_t count = 1);

  /// T | S.
  bool divides(const GroupSequence& s) const;

  friend bool operator==(const GroupSequence& lhs, const GroupSequence& rhs) {
    return lhs.group_->same_as(*rhs.group_) && lhs.mult_ == rhs.mult_;
  }
  /// Lexicographic on the canonical term list.
  friend bool operator<(const GroupSequence& lhs, const GroupSequence& rhs) { return lhs.terms() < rhs.terms(); }

 private:
  GroupPtr group_;
  std::map<Element, std::size_t> mult_;
  std::size_t length_ = 0;
};

GroupSequence concat(const GroupSequence& s, const GroupSequence& t);

/// S . T^[-1]; throws when T does not divide S.
GroupSequence subtract(const GroupSequence& s, const GroupSequence& t);

/// S_K: the terms of S lying in K, with multiplicity.
GroupSequence restrict_to(const GroupSequence& s, const ElementSet& k);

/// Image of S in G/H.
GroupSequence project(const GroupSequence& s, const Quotient& q);
GroupSequence project(const GroupSequence& s, const Subgroup& h);

std::string format_element(const FiniteGroup& group, Element g);
Element parse_element(const FiniteGroup& group, std::string_view text);

/// Text form: terms joined by "·" (or "."), each optionally followed by a
/// multiplicity "^[k]". Metacyclic terms are "1", "x^a", "y^b", "x^a*y^b"
/// (exponent 1 may be omitted); other groups use their element labels.
/// A term with an exponent is parenthesised when a multiplicity follows,
/// e.g. "(x*y^2)^[3]".
std::string format_sequence(const GroupSequence& s);
GroupSequence parse_sequence(GroupPtr group, std::string_view text);

/// {"terms":[{"a":..,"b":..,"mult":..}]}; non-metacyclic groups use "code".
nlohmann::json sequence_to_json(const GroupSequence& s);
GroupSequence sequence_from_json(GroupPtr group, const nlohmann::json& j);

/// Product of the terms in the given order.
Element ordered_product(const FiniteGroup& group, std::span<const Element> terms);

}  // namespace zerosum
