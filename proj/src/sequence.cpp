#include "zerosum/sequence.hpp"

#include <cctype>
#include <charconv>
#include <utility>

#include "zerosum/error.hpp"

namespace zerosum {

GroupSequence::GroupSequence(GroupPtr group) : group_(std::move(group)) {
  if (!group_) throw Error("sequence needs a group");
}

GroupSequence GroupSequence::from_terms(GroupPtr group, std::span<const Element> terms) {
  GroupSequence out(std::move(group));
  for (auto g : terms) out.add(g);
  return out;
}

std::size_t GroupSequence::multiplicity(Element g) const {
  auto it = mult_.find(g);
  return it == mult_.end() ? 0 : it->second;
}

std::vector<Element> GroupSequence::terms() const {
  std::vector<Element> out;
  out.reserve(length_);
  for (const auto& [g, k] : mult_) out.insert(out.end(), k, g);
  return out;
}

void GroupSequence::add(Element g, std::size_t count) {
  if (!group_->contains(g)) throw Error("term is not an element of the sequence's group");
  if (count == 0) return;
  mult_[g] += count;
  length_ += count;
}

bool GroupSequence::divides(const GroupSequence& s) const {
  if (!group_->same_as(s.group())) return false;
  for (const auto& [g, k] : mult_)
    if (s.multiplicity(g) < k) return false;
  return true;
}

namespace {

void require_same_group(const GroupSequence& s, const GroupSequence& t) {
  if (!s.group().same_as(t.group())) throw Error("sequences are over different groups");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

long parse_integer(std::string_view text, std::string_view what) {
  text = trim(text);
  long value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last)
    throw Error("malformed " + std::string(what) + ": '" + std::string(text) + "'");
  return value;
}

// Splits on "·" (U+00B7) or '.'.
std::vector<std::string_view> split_terms(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '.') {
      parts.push_back(text.substr(start, i - start));
      start = ++i;
    } else if (static_cast<unsigned char>(text[i]) == 0xC2 && i + 1 < text.size() &&
               static_cast<unsigned char>(text[i + 1]) == 0xB7) {
      parts.push_back(text.substr(start, i - start));
      i += 2;
      start = i;
    } else {
      ++i;
    }
  }
  parts.push_back(text.substr(start));
  return parts;
}

Element parse_metacyclic_element(const FiniteGroup& group, std::string_view text) {
  const auto& p = *group.metacyclic_params();
  if (text == "1") return group.identity();
  long a = 0;
  long b = 0;
  bool seen_x = false;
  bool seen_y = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto star = text.find('*', pos);
    auto factor = trim(text.substr(pos, star == std::string_view::npos ? std::string_view::npos : star - pos));
    if (factor.empty()) throw Error("malformed term '" + std::string(text) + "'");
    const char base = factor.front();
    long exp = 1;
    if (factor.size() > 1) {
      if (factor[1] != '^') throw Error("malformed term '" + std::string(text) + "'");
      exp = parse_integer(factor.substr(2), "exponent");
    }
    if (base == 'x' && !seen_x && !seen_y) {
      if (exp < 0 || exp >= p.m)
        throw Error("exponent of x out of range [0," + std::to_string(p.m - 1) + "] in '" + std::string(text) + "'");
      a = exp;
      seen_x = true;
    } else if (base == 'y' && !seen_y) {
      if (exp < 0 || exp >= p.n)
        throw Error("exponent of y out of range [0," + std::to_string(p.n - 1) + "] in '" + std::string(text) + "'");
      b = exp;
      seen_y = true;
    } else {
      throw Error("malformed term '" + std::string(text) + "' (expected x^a*y^b)");
    }
    if (star == std::string_view::npos) break;
    pos = star + 1;
  }
  return group.element(a, b);
}

}  // namespace

GroupSequence concat(const GroupSequence& s, const GroupSequence& t) {
  require_same_group(s, t);
  GroupSequence out = s;
  for (const auto& [g, k] : t.multiplicities()) out.add(g, k);
  return out;
}

GroupSequence subtract(const GroupSequence& s, const GroupSequence& t) {
  require_same_group(s, t);
  GroupSequence out(s.group_ptr());
  for (const auto& [g, k] : t.multiplicities()) {
    if (s.multiplicity(g) < k)
      throw Error("subtrahend does not divide the sequence: v_" + s.group().label(g) + " is " +
                  std::to_string(s.multiplicity(g)) + " < " + std::to_string(k));
  }
  for (const auto& [g, k] : s.multiplicities()) out.add(g, k - t.multiplicity(g));
  return out;
}

GroupSequence restrict_to(const GroupSequence& s, const ElementSet& k) {
  GroupSequence out(s.group_ptr());
  for (const auto& [g, v] : s.multiplicities())
    if (k.contains(g)) out.add(g, v);
  return out;
}

GroupSequence project(const GroupSequence& s, const Quotient& q) {
  if (q.projection.size() != s.group().order()) throw Error("quotient does not belong to the sequence's group");
  GroupSequence out(q.group);
  for (const auto& [g, v] : s.multiplicities()) out.add(q.project(g), v);
  return out;
}

GroupSequence project(const GroupSequence& s, const Subgroup& h) {
  if (!h.parent->same_as(s.group())) throw Error("subgroup does not belong to the sequence's group");
  return project(s, quotient(h));
}

std::string format_element(const FiniteGroup& group, Element g) { return group.label(g); }

Element parse_element(const FiniteGroup& group, std::string_view text) {
  text = trim(text);
  if (text.empty()) throw Error("empty term");
  if (group.is_metacyclic()) return parse_metacyclic_element(group, text);
  for (auto g : group.elements())
    if (group.label(g) == text) return g;
  if (text.front() == 'g') {
    const long code = parse_integer(text.substr(1), "element code");
    if (code < 0 || static_cast<std::size_t>(code) >= group.order())
      throw Error("element code out of range in '" + std::string(text) + "'");
    return Element{static_cast<std::uint32_t>(code)};
  }
  throw Error("unknown element '" + std::string(text) + "'");
}

std::string format_sequence(const GroupSequence& s) {
  std::string out;
  for (const auto& [g, k] : s.multiplicities()) {
    if (!out.empty()) out += "·";
    const auto& label = s.group().label(g);
    if (k == 1) {
      out += label;
    } else {
      const bool wrap = label.find_first_of("^*") != std::string::npos;
      out += wrap ? "(" + label + ")" : label;
      out += "^[" + std::to_string(k) + "]";
    }
  }
  return out;
}

GroupSequence parse_sequence(GroupPtr group, std::string_view text) {
  GroupSequence out(group);
  text = trim(text);
  if (text.empty()) return out;
  for (auto raw : split_terms(text)) {
    auto term = trim(raw);
    if (term.empty()) throw Error("malformed sequence: empty term in '" + std::string(text) + "'");
    long mult = 1;
    if (term.back() == ']') {
      const auto open = term.rfind("^[");
      if (open == std::string_view::npos) throw Error("malformed multiplicity in '" + std::string(term) + "'");
      mult = parse_integer(term.substr(open + 2, term.size() - open - 3), "multiplicity");
      if (mult < 0) throw Error("negative multiplicity in '" + std::string(term) + "'");
      term = trim(term.substr(0, open));
    }
    if (term.size() >= 2 && term.front() == '(' && term.back() == ')') term = trim(term.substr(1, term.size() - 2));
    out.add(parse_element(*group, term), static_cast<std::size_t>(mult));
  }
  return out;
}

nlohmann::json sequence_to_json(const GroupSequence& s) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [g, k] : s.multiplicities()) {
    if (s.group().is_metacyclic()) {
      auto [a, b] = s.group().exponents(g);
      terms.push_back({{"a", a}, {"b", b}, {"mult", k}});
    } else {
      terms.push_back({{"code", g.code}, {"mult", k}});
    }
  }
  return {{"terms", terms}};
}

GroupSequence sequence_from_json(GroupPtr group, const nlohmann::json& j) {
  GroupSequence out(group);
  for (const auto& t : j.at("terms")) {
    Element g{};
    if (t.contains("code")) {
      const auto code = t.at("code").get<long>();
      if (code < 0 || static_cast<std::size_t>(code) >= group->order()) throw Error("element code out of range");
      g = Element{static_cast<std::uint32_t>(code)};
    } else {
      const auto& p = group->metacyclic_params();
      if (!p) throw Error("a/b terms need a metacyclic group");
      const long a = t.at("a").get<long>();
      const long b = t.at("b").get<long>();
      if (a < 0 || a >= p->m || b < 0 || b >= p->n) throw Error("exponent out of range in JSON term");
      g = group->element(a, b);
    }
    const long k = t.at("mult").get<long>();
    if (k < 0) throw Error("negative multiplicity in JSON term");
    out.add(g, static_cast<std::size_t>(k));
  }
  return out;
}

Element ordered_product(const FiniteGroup& group, std::span<const Element> terms) {
  Element acc = group.identity();
  for (auto g : terms) acc = group.mul(acc, g);
  return acc;
}

}  // namespace zerosum
