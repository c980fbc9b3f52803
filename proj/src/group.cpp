#include "zerosum/group.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "zerosum/error.hpp"

namespace zerosum {

long gcd_long(long a, long b) { return std::gcd(a, b); }

long lcm_long(long a, long b) { return (a == 0 || b == 0) ? 0 : std::lcm(a, b); }

long mod_floor(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

namespace {

long pow_mod(long base, long exp, long n) {
  if (n == 1) return 0;
  long result = 1 % n;
  long b = mod_floor(base, n);
  while (exp > 0) {
    if (exp & 1) result = result * b % n;
    b = b * b % n;
    exp >>= 1;
  }
  return result;
}

std::string metacyclic_label(int a, int b) {
  if (a == 0 && b == 0) return "1";
  std::string out;
  if (a != 0) out += a == 1 ? "x" : "x^" + std::to_string(a);
  if (b != 0) {
    if (!out.empty()) out += "*";
    out += b == 1 ? "y" : "y^" + std::to_string(b);
  }
  return out;
}

}  // namespace

MetacyclicParams MetacyclicParams::make(long m, long n, long s) {
  if (m < 1 || n < 1) throw Error("metacyclic parameters need m >= 1 and n >= 1");
  if (static_cast<unsigned long>(m) * static_cast<unsigned long>(n) > FiniteGroup::kMaxOrder)
    throw Error("group order " + std::to_string(m * n) + " exceeds the table limit " +
                std::to_string(FiniteGroup::kMaxOrder));
  long reduced = mod_floor(s, n);
  if (pow_mod(reduced, m, n) != 1 % n) {
    std::string why = "G_{" + std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(s) +
                      "} does not exist: s^m != 1 (mod n)";
    if (gcd_long(reduced, n) == 1) {
      why += "; ord_" + std::to_string(n) + "(" + std::to_string(s) + ") = " + std::to_string(ord_mod(reduced, n)) +
             " does not divide m = " + std::to_string(m);
    } else {
      why += "; s is not a unit modulo n, so ord_n(s) is undefined";
    }
    throw Error(why);
  }
  return MetacyclicParams{static_cast<int>(m), static_cast<int>(n), static_cast<int>(reduced)};
}

int ord_mod(long s, long n) {
  if (n < 1) throw Error("ord_mod: modulus must be positive");
  long r = mod_floor(s, n);
  if (gcd_long(r, n) != 1) throw Error("ord_mod: " + std::to_string(s) + " is not a unit modulo " + std::to_string(n));
  if (n == 1) return 1;
  int k = 1;
  long power = r;
  while (power != 1) {
    power = power * r % n;
    ++k;
  }
  return k;
}

GroupPtr FiniteGroup::metacyclic(const MetacyclicParams& p) {
  // Re-validate: callers may aggregate-initialise the struct directly.
  const auto params = MetacyclicParams::make(p.m, p.n, p.s);
  const auto m = static_cast<std::size_t>(params.m);
  const auto n = static_cast<std::size_t>(params.n);
  const std::size_t order = m * n;

  std::vector<long> s_pow(m);
  for (std::size_t c = 0; c < m; ++c) s_pow[c] = pow_mod(params.s, static_cast<long>(c), params.n);

  std::shared_ptr<FiniteGroup> g(new FiniteGroup());
  g->order_ = order;
  g->params_ = params;
  g->table_.resize(order * order);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t lhs = a * n + b;
      for (std::size_t c = 0; c < m; ++c) {
        const std::size_t shifted = static_cast<std::size_t>(static_cast<long>(b) * s_pow[c] % params.n);
        for (std::size_t d = 0; d < n; ++d) {
          const std::size_t rhs = c * n + d;
          const std::size_t prod = ((a + c) % m) * n + (shifted + d) % n;
          g->table_[lhs * order + rhs] = static_cast<std::uint32_t>(prod);
        }
      }
    }
  }
  g->labels_.reserve(order);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < n; ++b) g->labels_.push_back(metacyclic_label(static_cast<int>(a), static_cast<int>(b)));
  if (order > 1) {
    if (m > 1) g->generators_.push_back(Element{static_cast<std::uint32_t>(n)});
    if (n > 1) g->generators_.push_back(Element{1});
  }
  g->finish();
  return g;
}

GroupPtr FiniteGroup::from_table(const std::vector<std::vector<std::uint32_t>>& table, std::vector<std::string> labels) {
  const std::size_t order = table.size();
  if (order == 0) throw Error("group table is empty");
  if (order > kMaxOrder) throw Error("group table exceeds the order limit");
  std::shared_ptr<FiniteGroup> g(new FiniteGroup());
  g->order_ = order;
  g->table_.reserve(order * order);
  for (const auto& row : table) {
    if (row.size() != order) throw Error("group table is not square");
    for (auto v : row) {
      if (v >= order) throw Error("group table entry out of range");
      g->table_.push_back(v);
    }
  }
  bool found = false;
  for (std::size_t e = 0; e < order && !found; ++e) {
    bool ok = true;
    for (std::size_t i = 0; i < order && ok; ++i)
      ok = table[e][i] == i && table[i][e] == i;
    if (ok) {
      g->identity_ = Element{static_cast<std::uint32_t>(e)};
      found = true;
    }
  }
  if (!found) throw Error("group table has no identity element");

  if (labels.empty()) {
    for (std::size_t i = 0; i < order; ++i)
      labels.push_back(i == g->identity_.code ? std::string("1") : "g" + std::to_string(i));
  } else if (labels.size() != order) {
    throw Error("label count does not match group order");
  }
  g->labels_ = std::move(labels);
  g->finish();

  const auto axioms = check_axioms(*g);
  if (!axioms.identity_ok || !axioms.inverse_ok || !axioms.associative)
    throw Error("table does not define a group (axiom check failed)");

  // Greedy generating set in code order.
  ElementSet span(order);
  span.insert(g->identity_);
  for (std::uint32_t c = 0; c < order; ++c) {
    if (span.contains(Element{c})) continue;
    g->generators_.push_back(Element{c});
    // Closure of the current generators.
    std::vector<Element> frontier = span.elements();
    while (!frontier.empty()) {
      std::vector<Element> next;
      for (auto h : frontier) {
        for (auto gen : g->generators_) {
          auto p = g->mul(h, gen);
          if (!span.contains(p)) {
            span.insert(p);
            next.push_back(p);
          }
        }
      }
      frontier = std::move(next);
    }
  }
  return g;
}

void FiniteGroup::finish() {
  inverse_.assign(order_, 0);
  std::vector<bool> seen(order_, false);
  for (std::size_t g = 0; g < order_; ++g) {
    for (std::size_t h = 0; h < order_; ++h) {
      if (table_[g * order_ + h] == identity_.code) {
        inverse_[g] = static_cast<std::uint32_t>(h);
        seen[g] = true;
        break;
      }
    }
    if (!seen[g]) throw Error("element " + std::to_string(g) + " has no inverse");
  }
}

Element FiniteGroup::pow(Element g, long k) const {
  if (k < 0) {
    g = inverse(g);
    k = -k;
  }
  Element result = identity_;
  Element base = g;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

std::vector<Element> FiniteGroup::elements() const {
  std::vector<Element> out(order_);
  for (std::size_t i = 0; i < order_; ++i) out[i] = Element{static_cast<std::uint32_t>(i)};
  return out;
}

Element FiniteGroup::element(long a, long b) const {
  if (!params_) throw Error("x^a y^b notation needs a metacyclic group");
  const long m = params_->m;
  const long n = params_->n;
  return Element{static_cast<std::uint32_t>(mod_floor(a, m) * n + mod_floor(b, n))};
}

std::pair<int, int> FiniteGroup::exponents(Element g) const {
  if (!params_) throw Error("x^a y^b notation needs a metacyclic group");
  return {static_cast<int>(g.code / params_->n), static_cast<int>(g.code % params_->n)};
}

bool FiniteGroup::same_as(const FiniteGroup& other) const noexcept {
  return this == &other || (order_ == other.order_ && identity_ == other.identity_ && table_ == other.table_);
}

GroupPtr mk_metacyclic(const MetacyclicParams& params) { return FiniteGroup::metacyclic(params); }

GroupPtr mk_cyclic(int n) { return FiniteGroup::metacyclic(MetacyclicParams::make(1, n, 1)); }

std::size_t element_order(const FiniteGroup& group, Element g) {
  std::size_t k = 1;
  Element power = g;
  while (power != group.identity()) {
    power = group.mul(power, g);
    ++k;
  }
  return k;
}

Subgroup subgroup_generated(const GroupPtr& group, std::span<const Element> gens) {
  Subgroup out;
  out.parent = group;
  out.members = ElementSet(group->order());
  out.members.insert(group->identity());
  for (auto g : gens) {
    if (!group->contains(g)) throw Error("generator is not an element of the group");
    if (g != group->identity()) out.generators.push_back(g);
  }

  std::vector<Element> frontier{group->identity()};
  while (!frontier.empty()) {
    std::vector<Element> next;
    for (auto h : frontier) {
      for (auto g : out.generators) {
        auto p = group->mul(h, g);
        if (!out.members.contains(p)) {
          out.members.insert(p);
          next.push_back(p);
        }
      }
    }
    frontier = std::move(next);
  }

  out.normal = true;
  for (auto g : group->generators()) {
    for (auto h : out.generators) {
      if (!out.members.contains(group->conjugate(g, h))) {
        out.normal = false;
        break;
      }
    }
    if (!out.normal) break;
  }
  return out;
}

Quotient quotient(const Subgroup& h) {
  if (!h.normal) throw Error("quotient requires a normal subgroup");
  const auto& g = *h.parent;
  constexpr std::uint32_t kUnassigned = 0xFFFFFFFFu;
  Quotient out;
  out.projection.assign(g.order(), kUnassigned);
  std::vector<Element> reps;
  const auto members = h.elements();
  for (auto e : g.elements()) {
    if (out.projection[e.code] != kUnassigned) continue;
    const auto id = static_cast<std::uint32_t>(reps.size());
    reps.push_back(e);
    for (auto m : members) out.projection[g.mul(e, m).code] = id;
  }
  const std::size_t q = reps.size();
  std::vector<std::vector<std::uint32_t>> table(q, std::vector<std::uint32_t>(q));
  std::vector<std::string> labels;
  labels.reserve(q);
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t j = 0; j < q; ++j) table[i][j] = out.projection[g.mul(reps[i], reps[j]).code];
    labels.push_back(reps[i] == g.identity() ? std::string("1") : "[" + g.label(reps[i]) + "]");
  }
  out.group = FiniteGroup::from_table(table, std::move(labels));
  return out;
}

bool is_abelian(const FiniteGroup& group) {
  const auto& gens = group.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (group.mul(gens[i], gens[j]) != group.mul(gens[j], gens[i])) return false;
  return true;
}

bool is_cyclic(const FiniteGroup& group) {
  for (auto g : group.elements())
    if (element_order(group, g) == group.order()) return true;
  return false;
}

bool is_klein_four(const FiniteGroup& group) {
  if (group.order() != 4) return false;
  for (auto g : group.elements())
    if (group.mul(g, g) != group.identity()) return false;
  return true;
}

bool verify_dicyclic_presentation(int n) {
  if (n < 3 || n % 2 == 0) throw Error("dicyclic presentation check needs an odd n >= 3");
  auto g = mk_metacyclic(MetacyclicParams::make(4, n, -1));
  const Element x = g->element(1, 0);
  const Element z = g->element(2, 1);  // x^2 y
  const bool order_ok = element_order(*g, z) == static_cast<std::size_t>(2 * n);
  const bool square_ok = g->pow(z, n) == g->element(2, 0);
  const bool twist_ok = g->mul(z, x) == g->mul(x, g->inverse(z));
  return order_ok && square_ok && twist_ok;
}

AxiomReport check_axioms(const FiniteGroup& group, std::size_t samples) {
  AxiomReport report;
  const std::size_t n = group.order();
  const Element e = group.identity();
  for (auto g : group.elements()) {
    if (group.mul(e, g) != g || group.mul(g, e) != g) report.identity_ok = false;
    if (group.mul(g, group.inverse(g)) != e || group.mul(group.inverse(g), g) != e) report.inverse_ok = false;
  }
  auto assoc = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    const Element x{a}, y{b}, z{c};
    return group.mul(group.mul(x, y), z) == group.mul(x, group.mul(y, z));
  };
  if (n <= 64) {
    for (std::uint32_t a = 0; a < n && report.associative; ++a)
      for (std::uint32_t b = 0; b < n && report.associative; ++b)
        for (std::uint32_t c = 0; c < n; ++c)
          if (!assoc(a, b, c)) {
            report.associative = false;
            break;
          }
  } else {
    report.exhaustive = false;
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(n - 1));
    for (std::size_t i = 0; i < samples; ++i)
      if (!assoc(pick(rng), pick(rng), pick(rng))) {
        report.associative = false;
        break;
      }
  }
  return report;
}

nlohmann::json group_to_json(const FiniteGroup& group) {
  if (const auto& p = group.metacyclic_params()) return {{"m", p->m}, {"n", p->n}, {"s", p->s}};
  nlohmann::json rows = nlohmann::json::array();
  const auto t = group.table();
  for (std::size_t i = 0; i < group.order(); ++i)
    rows.push_back(std::vector<std::uint32_t>(t.begin() + static_cast<long>(i * group.order()),
                                              t.begin() + static_cast<long>((i + 1) * group.order())));
  return {{"table", rows}};
}

GroupPtr group_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error("group descriptor must be a JSON object");
  if (j.contains("table")) {
    auto table = j.at("table").get<std::vector<std::vector<std::uint32_t>>>();
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    return FiniteGroup::from_table(table, std::move(labels));
  }
  if (j.contains("m") && j.contains("n") && j.contains("s"))
    return mk_metacyclic(MetacyclicParams::make(j.at("m").get<long>(), j.at("n").get<long>(), j.at("s").get<long>()));
  throw Error("group descriptor needs either m/n/s or table");
}

std::string describe(const FiniteGroup& group) {
  if (const auto& p = group.metacyclic_params())
    return "G(" + std::to_string(p->m) + "," + std::to_string(p->n) + "," + std::to_string(p->s) + ")";
  return "table(" + std::to_string(group.order()) + ")";
}

}  // namespace zerosum
