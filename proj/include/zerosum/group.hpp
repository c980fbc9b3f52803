#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "zerosum/element_set.hpp"

namespace zerosum {

/// Parameters of the split metacyclic group
///
///   G_{m,n,s} = C_n x|_s C_m = < x, y | x^m = y^n = 1, yx = x y^s >
///
/// `s` is stored reduced to [0, n-1]; `make` accepts any integer (s = -1 is
/// the usual way to write the dihedral and dicyclic cases) and rejects
/// triples with s^m != 1 (mod n), for which no such group exists.
struct MetacyclicParams {
  int m = 1;
  int n = 1;
  int s = 0;

  static MetacyclicParams make(long m, long n, long s);

  std::size_t order() const noexcept { return static_cast<std::size_t>(m) * static_cast<std::size_t>(n); }

  friend bool operator==(const MetacyclicParams&, const MetacyclicParams&) = default;
};

/// Multiplicative order of s modulo n. Throws when gcd(s, n) != 1.
int ord_mod(long s, long n);

long gcd_long(long a, long b);
long lcm_long(long a, long b);
long mod_floor(long a, long n);

/// A finite group stored as a full Cayley table over dense element codes.
///
/// Metacyclic groups use code a * n + b for x^a y^b and the product
///
///   (a, b) . (c, d) = (a + c mod m, b s^c + d mod n)
///
/// which follows from y^j x = x y^{js}. For example in the dihedral group
/// G_{2,3,2}, y . x = (0,1).(1,0) = (1, 1*2 + 0) = (1,2) = x y^2.
class FiniteGroup {
 public:
  /// Largest order for which a Cayley table is built.
  static constexpr std::size_t kMaxOrder = 2048;

  static std::shared_ptr<const FiniteGroup> metacyclic(const MetacyclicParams& params);

  /// `table[i][j]` is the code of i * j. Labels default to "1" for the
  /// identity and "g<i>" otherwise. Group axioms are validated: exhaustively
  /// for order <= 64, on a fixed-seed sample above that.
  static std::shared_ptr<const FiniteGroup> from_table(const std::vector<std::vector<std::uint32_t>>& table,
                                                       std::vector<std::string> labels = {});

  std::size_t order() const noexcept { return order_; }
  Element identity() const noexcept { return identity_; }

  Element mul(Element g, Element h) const noexcept {
    return Element{table_[static_cast<std::size_t>(g.code) * order_ + h.code]};
  }
  Element inverse(Element g) const noexcept { return Element{inverse_[g.code]}; }
  Element pow(Element g, long k) const;
  Element conjugate(Element g, Element h) const noexcept { return mul(mul(g, h), inverse(g)); }

  bool contains(Element g) const noexcept { return g.code < order_; }
  std::vector<Element> elements() const;

  const std::optional<MetacyclicParams>& metacyclic_params() const noexcept { return params_; }
  bool is_metacyclic() const noexcept { return params_.has_value(); }

  /// x^a y^b; metacyclic groups only. Exponents are reduced.
  Element element(long a, long b) const;
  std::pair<int, int> exponents(Element g) const;

  const std::string& label(Element g) const { return labels_[g.code]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Row-major Cayley table of codes.
  std::span<const std::uint32_t> table() const noexcept { return table_; }

  /// A generating set: {x, y} for metacyclic groups, a greedy set otherwise.
  const std::vector<Element>& generators() const noexcept { return generators_; }

  /// Structural equality (same Cayley table under the same coding).
  bool same_as(const FiniteGroup& other) const noexcept;

 private:
  FiniteGroup() = default;
  void finish();

  std::size_t order_ = 0;
  Element identity_{};
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> inverse_;
  std::vector<std::string> labels_;
  std::vector<Element> generators_;
  std::optional<MetacyclicParams> params_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

GroupPtr mk_metacyclic(const MetacyclicParams& params);
GroupPtr mk_cyclic(int n);

std::size_t element_order(const FiniteGroup& group, Element g);

struct Subgroup {
  GroupPtr parent;
  ElementSet members;
  std::vector<Element> generators;
  bool normal = false;

  std::size_t order() const noexcept { return members.size(); }
  bool contains(Element g) const noexcept { return members.contains(g); }
  std::vector<Element> elements() const { return members.elements(); }
};

Subgroup subgroup_generated(const GroupPtr& group, std::span<const Element> gens);

struct Quotient {
  GroupPtr group;
  std::vector<std::uint32_t> projection;  // parent code -> coset code

  Element project(Element g) const { return Element{projection[g.code]}; }
};

/// G / H. Coset codes follow the order of their least element, so the
/// identity coset is code 0 whenever the parent identity is code 0.
Quotient quotient(const Subgroup& normal_subgroup);

bool is_abelian(const FiniteGroup& group);
bool is_cyclic(const FiniteGroup& group);

/// Every non-identity element squares to the identity and the order is 4.
bool is_klein_four(const FiniteGroup& group);

/// Checks the three relations that identify G_{4,n,-1} with the dicyclic
/// group of order 4n: |x^2 y| = 2n, x^2 = (x^2 y)^n, (x^2 y) x = x (x^2 y)^{-1}.
bool verify_dicyclic_presentation(int n);

struct AxiomReport {
  bool identity_ok = true;
  bool inverse_ok = true;
  bool associative = true;
  bool exhaustive = true;
};

/// Exhaustive for order <= 64, otherwise `samples` random triples.
AxiomReport check_axioms(const FiniteGroup& group, std::size_t samples = 20000);

/// {"m":..,"n":..,"s":..} or {"table":[[..]]}.
nlohmann::json group_to_json(const FiniteGroup& group);
GroupPtr group_from_json(const nlohmann::json& j);

/// Stable one-line descriptor, e.g. "G(4,3,2)" or "table(6)".
std::string describe(const FiniteGroup& group);

}  // namespace zerosum
