#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "zerosum/element_set.hpp"
#include "zerosum/group.hpp"
#include "zerosum/sequence.hpp"

namespace zerosum {

/// Per-distinct-term usage counts of a sub-multiset, aligned with
/// ReachabilityTable::distinct().
struct CountVector {
  std::vector<std::size_t> counts;

  std::size_t weight() const noexcept {
    std::size_t w = 0;
    for (auto c : counts) w += c;
    return w;
  }
  friend bool operator==(const CountVector&, const CountVector&) = default;
};

/// Which factor the lattice recursion conditions on. Both give the same
/// table; the first-factor variant exists as a cross-check.
enum class Conditioning { kLastFactor, kFirstFactor };

struct ReachOptions {
  std::size_t max_states = std::size_t{1} << 24;
  /// Entries of weight above this are left empty.
  std::optional<std::size_t> max_weight;
  Conditioning conditioning = Conditioning::kLastFactor;
};

/// Products over all orderings of every sub-multiset of a sequence.
///
/// The sub-multiset lattice is stored flat in mixed radix with the most
/// recently added distinct term as the most significant digit. Terms must be
/// pushed in non-decreasing code order; each push then only appends a block
/// of new states (those using the new term to its new multiplicity), and
/// pop() truncates it. Search code uses that to carry reach state along a
/// DFS path at the cost of one block per step.
///
///   reach(0) = {1}
///   reach(c) = U_{i : c_i >= 1} reach(c - e_i) . g_i
class ReachabilityTable {
 public:
  explicit ReachabilityTable(GroupPtr group, ReachOptions options = {});

  static ReachabilityTable build(const GroupSequence& s, ReachOptions options = {});

  const FiniteGroup& group() const noexcept { return *group_; }
  const GroupPtr& group_ptr() const noexcept { return group_; }

  /// Appends one term; returns the [begin, end) range of new states.
  std::pair<std::size_t, std::size_t> push(Element g);
  void pop();

  std::size_t length() const noexcept { return length_; }
  std::size_t state_count() const noexcept { return weights_.size(); }
  std::span<const Element> distinct() const noexcept { return distinct_; }
  std::span<const std::size_t> multiplicities() const noexcept { return mult_; }

  CountVector decode(std::size_t index) const;
  std::size_t encode(const CountVector& c) const;
  std::size_t weight(std::size_t index) const noexcept { return weights_[index]; }

  bool entry_contains(std::size_t index, Element g) const noexcept {
    return ((storage_[index * words_ + (g.code >> 6)] >> (g.code & 63)) & 1U) != 0;
  }
  ElementSet entry(std::size_t index) const;
  ElementSet at(const CountVector& c) const { return entry(encode(c)); }

  /// The sub-multiset a state stands for.
  GroupSequence subsequence(std::size_t index) const;

  /// First state in [begin, end) holding `target`, optionally only at a
  /// given weight. Zero state excluded.
  std::optional<std::size_t> find(Element target, std::size_t begin, std::size_t end,
                                  std::optional<std::size_t> at_weight = std::nullopt) const;

  /// An ordering of the state's terms whose product is `target`.
  std::vector<Element> realize(std::size_t index, Element target) const;

 private:
  void compute(std::size_t index);

  GroupPtr group_;
  ReachOptions options_;
  std::size_t words_ = 1;
  std::size_t length_ = 0;
  std::vector<Element> distinct_;
  std::vector<std::size_t> mult_;
  std::vector<std::size_t> stride_;
  std::vector<std::uint32_t> weights_;
  std::vector<std::uint64_t> storage_;
};

ReachabilityTable reach(const GroupSequence& s, ReachOptions options = {});

/// pi(S): all ordered products of the full sequence. S must be non-empty.
ElementSet pi_set(const GroupSequence& s, ReachOptions options = {});

/// Pi(S): union of pi(T) over non-empty T | S. S must be non-empty.
ElementSet big_pi_set(const GroupSequence& s, ReachOptions options = {});

bool is_product_one_free(const GroupSequence& s, ReachOptions options = {});

/// A non-empty product-one subsequence with an ordering realizing 1.
struct ProductOneWitness {
  GroupSequence subsequence;
  std::vector<Element> ordering;
};

std::optional<ProductOneWitness> find_product_one(const GroupSequence& s, ReachOptions options = {});

/// Product-one subsequence of length exactly k, if any. Requires 1 <= k <= |S|.
std::optional<ProductOneWitness> find_k_product_one(const GroupSequence& s, std::size_t k, ReachOptions options = {});

bool has_k_product_one(const GroupSequence& s, std::size_t k, ReachOptions options = {});

}  // namespace zerosum
