#include "zerosum/productone.hpp"

#include <algorithm>
#include <string>

#include "zerosum/error.hpp"

namespace zerosum {

ReachabilityTable::ReachabilityTable(GroupPtr group, ReachOptions options)
    : group_(std::move(group)), options_(options) {
  if (!group_) throw Error("reachability table needs a group");
  words_ = (group_->order() + 63) / 64;
  weights_.push_back(0);
  storage_.assign(words_, 0);
  const auto e = group_->identity();
  storage_[e.code >> 6] |= std::uint64_t{1} << (e.code & 63);
}

ReachabilityTable ReachabilityTable::build(const GroupSequence& s, ReachOptions options) {
  std::size_t states = 1;
  for (const auto& [g, k] : s.multiplicities()) {
    if (states > options.max_states / (k + 1))
      throw BudgetExceeded("sub-multiset lattice exceeds " + std::to_string(options.max_states) + " states");
    states *= k + 1;
  }
  ReachabilityTable table(s.group_ptr(), options);
  table.storage_.reserve(states * table.words_);
  table.weights_.reserve(states);
  for (auto g : s.terms()) table.push(g);
  return table;
}

std::pair<std::size_t, std::size_t> ReachabilityTable::push(Element g) {
  if (!group_->contains(g)) throw Error("term is not an element of the table's group");
  const bool repeat = !distinct_.empty() && distinct_.back() == g;
  if (!repeat && !distinct_.empty() && g < distinct_.back())
    throw Error("reachability terms must be pushed in non-decreasing code order");

  const std::size_t total = state_count();
  std::size_t begin = 0;
  std::size_t stride = 0;
  if (repeat) {
    stride = stride_.back();
    begin = (mult_.back() + 1) * stride;
  } else {
    stride = total;
    begin = total;
  }
  const std::size_t end = begin + stride;
  if (end > options_.max_states)
    throw BudgetExceeded("sub-multiset lattice exceeds " + std::to_string(options_.max_states) + " states");

  if (repeat) {
    ++mult_.back();
  } else {
    distinct_.push_back(g);
    mult_.push_back(1);
    stride_.push_back(stride);
  }
  ++length_;

  weights_.resize(end);
  storage_.resize(end * words_, 0);
  for (std::size_t idx = begin; idx < end; ++idx) {
    weights_[idx] = weights_[idx - stride] + 1;
    compute(idx);
  }
  return {begin, end};
}

void ReachabilityTable::pop() {
  if (distinct_.empty()) throw Error("pop on an empty reachability table");
  std::size_t keep = 0;
  if (--mult_.back() == 0) {
    keep = stride_.back();
    distinct_.pop_back();
    mult_.pop_back();
    stride_.pop_back();
  } else {
    keep = stride_.back() * (mult_.back() + 1);
  }
  --length_;
  weights_.resize(keep);
  storage_.resize(keep * words_);
}

void ReachabilityTable::compute(std::size_t index) {
  if (options_.max_weight && weights_[index] > *options_.max_weight) return;
  const std::size_t order = group_->order();
  const auto table = group_->table();
  std::uint64_t* dest = storage_.data() + index * words_;
  const std::size_t last = distinct_.size() - 1;
  for (std::size_t i = 0; i <= last; ++i) {
    std::size_t digit = index / stride_[i];
    if (i != last) digit %= mult_[i] + 1;
    if (digit == 0) continue;
    const std::uint64_t* src = storage_.data() + (index - stride_[i]) * words_;
    const std::size_t g = distinct_[i].code;
    for (std::size_t w = 0; w < words_; ++w) {
      auto bits = src[w];
      while (bits != 0) {
        const std::size_t h = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
        bits &= bits - 1;
        const std::uint32_t p = options_.conditioning == Conditioning::kLastFactor ? table[h * order + g]
                                                                                   : table[g * order + h];
        dest[p >> 6] |= std::uint64_t{1} << (p & 63);
      }
    }
  }
}

CountVector ReachabilityTable::decode(std::size_t index) const {
  if (index >= state_count()) throw Error("state index out of range");
  CountVector c;
  c.counts.resize(distinct_.size());
  for (std::size_t i = 0; i < distinct_.size(); ++i) {
    std::size_t digit = index / stride_[i];
    if (i + 1 != distinct_.size()) digit %= mult_[i] + 1;
    c.counts[i] = digit;
  }
  return c;
}

std::size_t ReachabilityTable::encode(const CountVector& c) const {
  if (c.counts.size() != distinct_.size()) throw Error("count vector has the wrong number of digits");
  std::size_t index = 0;
  for (std::size_t i = 0; i < distinct_.size(); ++i) {
    if (c.counts[i] > mult_[i]) throw Error("count vector exceeds the sequence's multiplicities");
    index += c.counts[i] * stride_[i];
  }
  return index;
}

ElementSet ReachabilityTable::entry(std::size_t index) const {
  if (index >= state_count()) throw Error("state index out of range");
  return ElementSet::from_words(group_->order(),
                                std::span<const std::uint64_t>(storage_.data() + index * words_, words_));
}

GroupSequence ReachabilityTable::subsequence(std::size_t index) const {
  const auto c = decode(index);
  GroupSequence out(group_);
  for (std::size_t i = 0; i < distinct_.size(); ++i) out.add(distinct_[i], c.counts[i]);
  return out;
}

std::optional<std::size_t> ReachabilityTable::find(Element target, std::size_t begin, std::size_t end,
                                                   std::optional<std::size_t> at_weight) const {
  end = std::min(end, state_count());
  for (std::size_t idx = std::max<std::size_t>(begin, 1); idx < end; ++idx) {
    if (at_weight && weights_[idx] != *at_weight) continue;
    if (entry_contains(idx, target)) return idx;
  }
  return std::nullopt;
}

std::vector<Element> ReachabilityTable::realize(std::size_t index, Element target) const {
  if (!entry_contains(index, target)) throw Error("target is not reachable from this state");
  std::vector<Element> reversed;
  while (index != 0) {
    bool stepped = false;
    for (std::size_t i = 0; i < distinct_.size() && !stepped; ++i) {
      std::size_t digit = index / stride_[i];
      if (i + 1 != distinct_.size()) digit %= mult_[i] + 1;
      if (digit == 0) continue;
      const std::size_t pred = index - stride_[i];
      const Element need = group_->mul(target, group_->inverse(distinct_[i]));
      if (entry_contains(pred, need)) {
        reversed.push_back(distinct_[i]);
        index = pred;
        target = need;
        stepped = true;
      }
    }
    if (!stepped) throw Error("reachability table is inconsistent");
  }
  return {reversed.rbegin(), reversed.rend()};
}

ReachabilityTable reach(const GroupSequence& s, ReachOptions options) { return ReachabilityTable::build(s, options); }

ElementSet pi_set(const GroupSequence& s, ReachOptions options) {
  if (s.empty()) throw Error("pi(S) is only defined for non-empty sequences");
  const auto table = reach(s, options);
  return table.entry(table.state_count() - 1);
}

ElementSet big_pi_set(const GroupSequence& s, ReachOptions options) {
  if (s.empty()) throw Error("Pi(S) is only defined for non-empty sequences");
  const auto table = reach(s, options);
  ElementSet out(s.group().order());
  for (std::size_t idx = 1; idx < table.state_count(); ++idx) out |= table.entry(idx);
  return out;
}

namespace {

std::optional<ProductOneWitness> scan_for_identity(const GroupSequence& s, std::optional<std::size_t> k,
                                                   ReachOptions options) {
  options.max_weight = k;
  // Guard the full lattice size up front so a budget failure does not depend
  // on where the identity happens to show up.
  std::size_t states = 1;
  for (const auto& [g, v] : s.multiplicities()) {
    if (states > options.max_states / (v + 1))
      throw BudgetExceeded("sub-multiset lattice exceeds " + std::to_string(options.max_states) + " states");
    states *= v + 1;
  }
  ReachabilityTable table(s.group_ptr(), options);
  const Element one = s.group().identity();
  for (auto g : s.terms()) {
    auto [begin, end] = table.push(g);
    if (auto hit = table.find(one, begin, end, k)) {
      return ProductOneWitness{table.subsequence(*hit), table.realize(*hit, one)};
    }
  }
  return std::nullopt;
}

}  // namespace

bool is_product_one_free(const GroupSequence& s, ReachOptions options) {
  return !find_product_one(s, options).has_value();
}

std::optional<ProductOneWitness> find_product_one(const GroupSequence& s, ReachOptions options) {
  return scan_for_identity(s, std::nullopt, options);
}

std::optional<ProductOneWitness> find_k_product_one(const GroupSequence& s, std::size_t k, ReachOptions options) {
  if (k < 1 || k > s.length())
    throw Error("k = " + std::to_string(k) + " out of range [1, " + std::to_string(s.length()) + "]");
  return scan_for_identity(s, k, options);
}

bool has_k_product_one(const GroupSequence& s, std::size_t k, ReachOptions options) {
  return find_k_product_one(s, k, options).has_value();
}

}  // namespace zerosum
