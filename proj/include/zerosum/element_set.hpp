#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace zerosum {

// Dense index of a group element. For metacyclic groups code = a * n + b.
struct Element {
  std::uint32_t code = 0;

  friend constexpr auto operator<=>(Element, Element) = default;
};

// Fixed-universe bitset over element codes.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  static ElementSet from_words(std::size_t universe, std::span<const std::uint64_t> words) {
    ElementSet out(universe);
    for (std::size_t i = 0; i < out.words_.size() && i < words.size(); ++i) out.words_[i] = words[i];
    return out;
  }

  std::size_t universe() const noexcept { return universe_; }
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  bool contains(Element e) const noexcept {
    return e.code < universe_ && ((words_[e.code >> 6] >> (e.code & 63)) & 1U) != 0;
  }
  void insert(Element e) { words_[e.code >> 6] |= std::uint64_t{1} << (e.code & 63); }
  void erase(Element e) { words_[e.code >> 6] &= ~(std::uint64_t{1} << (e.code & 63)); }

  std::size_t size() const noexcept {
    std::size_t total = 0;
    for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }
  bool empty() const noexcept {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }

  ElementSet& operator|=(const ElementSet& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
  }
  ElementSet& operator&=(const ElementSet& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
  }
  bool is_subset_of(const ElementSet& other) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & ~other.words_[i]) != 0) return false;
    return true;
  }
  bool intersects(const ElementSet& other) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & other.words_[i]) != 0) return true;
    return false;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      auto bits = words_[w];
      while (bits != 0) {
        auto bit = static_cast<std::uint32_t>(std::countr_zero(bits));
        f(Element{static_cast<std::uint32_t>(w * 64 + bit)});
        bits &= bits - 1;
      }
    }
  }

  // Ascending by code.
  std::vector<Element> elements() const {
    std::vector<Element> out;
    out.reserve(size());
    for_each([&](Element e) { out.push_back(e); });
    return out;
  }

  friend bool operator==(const ElementSet&, const ElementSet&) = default;

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

inline ElementSet operator|(ElementSet lhs, const ElementSet& rhs) { return lhs |= rhs; }
inline ElementSet operator&(ElementSet lhs, const ElementSet& rhs) { return lhs &= rhs; }

}  // namespace zerosum
