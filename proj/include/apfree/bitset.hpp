#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace apfree {

/// Dynamically sized bitset over [0, size). Bits past size are always zero.
class Bitset {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t bits_per_word = 64;

  Bitset() = default;
  explicit Bitset(std::size_t size) : size_(size), words_((size + bits_per_word - 1) / bits_per_word, 0) {}

  static Bitset from_word(std::size_t size, Word word) {
    Bitset b(size);
    if (!b.words_.empty()) b.words_[0] = word;
    b.trim();
    return b;
  }

  static Bitset full(std::size_t size) {
    Bitset b(size);
    for (auto& w : b.words_) w = ~Word{0};
    b.trim();
    return b;
  }

  std::size_t size() const noexcept { return size_; }

  bool test(std::size_t i) const noexcept { return (words_[i / bits_per_word] >> (i % bits_per_word)) & 1u; }
  void set(std::size_t i) noexcept { words_[i / bits_per_word] |= Word{1} << (i % bits_per_word); }
  void reset(std::size_t i) noexcept { words_[i / bits_per_word] &= ~(Word{1} << (i % bits_per_word)); }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool none() const noexcept {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  /// Low word; the whole set when size() <= 64.
  Word word0() const noexcept { return words_.empty() ? 0 : words_[0]; }

  bool is_subset_of(const Bitset& other) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }

  Bitset& operator&=(const Bitset& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  Bitset& operator|=(const Bitset& o) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  friend Bitset operator&(Bitset a, const Bitset& b) noexcept { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) noexcept { return a |= b; }
  friend bool operator==(const Bitset&, const Bitset&) = default;

  /// Set bit positions in increasing order.
  std::vector<std::size_t> ones() const {
    std::vector<std::size_t> out;
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      Word w = words_[wi];
      while (w) {
        out.push_back(wi * bits_per_word + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
    return out;
  }

 private:
  void trim() noexcept {
    if (size_ % bits_per_word && !words_.empty()) words_.back() &= (Word{1} << (size_ % bits_per_word)) - 1;
  }

  std::size_t size_ = 0;
  std::vector<Word> words_;
};

}  // namespace apfree
