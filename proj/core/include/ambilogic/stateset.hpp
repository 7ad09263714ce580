// ===== stateset.hpp — events over a finite state space =====
//
// Events are bitsets over the structure's state indices. The universe size
// travels with the set so complements are well defined; mixing sets from
// different universes is a programming error and asserts.

#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

namespace ambilogic {

class StateSet {
public:
  StateSet() = default;
  explicit StateSet(int universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  static StateSet full(int universe) {
    StateSet s(universe);
    for (int i = 0; i < universe; ++i) s.set(i);
    return s;
  }

  static StateSet single(int universe, int idx) {
    StateSet s(universe);
    s.set(idx);
    return s;
  }

  int universe() const { return universe_; }

  void set(int idx) {
    assert(idx >= 0 && idx < universe_);
    words_[idx >> 6] |= (std::uint64_t{1} << (idx & 63));
  }

  void reset(int idx) {
    assert(idx >= 0 && idx < universe_);
    words_[idx >> 6] &= ~(std::uint64_t{1} << (idx & 63));
  }

  bool test(int idx) const {
    assert(idx >= 0 && idx < universe_);
    return (words_[idx >> 6] >> (idx & 63)) & 1;
  }

  bool empty() const {
    for (auto w : words_) if (w) return false;
    return true;
  }

  int count() const {
    int n = 0;
    for (auto w : words_) n += __builtin_popcountll(w);
    return n;
  }

  // Smallest member, or -1 when empty.
  int first() const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      if (words_[k]) return static_cast<int>(k * 64 + __builtin_ctzll(words_[k]));
    }
    return -1;
  }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(count());
    for (int i = 0; i < universe_; ++i) {
      if (test(i)) out.push_back(i);
    }
    return out;
  }

  StateSet& operator&=(const StateSet& o) {
    assert(universe_ == o.universe_);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }

  StateSet& operator|=(const StateSet& o) {
    assert(universe_ == o.universe_);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }

  StateSet& operator-=(const StateSet& o) {
    assert(universe_ == o.universe_);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
    return *this;
  }

  StateSet& operator^=(const StateSet& o) {
    assert(universe_ == o.universe_);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= o.words_[k];
    return *this;
  }

  friend StateSet operator&(StateSet a, const StateSet& b) { return a &= b; }
  friend StateSet operator|(StateSet a, const StateSet& b) { return a |= b; }
  friend StateSet operator-(StateSet a, const StateSet& b) { return a -= b; }
  friend StateSet operator^(StateSet a, const StateSet& b) { return a ^= b; }

  StateSet complement() const {
    StateSet out(universe_);
    for (std::size_t k = 0; k < words_.size(); ++k) out.words_[k] = ~words_[k];
    out.trim();
    return out;
  }

  bool is_subset_of(const StateSet& o) const {
    assert(universe_ == o.universe_);
    for (std::size_t k = 0; k < words_.size(); ++k) {
      if (words_[k] & ~o.words_[k]) return false;
    }
    return true;
  }

  bool intersects(const StateSet& o) const {
    assert(universe_ == o.universe_);
    for (std::size_t k = 0; k < words_.size(); ++k) {
      if (words_[k] & o.words_[k]) return true;
    }
    return false;
  }

  friend bool operator==(const StateSet& a, const StateSet& b) {
    return a.universe_ == b.universe_ && a.words_ == b.words_;
  }
  friend bool operator!=(const StateSet& a, const StateSet& b) { return !(a == b); }

  // Lexicographic; only here so events can key ordered containers.
  friend bool operator<(const StateSet& a, const StateSet& b) {
    if (a.universe_ != b.universe_) return a.universe_ < b.universe_;
    return a.words_ < b.words_;
  }

  std::size_t hash() const {
    std::size_t seed = static_cast<std::size_t>(universe_);
    for (auto w : words_) seed ^= w + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2);
    return seed;
  }

private:
  void trim() {
    if (universe_ & 63) {
      words_.back() &= (std::uint64_t{1} << (universe_ & 63)) - 1;
    }
  }

  int universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace ambilogic
