#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace macfaces {

using Mask = std::uint32_t;

// Largest number of users any API in this library accepts.  Mask arithmetic
// would allow 32, but every algorithm here walks all 2^M subsets at least
// once, so the practical ceiling is far lower; individual entry points apply
// tighter caps of their own.
inline constexpr int kMaxUsers = 24;

// A subset of the user indices {1, ..., M}.  Users are 1-based everywhere in
// the public interface and in printed output; bit i-1 of the mask represents
// user i.  The wrapper is deliberately thin: it exists so signatures say
// UserSet instead of a bare integer, not to hide the mask (bits() is public
// and the submask tricks below operate on raw masks).
class UserSet {
public:
  constexpr UserSet() = default;
  constexpr explicit UserSet(Mask bits) : bits_(bits) {}

  // The set {1, ..., users}.
  static constexpr UserSet full(int users) {
    return UserSet(users <= 0 ? Mask{0} : (Mask{1} << users) - 1);
  }
  static constexpr UserSet single(int user) {
    return UserSet(Mask{1} << (user - 1));
  }
  static UserSet of(std::initializer_list<int> users) {
    Mask m = 0;
    for (int u : users) m |= Mask{1} << (u - 1);
    return UserSet(m);
  }

  constexpr Mask bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int user) const {
    return (bits_ >> (user - 1)) & 1u;
  }
  constexpr bool intersects(UserSet o) const { return (bits_ & o.bits_) != 0; }
  constexpr bool subset_of(UserSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool proper_subset_of(UserSet o) const {
    return bits_ != o.bits_ && subset_of(o);
  }
  // Smallest element, 1-based; undefined on the empty set.
  constexpr int min_element() const { return std::countr_zero(bits_) + 1; }

  friend constexpr UserSet operator|(UserSet a, UserSet b) {
    return UserSet(a.bits_ | b.bits_);
  }
  friend constexpr UserSet operator&(UserSet a, UserSet b) {
    return UserSet(a.bits_ & b.bits_);
  }
  // Set difference.
  friend constexpr UserSet operator-(UserSet a, UserSet b) {
    return UserSet(a.bits_ & ~b.bits_);
  }
  friend constexpr bool operator==(UserSet a, UserSet b) = default;
  // Mask order; used only to make containers and output deterministic.
  friend constexpr auto operator<=>(UserSet a, UserSet b) {
    return a.bits_ <=> b.bits_;
  }

  // Members in ascending order, 1-based.
  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (Mask m = bits_; m != 0; m &= m - 1)
      out.push_back(std::countr_zero(m) + 1);
    return out;
  }

  // "{1,2,5}"; the empty set prints as "{}".
  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (Mask m = bits_; m != 0; m &= m - 1) {
      if (!first) s += ',';
      s += std::to_string(std::countr_zero(m) + 1);
      first = false;
    }
    s += '}';
    return s;
  }

private:
  Mask bits_ = 0;
};

// Sum of the rates indexed by s.  rates is 0-based (rates[i-1] is user i).
inline double rate_sum(std::span<const double> rates, UserSet s) {
  double acc = 0.0;
  for (Mask m = s.bits(); m != 0; m &= m - 1)
    acc += rates[static_cast<std::size_t>(std::countr_zero(m))];
  return acc;
}

// Calls f(UserSet) for every subset of `mask`, including the empty set and
// `mask` itself, in descending mask order.  The standard (sub - 1) & mask
// walk visits each of the 2^|mask| submasks exactly once.
template <typename F>
void for_each_subset(UserSet mask, F&& f) {
  Mask m = mask.bits();
  Mask sub = m;
  while (true) {
    f(UserSet(sub));
    if (sub == 0) break;
    sub = (sub - 1) & m;
  }
}

}  // namespace macfaces
