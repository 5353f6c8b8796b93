#pragma once

// Dyadic rationals in [0, 1) and their breadth-first enumeration:
// level 1 gives 1/2; level 2 gives 1/4, 3/4; level 3 gives 1/8, 3/8,
// 5/8, 7/8; and so on, each level ordered by value.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "banachlab/rational.hpp"

namespace banachlab {

/// value = numerator / 2^level, stored reduced: numerator odd, or the
/// value is 0 (numerator 0, level 0).  Always in [0, 1).
class DyadicRational {
 public:
  DyadicRational() = default;  // zero

  /// Reduces num/2^level; throws unless the value lies in [0, 1).
  static DyadicRational make(std::int64_t num, int level);
  /// Accepts "p/q" with q a power of two, or "0"/"p" integers in {0}.
  static DyadicRational parse(std::string_view text);

  int level() const { return level_; }
  std::int64_t numerator() const { return numerator_; }
  bool is_zero() const { return numerator_ == 0; }
  Rat value() const;
  std::string str() const;

  friend bool operator==(const DyadicRational&, const DyadicRational&) = default;
  std::strong_ordering operator<=>(const DyadicRational& other) const;

 private:
  std::int64_t numerator_ = 0;
  int level_ = 0;
};

/// k-th dyadic in (0,1), k >= 1, breadth-first by level then by value:
/// 1 -> 1/2, 2 -> 1/4, 3 -> 3/4, 4 -> 1/8, ...
DyadicRational dyadic_enumerate(std::int64_t k);

/// Inverse of dyadic_enumerate; rejects 0.
std::int64_t dyadic_index(const DyadicRational& d);

/// Interior dyadics of reduced level m+1 .. m+depth in the open cell
/// ((cell-1)/2^m, cell/2^m), cell in [1, 2^m], ordered by level then value.
std::vector<DyadicRational> dyadics_in_cell(int m, std::int64_t cell, int depth);

}  // namespace banachlab
