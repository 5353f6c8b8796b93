#pragma once

// Finitely supported vectors over positive integer indices with exact
// rational coefficients; the carrier for basis and block-basis vectors.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "banachlab/rational.hpp"

namespace banachlab {

using Index = std::int64_t;

class FinVec {
 public:
  FinVec() = default;

  static FinVec unit(Index i);
  /// Whitespace-separated "index:coefficient" pairs, e.g. "3:1 5:-2/3".
  static FinVec parse(std::string_view text);

  /// Sets the coefficient at i (erases it when c == 0).
  void set(Index i, const Rat& c);
  Rat coeff(Index i) const;

  bool is_zero() const { return entries_.empty(); }
  std::size_t support_size() const { return entries_.size(); }
  Index min_support() const;  // throws on zero vector
  Index max_support() const;

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  FinVec& operator+=(const FinVec& other);
  FinVec& operator-=(const FinVec& other);
  FinVec& operator*=(const Rat& c);
  friend FinVec operator+(FinVec a, const FinVec& b) { return a += b; }
  friend FinVec operator-(FinVec a, const FinVec& b) { return a -= b; }
  friend FinVec operator*(const Rat& c, FinVec v) { return v *= c; }
  friend bool operator==(const FinVec&, const FinVec&) = default;

  /// Entries with index in [lo, hi].
  FinVec restricted(Index lo, Index hi) const;

  Rat abs_sum() const;
  Rat abs_max() const;

  std::string str() const;

 private:
  std::map<Index, Rat> entries_;
};

using BlockSequence = std::vector<FinVec>;

/// True iff all vectors are nonzero and successive supports strictly
/// increase (empty list is vacuously a block sequence).
bool is_block_sequence(const std::vector<FinVec>& vs);

}  // namespace banachlab
