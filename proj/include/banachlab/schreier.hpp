#pragma once

// Schreier families S_n over the positive integers:
//   S_0 = singletons, S_1 = { F : |F| <= min F },
//   S_{n+1} = unions F_1 < ... < F_d with F_i in S_n and d <= min F_1.
// The empty set belongs to every S_n (hereditarity convention).

#include <vector>

#include "banachlab/errors.hpp"
#include "banachlab/finvec.hpp"

namespace banachlab {

/// Raised by is_admissible when the input is not a block sequence.
class NotBlockError : public ValidationError {
 public:
  explicit NotBlockError(const std::string& what) : ValidationError(what) {}
};

/// Membership F in S_n.  F must be strictly increasing and positive.
/// Uses greedy peeling of maximal S_{n-1} prefixes; cross-checked
/// against exhaustive decomposition search in the test suite.
bool schreier_member(const std::vector<Index>& F, int n);

/// Same for arbitrarily large levels: any F with min F >= 2 lies in
/// S_{|F|-1}, and sets with min 1 are never admissible beyond
/// singletons, so only small levels need the recursion.
bool schreier_member_level(const std::vector<Index>& F, const Int& n);

/// True iff the minimal support points of vs form a set in S_n.
/// Throws NotBlockError unless vs is a block sequence.
bool is_admissible(const std::vector<FinVec>& vs, int n);

}  // namespace banachlab
