#pragma once

// Haar systems of partitions of the positive integers: for each level n
// the sets A^n_j (0 <= j < 2^n) partition N into infinite sets, and
// A^n_j = A^{n+1}_{2j} union A^{n+1}_{2j+1}.  Level 0 is all of N.

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "banachlab/dyadic.hpp"
#include "banachlab/finvec.hpp"

namespace banachlab {

class HaarSystem {
 public:
  virtual ~HaarSystem() = default;

  virtual std::string id() const = 0;

  /// Deepest level the system defines (62 for generator-backed systems;
  /// the table depth for residue systems).
  virtual int max_level() const { return 62; }

  /// i in A^level_j?  Requires level >= 0, 0 <= j < 2^level, i >= 1.
  virtual bool member(int level, Index j, Index i) const = 0;

  /// k-th smallest element of A^level_j, k >= 1.  Default scans
  /// member(); closed-form systems override.
  virtual Index kth_member(int level, Index j, Index k) const;

 protected:
  static void check_cell(int level, Index j);
};

using HaarPtr = std::shared_ptr<const HaarSystem>;

/// The bit-reversal system: A^n_j = { i : (i-1) mod 2^n == bitrev_n(j) }.
HaarPtr canonical_haar();

/// System grouping enumeration indices by which level-n dyadic interval
/// contains d_k, for the standard enumeration of the dyadics.
HaarPtr dyadic_location_haar();

/// Same, for an arbitrary enumeration of the dyadics in (0,1); the
/// first `validate_prefix` values are checked to be distinct, nonzero
/// dyadics (a bijectivity check on a finite prefix).
HaarPtr dyadic_location_haar(std::function<DyadicRational(Index)> points, std::string id,
                             Index validate_prefix = 256);

/// Residue-class system: A^n_j = { i : (i-1) mod 2^n == residues[n][j] }.
/// residues[0] must be {0}; each level must be a permutation of
/// [0, 2^n) refining the previous level.  Validated on construction.
HaarPtr residue_haar(const std::vector<std::vector<Index>>& residues);

/// "canonical" or "locations".
HaarPtr make_haar(const std::string& spec);

Index bit_reverse(Index j, int bits);

/// The dyadic embedding: maps the reduced d = j/2^n in [0,1) to the
/// (2^n)-th member of A^n_j.  sigma(0) is the first member of A^0_0.
Index sigma(const DyadicRational& d, const HaarSystem& sys);

}  // namespace banachlab
