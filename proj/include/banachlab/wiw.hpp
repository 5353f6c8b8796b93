#pragma once

// The norming set behind the X_iw norm: weighted functional trees
//   f = (1/(a_{k_1}...a_{k_l})) * (f_1 + ... + f_r)
// whose children are successive, very fast growing (each child's weight
// exceeds the previous child's maximal support point; coordinate
// functionals have infinite weight) and S_{b_{k_1}+...+b_{k_l}}-
// admissible.  Provides validation, exact evaluation, certified
// lower-bound search, bounded exhaustive norm computation, and the
// drop-first-children combination of same-weight functionals.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "banachlab/finvec.hpp"
#include "banachlab/norms.hpp"
#include "banachlab/schreier.hpp"

namespace banachlab {

/// Weight parameters: a strictly increasing with a_1 = 2; b strictly
/// increasing with b_1 = 1.  The standard schedule is a_k = 2^k with
/// b_{k+1} = b_k * ceil(ln(a_{k+1}^2)) + 1, which satisfies the growth
/// condition b_{k+1} > b_k ln(a_{k+1}^2).
class WeightSchedule {
 public:
  static WeightSchedule standard();
  /// require_growth enforces b_{k+1} > b_k ln(a_{k+1}^2) over the table
  /// (the standard schedule satisfies it by construction).
  static WeightSchedule custom(std::vector<Int> a, std::vector<Int> b,
                               bool require_growth = false);

  Int a(int k) const;  // 1-based; throws past the end of a custom table
  Int b(int k) const;

  /// Certifies b_{k+1} > b_k ln(a_{k+1}^2) for all k+1 <= upto using
  /// rational log enclosures.
  bool growth_condition_holds(int upto) const;

 private:
  WeightSchedule() = default;
  bool custom_ = false;
  std::vector<Int> custom_a_, custom_b_;
  mutable std::vector<Int> b_memo_;  // standard schedule, 1-based contents
};

/// Leaf (sign, index) or node (weight-index tuple, children).
class WiwFunctional {
 public:
  static WiwFunctional leaf(int sign, Index index);
  static WiwFunctional node(std::vector<int> weight_indices, std::vector<WiwFunctional> children);

  bool is_leaf() const { return weight_indices_.empty(); }
  int sign() const { return sign_; }
  Index index() const { return index_; }
  const std::vector<int>& weight_indices() const { return weight_indices_; }
  const std::vector<WiwFunctional>& children() const { return children_; }

  Index min_support() const;
  Index max_support() const;
  /// Product of the tuple's a-values; nullopt (infinite) for leaves.
  std::optional<Int> weight(const WeightSchedule& sched) const;

  /// Canonical S-expression, e.g. "(w 1 (leaf + 2) (leaf + 3))".
  std::string encode() const;
  static WiwFunctional decode(std::string_view text);

  friend bool operator==(const WiwFunctional&, const WiwFunctional&) = default;

 private:
  WiwFunctional() = default;
  int sign_ = 1;
  Index index_ = 0;
  std::vector<int> weight_indices_;
  std::vector<WiwFunctional> children_;
};

struct WiwViolation {
  std::string rule;    // "structure" | "successive" | "very-fast-growing" | "admissibility"
  std::string where;   // path from the root, e.g. "root.child[2]"
  std::string detail;
};

/// First violation of the norming-set rules, or nullopt when valid.
std::optional<WiwViolation> find_violation(const WiwFunctional& f, const WeightSchedule& sched);

inline bool validate_functional(const WiwFunctional& f, const WeightSchedule& sched) {
  return !find_violation(f, sched).has_value();
}

/// Exact f(x); throws ValidationError unless f validates.
Rat eval_functional(const WiwFunctional& f, const FinVec& x, const WeightSchedule& sched);
Rat eval_functional_unchecked(const WiwFunctional& f, const FinVec& x, const WeightSchedule& sched);

/// A machine-checkable lower bound: witness validates and evaluates to
/// value at target, hence value <= ||target||.
struct NormCertificate {
  Rat value;
  WiwFunctional witness;
  FinVec target;
};

/// Re-validates and re-evaluates a certificate through the public APIs.
bool certificate_valid(const NormCertificate& cert, const WeightSchedule& sched);

struct WiwSearchBudget {
  int max_weight_index = 3;
  int depth = 2;      // 1: leaves and one-level families; 2: nested blocks
  int max_parts = 8;  // block count for nested constructions
};

/// Best certificate found within the budget (deterministic; growing the
/// budget never shrinks the value).
NormCertificate wiw_lower_certificate(const FinVec& x, const WeightSchedule& sched,
                                      const WiwSearchBudget& budget = {});

struct WiwExhaustiveCaps {
  std::size_t support_cap = 12;
  Rat weight_cap = Rat(0);  // 0: auto (smallest power of two >= l1/min|coeff|)
  int depth_cap = 0;        // 0: auto (support size; never binding)
};

struct WiwExhaustiveResult {
  NormValue value;
  WiwFunctional best;
  Rat weight_cap_used;
  int depth_cap_used;
};

/// Sup of f(x) over all valid functionals supported in supp(x) with
/// weight products <= weight_cap and depth <= depth_cap.  Exact when
/// weight_cap >= l1(x)/min|coeff| and depth_cap >= support size (heavier
/// or deeper functionals are then dominated); otherwise a certified
/// enclosure flagged inexact.
WiwExhaustiveResult wiw_exhaustive_norm(const FinVec& x, const WeightSchedule& sched,
                                        const WiwExhaustiveCaps& caps = {});

/// Drops each functional's first child and merges the remaining
/// children under the common tuple extended by index 1:
///   F = (1/(a_{k_1}...a_{k_p} a_1)) sum_l sum_{q>=2} f^l_q.
/// Requires equal finite weight tuples, supports inside the matching
/// blocks, and block count <= min support of the first retained child.
/// The result validates; violations are reported with their location.
WiwFunctional combine_dropping_first(const std::vector<FinVec>& blocks,
                                     const std::vector<WiwFunctional>& fs,
                                     const WeightSchedule& sched);

/// (1/a_k)(e*_{i_1} +- ... +- e*_{i_r}) for strictly increasing indices;
/// children are leaves (infinite weight), so only S_{b_k}-admissibility
/// constrains the family.  Validates before returning.
WiwFunctional leaf_family(const std::vector<Index>& indices, const std::vector<int>& signs,
                          int weight_index, const WeightSchedule& sched);

}  // namespace banachlab
