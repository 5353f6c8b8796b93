#pragma once

// Norm oracles: a uniform evaluation interface returning certified
// values or enclosures, with one implementation per space.  All
// implemented oracles are 1-unconditional with norm-one basis vectors.

#include <memory>
#include <string>
#include <utility>

#include "banachlab/finvec.hpp"

namespace banachlab {

/// Certified enclosure of a norm; exact implies lower == upper.
struct NormValue {
  Rat lower;
  Rat upper;
  bool exact = true;

  static NormValue exactly(Rat v) { return {v, v, true}; }
  static NormValue between(Rat lo, Rat hi) { return {std::move(lo), std::move(hi), false}; }
  Rat width() const { return upper - lower; }
};

/// The requested enclosure width could not be met; carries the best
/// enclosure obtained.
class WidthBudgetError : public Error {
 public:
  WidthBudgetError(const std::string& what, NormValue best)
      : Error(what), best_(std::move(best)) {}
  const NormValue& best() const { return best_; }

 private:
  NormValue best_;
};

class NormOracle {
 public:
  virtual ~NormOracle() = default;

  virtual std::string id() const = 0;

  /// True when the value depends only on the coefficient sequence, not
  /// on which increasing indices carry it.
  virtual bool spreading_invariant() const = 0;

  /// Exact value, or a tight enclosure within the width budget.
  /// May throw CapError / WidthBudgetError per the oracle's contract.
  virtual NormValue eval(const FinVec& x) const = 0;

  /// Certified enclosure that never fails (may be wide beyond caps).
  virtual NormValue enclosure(const FinVec& x) const { return eval(x); }

  /// Norm-one basis vector for index i.
  virtual FinVec basis_vector(Index i) const { return FinVec::unit(i); }
};

using OraclePtr = std::shared_ptr<const NormOracle>;

OraclePtr c0_oracle();
OraclePtr l1_oracle();
/// p in (1, oo) rational; eval returns enclosures of width at most
/// width_budget (exact when the value is rational).
OraclePtr lp_oracle(const Rat& p, const Rat& width_budget = make_rat(1, Int("1000000000000")));
OraclePtr schreier_oracle();
/// Exact dynamic programming up to the support cap; enclosure() falls
/// back to a certified [greedy lower, l1 upper] beyond it.
OraclePtr tsirelson_oracle(std::size_t exact_support_cap = 18);
OraclePtr weighted_l1_sum_oracle();

/// Oracle by identifier: "c0", "l1", "lp:<p>", "schreier", "tsirelson",
/// "weighted-l1-sum".
OraclePtr make_oracle(const std::string& spec);

/// sup over F in S_1 of sum_{i in F} |x_i|.
Rat schreier_norm_exact(const FinVec& x);

/// Exact Tsirelson norm via the implicit equation
///   ||x|| = max( max_i |x_i|, (1/2) sup sum_j ||E_j x|| )
/// over successive intervals E_1 < ... < E_d with d <= min E_1.
Rat tsirelson_norm_exact(const FinVec& x);

/// Certified lower bound from greedy admissible interval splits.
Rat tsirelson_lower_estimate(const FinVec& x);

/// Fixed pairing of (block, position), both >= 1, onto flat indices;
/// used by the weighted l1-sum oracle.
Index pair_index(Index block, Index pos);
std::pair<Index, Index> unpair_index(Index flat);

}  // namespace banachlab
