#include "banachlab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace banachlab {

namespace {

class C0Oracle final : public NormOracle {
 public:
  std::string id() const override { return "c0"; }
  bool spreading_invariant() const override { return true; }
  NormValue eval(const FinVec& x) const override { return NormValue::exactly(x.abs_max()); }
};

class L1Oracle final : public NormOracle {
 public:
  std::string id() const override { return "l1"; }
  bool spreading_invariant() const override { return true; }
  NormValue eval(const FinVec& x) const override { return NormValue::exactly(x.abs_sum()); }
};

class LpOracle final : public NormOracle {
 public:
  LpOracle(Rat p, Rat width) : p_(std::move(p)), width_(std::move(width)) {
    if (p_ <= 1) throw ValidationError("lp oracle requires p > 1 (use l1 for p = 1)");
    if (!p_.get_num().fits_ulong_p() || !p_.get_den().fits_ulong_p()) {
      throw ValidationError("lp exponent out of range");
    }
    u_ = p_.get_num().get_ui();
    v_ = p_.get_den().get_ui();
  }

  std::string id() const override { return "lp:" + rat_str(p_); }
  bool spreading_invariant() const override { return true; }

  NormValue eval(const FinVec& x) const override {
    if (x.is_zero()) return NormValue::exactly(Rat(0));
    NormValue best = NormValue::between(Rat(0), x.abs_sum());
    for (int bits = 64; bits <= kMaxBits; bits *= 2) {
      RatInterval sum{Rat(0), Rat(0)};
      bool terms_exact = true;
      for (const auto& [i, c] : x) {
        RatInterval t = nth_root_enclosure(rat_pow(rat_abs(c), u_), v_, bits);
        sum.lo += t.lo;
        sum.hi += t.hi;
        terms_exact = terms_exact && t.exact();
      }
      RatInterval lo = nth_root_enclosure(rat_pow(sum.lo, v_), u_, bits);
      RatInterval hi = nth_root_enclosure(rat_pow(sum.hi, v_), u_, bits);
      if (terms_exact && lo.exact() && sum.lo == sum.hi) {
        return NormValue::exactly(lo.lo);
      }
      best = NormValue::between(lo.lo, hi.hi);
      if (best.width() <= width_) return best;
    }
    throw WidthBudgetError("lp enclosure width budget unreachable", best);
  }

 private:
  static constexpr int kMaxBits = 4096;
  Rat p_;
  Rat width_;
  unsigned long u_ = 0;
  unsigned long v_ = 1;
};

class SchreierOracle final : public NormOracle {
 public:
  std::string id() const override { return "schreier"; }
  bool spreading_invariant() const override { return false; }
  NormValue eval(const FinVec& x) const override {
    return NormValue::exactly(schreier_norm_exact(x));
  }
};

class TsirelsonOracle final : public NormOracle {
 public:
  explicit TsirelsonOracle(std::size_t cap) : cap_(cap) {}

  std::string id() const override { return "tsirelson"; }
  bool spreading_invariant() const override { return false; }

  NormValue eval(const FinVec& x) const override {
    if (x.support_size() > cap_) {
      throw CapError("tsirelson exact norm: support size " + std::to_string(x.support_size()) +
                     " exceeds cap " + std::to_string(cap_));
    }
    return NormValue::exactly(tsirelson_norm_exact(x));
  }

  NormValue enclosure(const FinVec& x) const override {
    if (x.support_size() <= cap_) return eval(x);
    return NormValue::between(tsirelson_lower_estimate(x), x.abs_sum());
  }

 private:
  std::size_t cap_;
};

class WeightedL1SumOracle final : public NormOracle {
 public:
  std::string id() const override { return "weighted-l1-sum"; }
  bool spreading_invariant() const override { return false; }

  // Raw coordinates: sum over blocks n of n * (l1 mass of block n).
  NormValue eval(const FinVec& x) const override {
    Rat total(0);
    for (const auto& [i, c] : x) {
      total += Rat(unpair_index(i).first) * rat_abs(c);
    }
    return NormValue::exactly(total);
  }

  // Normalized basis: the block-n unit vector divided by n.
  FinVec basis_vector(Index i) const override {
    FinVec v;
    v.set(i, make_rat(1, unpair_index(i).first));
    return v;
  }
};

}  // namespace

OraclePtr c0_oracle() { return std::make_shared<C0Oracle>(); }
OraclePtr l1_oracle() { return std::make_shared<L1Oracle>(); }
OraclePtr lp_oracle(const Rat& p, const Rat& width_budget) {
  return std::make_shared<LpOracle>(p, width_budget);
}
OraclePtr schreier_oracle() { return std::make_shared<SchreierOracle>(); }
OraclePtr tsirelson_oracle(std::size_t exact_support_cap) {
  return std::make_shared<TsirelsonOracle>(exact_support_cap);
}
OraclePtr weighted_l1_sum_oracle() { return std::make_shared<WeightedL1SumOracle>(); }

OraclePtr make_oracle(const std::string& spec) {
  if (spec == "c0") return c0_oracle();
  if (spec == "l1") return l1_oracle();
  if (spec == "schreier") return schreier_oracle();
  if (spec == "tsirelson") return tsirelson_oracle();
  if (spec == "weighted-l1-sum") return weighted_l1_sum_oracle();
  if (spec.rfind("lp:", 0) == 0) return lp_oracle(parse_rat(spec.substr(3)));
  throw ValidationError("unknown oracle '" + spec + "'");
}

Rat schreier_norm_exact(const FinVec& x) {
  std::vector<Index> pos;
  std::vector<Rat> val;
  for (const auto& [i, c] : x) {
    pos.push_back(i);
    val.push_back(rat_abs(c));
  }
  Rat best(0);
  for (std::size_t i = 0; i < pos.size(); ++i) {
    // F with min element pos[i] may take up to pos[i] - 1 more points
    // to the right; the largest coefficients win.
    std::vector<Rat> tail(val.begin() + static_cast<std::ptrdiff_t>(i) + 1, val.end());
    std::sort(tail.begin(), tail.end(), std::greater<>());
    Index room = pos[i] - 1;
    Rat cand = val[i];
    for (std::size_t k = 0; k < tail.size() && static_cast<Index>(k) < room; ++k) {
      cand += tail[k];
    }
    if (cand > best) best = cand;
  }
  return best;
}

Index pair_index(Index block, Index pos) {
  if (block < 1 || pos < 1) throw ValidationError("pair_index requires block, pos >= 1");
  Index t = block + pos - 2;
  if (t > 3000000000LL) throw ValidationError("pair_index out of range");
  return t * (t + 1) / 2 + block;
}

std::pair<Index, Index> unpair_index(Index flat) {
  if (flat < 1) throw ValidationError("unpair_index requires flat >= 1");
  // Largest t with t(t+1)/2 < flat.
  Index t = static_cast<Index>((std::sqrt(8.0 * static_cast<double>(flat) + 1.0) - 1.0) / 2.0);
  while (t * (t + 1) / 2 >= flat) --t;
  while ((t + 1) * (t + 2) / 2 < flat) ++t;
  Index block = flat - t * (t + 1) / 2;
  Index pos = t - block + 2;
  return {block, pos};
}

}  // namespace banachlab
