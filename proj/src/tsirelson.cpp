#include <algorithm>
#include <map>
#include <tuple>
#include <vector>

#include "banachlab/norms.hpp"

namespace banachlab {

namespace {

// Exact norm by dynamic programming over support intervals.
//
// seg_norm(a, b) is the norm of x restricted to positions [a, b].  The
// partition term ranges over families E_1 < ... < E_d of successive
// intervals with d <= min E_1; only the number of nonempty intervals
// matters, so d is capped by the segment size.  The first interval is
// forced to end strictly before b, which excludes the degenerate
// single-interval family (whose value (1/2)||E x|| never attains the
// sup) and keeps the recursion well-founded.
class TsirelsonDP {
 public:
  explicit TsirelsonDP(const FinVec& x) {
    for (const auto& [i, c] : x) {
      pos_.push_back(i);
      val_.push_back(rat_abs(c));
    }
  }

  Rat norm() {
    if (pos_.empty()) return Rat(0);
    return seg_norm(0, static_cast<int>(pos_.size()) - 1);
  }

 private:
  Rat seg_norm(int a, int b) {
    auto key = std::make_pair(a, b);
    auto it = norm_memo_.find(key);
    if (it != norm_memo_.end()) return it->second;

    Rat best(0);
    for (int i = a; i <= b; ++i) best = std::max(best, val_[static_cast<std::size_t>(i)]);

    Rat split(0);
    int count = b - a + 1;
    for (int d = 2; d <= count; ++d) {
      for (int i = a; i <= b - 1; ++i) {
        if (pos_[static_cast<std::size_t>(i)] < d) continue;
        for (int c = i; c <= b - 1; ++c) {
          Rat cand = seg_norm(i, c) + best_sum(c + 1, b, d - 1);
          if (cand > split) split = cand;
        }
      }
    }
    best = std::max(best, Rat(split / 2));
    norm_memo_.emplace(key, best);
    return best;
  }

  // Max sum of seg_norm over at most `parts` successive intervals
  // within positions [a, b].
  Rat best_sum(int a, int b, int parts) {
    if (a > b || parts == 0) return Rat(0);
    parts = std::min(parts, b - a + 1);
    auto key = std::make_tuple(a, b, parts);
    auto it = sum_memo_.find(key);
    if (it != sum_memo_.end()) return it->second;

    Rat best = best_sum(a + 1, b, parts);
    for (int c = a; c <= b; ++c) {
      Rat cand = seg_norm(a, c) + best_sum(c + 1, b, parts - 1);
      if (cand > best) best = cand;
    }
    sum_memo_.emplace(key, best);
    return best;
  }

  std::vector<Index> pos_;
  std::vector<Rat> val_;
  std::map<std::pair<int, int>, Rat> norm_memo_;
  std::map<std::tuple<int, int, int>, Rat> sum_memo_;
};

// Certified lower bound: any admissible interval split yields one, so
// greedy near-even splits (plus the singleton split when the whole
// support is S_1) suffice for the experiment-scale estimates.
Rat lower_estimate_rec(const std::vector<Index>& pos, const std::vector<Rat>& val, int a, int b) {
  if (a == b) return val[static_cast<std::size_t>(a)];
  Rat best(0);
  Rat mass(0);
  for (int i = a; i <= b; ++i) {
    best = std::max(best, val[static_cast<std::size_t>(i)]);
    mass += val[static_cast<std::size_t>(i)];
  }
  Index m = pos[static_cast<std::size_t>(a)];
  int count = b - a + 1;
  if (m >= count) {
    best = std::max(best, Rat(mass / 2));
    return best;
  }
  int d = static_cast<int>(std::min<Index>(m, count));
  if (d >= 2) {
    Rat sum(0);
    int start = a;
    for (int k = 0; k < d; ++k) {
      int len = count / d + (k < count % d ? 1 : 0);
      int end = start + len - 1;
      sum += lower_estimate_rec(pos, val, start, end);
      start = end + 1;
    }
    best = std::max(best, Rat(sum / 2));
  }
  return best;
}

}  // namespace

Rat tsirelson_norm_exact(const FinVec& x) {
  TsirelsonDP dp(x);
  return dp.norm();
}

Rat tsirelson_lower_estimate(const FinVec& x) {
  if (x.is_zero()) return Rat(0);
  std::vector<Index> pos;
  std::vector<Rat> val;
  for (const auto& [i, c] : x) {
    pos.push_back(i);
    val.push_back(rat_abs(c));
  }
  return lower_estimate_rec(pos, val, 0, static_cast<int>(pos.size()) - 1);
}

}  // namespace banachlab
