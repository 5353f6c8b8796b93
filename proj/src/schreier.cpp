#include "banachlab/schreier.hpp"

#include <cstdint>
#include <map>
#include <tuple>

namespace banachlab {

namespace {

// Memoized membership for contiguous segments [lo, hi] of a fixed
// strictly increasing universe.
class SegmentMembership {
 public:
  explicit SegmentMembership(const std::vector<Index>& elems) : elems_(elems) {}

  // Is {elems[lo], ..., elems[hi]} in S_n?  lo > hi encodes the empty set.
  bool member(int lo, int hi, int n) {
    if (lo > hi) return true;
    int count = hi - lo + 1;
    Index first = elems_[static_cast<std::size_t>(lo)];
    if (count == 1) return true;
    if (n == 0) return false;  // count >= 2
    if (first >= count) return true;  // S_1, hence every S_n with n >= 1
    if (first == 1) return false;     // min 1 admits only singletons at every level
    if (n >= count - 1) return true;  // min >= 2: F in S_{|F|-1}
    auto key = std::make_tuple(lo, hi, n);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    bool r = greedy(lo, hi, n);
    memo_.emplace(key, r);
    return r;
  }

 private:
  // Peel maximal S_{n-1} prefixes; membership iff at most min F chunks.
  bool greedy(int lo, int hi, int n) {
    Index budget = elems_[static_cast<std::size_t>(lo)];
    Index chunks = 0;
    int pos = lo;
    while (pos <= hi) {
      // Largest end with [pos, end] in S_{n-1}; prefixes of members are
      // members (hereditarity), so binary search applies.
      int good = pos, bad = hi + 1;
      while (bad - good > 1) {
        int mid = good + (bad - good) / 2;
        if (member(pos, mid, n - 1)) {
          good = mid;
        } else {
          bad = mid;
        }
      }
      pos = good + 1;
      if (++chunks > budget) return false;
    }
    return true;
  }

  const std::vector<Index>& elems_;
  std::map<std::tuple<int, int, int>, bool> memo_;
};

}  // namespace

bool schreier_member(const std::vector<Index>& F, int n) {
  if (n < 0) throw ValidationError("schreier_member requires n >= 0");
  for (std::size_t k = 0; k < F.size(); ++k) {
    if (F[k] < 1 || (k > 0 && F[k] <= F[k - 1])) {
      throw ValidationError("index set must be strictly increasing and positive");
    }
  }
  SegmentMembership seg(F);
  return seg.member(0, static_cast<int>(F.size()) - 1, n);
}

bool schreier_member_level(const std::vector<Index>& F, const Int& n) {
  if (n < 0) throw ValidationError("schreier_member_level requires n >= 0");
  for (std::size_t k = 0; k < F.size(); ++k) {
    if (F[k] < 1 || (k > 0 && F[k] <= F[k - 1])) {
      throw ValidationError("index set must be strictly increasing and positive");
    }
  }
  if (F.size() <= 1) return true;
  if (n == 0) return false;
  Index size = static_cast<Index>(F.size());
  if (F.front() == 1) return false;     // min 1 admits only singletons
  if (F.front() >= size) return true;   // S_1 subset of every S_n, n >= 1
  if (n >= size - 1) return true;       // min >= 2 implies F in S_{|F|-1}
  return schreier_member(F, static_cast<int>(n.get_si()));
}

bool is_admissible(const std::vector<FinVec>& vs, int n) {
  if (!is_block_sequence(vs)) {
    throw NotBlockError("admissibility requires a block sequence");
  }
  std::vector<Index> mins;
  mins.reserve(vs.size());
  for (const auto& v : vs) mins.push_back(v.min_support());
  return schreier_member(mins, n);
}

}  // namespace banachlab
