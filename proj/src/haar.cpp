#include "banachlab/haar.hpp"

#include <map>

#include "banachlab/errors.hpp"

namespace banachlab {

void HaarSystem::check_cell(int level, Index j) {
  if (level < 0 || level > 62 || j < 0 || j >= (Index{1} << level)) {
    throw ValidationError("bad Haar cell (level " + std::to_string(level) + ", j " +
                          std::to_string(j) + ")");
  }
}

Index HaarSystem::kth_member(int level, Index j, Index k) const {
  check_cell(level, j);
  if (k < 1) throw ValidationError("kth_member requires k >= 1");
  Index found = 0;
  for (Index i = 1;; ++i) {
    if (member(level, j, i)) {
      if (++found == k) return i;
    }
  }
}

Index bit_reverse(Index j, int bits) {
  Index r = 0;
  for (int b = 0; b < bits; ++b) {
    r = (r << 1) | ((j >> b) & 1);
  }
  return r;
}

namespace {

class CanonicalHaar final : public HaarSystem {
 public:
  std::string id() const override { return "canonical"; }

  bool member(int level, Index j, Index i) const override {
    check_cell(level, j);
    if (i < 1) return false;
    return ((i - 1) & ((Index{1} << level) - 1)) == bit_reverse(j, level);
  }

  Index kth_member(int level, Index j, Index k) const override {
    check_cell(level, j);
    if (k < 1) throw ValidationError("kth_member requires k >= 1");
    return (k - 1) * (Index{1} << level) + bit_reverse(j, level) + 1;
  }
};

class LocationHaar final : public HaarSystem {
 public:
  LocationHaar(std::function<DyadicRational(Index)> points, std::string id, Index validate_prefix)
      : points_(std::move(points)), id_(std::move(id)) {
    std::map<DyadicRational, Index> seen;
    for (Index k = 1; k <= validate_prefix; ++k) {
      DyadicRational d = points_(k);
      if (d.is_zero()) {
        throw ValidationError("dyadic enumeration maps " + std::to_string(k) + " to 0");
      }
      auto [it, fresh] = seen.emplace(d, k);
      if (!fresh) {
        throw ValidationError("dyadic enumeration not injective: indices " +
                              std::to_string(it->second) + " and " + std::to_string(k));
      }
    }
  }

  std::string id() const override { return id_; }

  // i in A^n_j  iff  d_i lies in [j/2^n, (j+1)/2^n).
  bool member(int level, Index j, Index i) const override {
    check_cell(level, j);
    if (i < 1) return false;
    DyadicRational d = points_(i);
    if (d.is_zero()) return false;
    Rat scaled = d.value() * Rat(int_pow2(static_cast<unsigned long>(level)));
    return Rat(j) <= scaled && scaled < Rat(j + 1);
  }

  Index kth_member(int level, Index j, Index k) const override {
    check_cell(level, j);
    if (k < 1) throw ValidationError("kth_member requires k >= 1");
    auto& cache = cache_[{level, j}];
    Index i = cache.empty() ? 0 : cache.back();
    while (static_cast<Index>(cache.size()) < k) {
      if (i >= kScanCap) {
        throw CapError("cell (" + std::to_string(level) + ", " + std::to_string(j) +
                       ") has fewer than " + std::to_string(k) + " members below the scan cap");
      }
      ++i;
      if (member(level, j, i)) cache.push_back(i);
    }
    return cache[static_cast<std::size_t>(k - 1)];
  }

 private:
  static constexpr Index kScanCap = 100000000;

  std::function<DyadicRational(Index)> points_;
  std::string id_;
  mutable std::map<std::pair<int, Index>, std::vector<Index>> cache_;
};

class ResidueHaar final : public HaarSystem {
 public:
  explicit ResidueHaar(std::vector<std::vector<Index>> residues) : residues_(std::move(residues)) {
    if (residues_.empty() || residues_[0] != std::vector<Index>{0}) {
      throw ValidationError("residue table must start with level 0 = {0}");
    }
    for (std::size_t n = 1; n < residues_.size(); ++n) {
      Index m = Index{1} << n;
      if (static_cast<Index>(residues_[n].size()) != m) {
        throw ValidationError("residue level " + std::to_string(n) + " must list " +
                              std::to_string(m) + " classes");
      }
      std::vector<bool> seen(static_cast<std::size_t>(m), false);
      for (Index j = 0; j < m; ++j) {
        Index r = residues_[n][static_cast<std::size_t>(j)];
        if (r < 0 || r >= m || seen[static_cast<std::size_t>(r)]) {
          throw ValidationError("residue level " + std::to_string(n) +
                                " is not a permutation of [0, 2^n)");
        }
        seen[static_cast<std::size_t>(r)] = true;
        // Refinement: the two children of cell j at level n-1 must carry
        // residues congruent to the parent's modulo 2^(n-1).
        Index parent = residues_[n - 1][static_cast<std::size_t>(j / 2)];
        if ((r & (m / 2 - 1)) != (parent & (m / 2 - 1))) {
          throw ValidationError("residue level " + std::to_string(n) + ", cell " +
                                std::to_string(j) + " does not refine its parent");
        }
      }
    }
  }

  std::string id() const override { return "residue"; }

  int max_level() const override { return static_cast<int>(residues_.size()) - 1; }

  bool member(int level, Index j, Index i) const override {
    check_cell(level, j);
    if (i < 1) return false;
    if (static_cast<std::size_t>(level) >= residues_.size()) {
      throw ValidationError("residue system has no level " + std::to_string(level));
    }
    return ((i - 1) & ((Index{1} << level) - 1)) ==
           residues_[static_cast<std::size_t>(level)][static_cast<std::size_t>(j)];
  }

  Index kth_member(int level, Index j, Index k) const override {
    check_cell(level, j);
    if (k < 1) throw ValidationError("kth_member requires k >= 1");
    if (static_cast<std::size_t>(level) >= residues_.size()) {
      throw ValidationError("residue system has no level " + std::to_string(level));
    }
    return (k - 1) * (Index{1} << level) +
           residues_[static_cast<std::size_t>(level)][static_cast<std::size_t>(j)] + 1;
  }

  const std::vector<std::vector<Index>>& table() const { return residues_; }

 private:
  std::vector<std::vector<Index>> residues_;
};

}  // namespace

HaarPtr canonical_haar() { return std::make_shared<CanonicalHaar>(); }

HaarPtr dyadic_location_haar() {
  return dyadic_location_haar([](Index k) { return dyadic_enumerate(k); }, "locations");
}

HaarPtr dyadic_location_haar(std::function<DyadicRational(Index)> points, std::string id,
                             Index validate_prefix) {
  return std::make_shared<LocationHaar>(std::move(points), std::move(id), validate_prefix);
}

HaarPtr residue_haar(const std::vector<std::vector<Index>>& residues) {
  return std::make_shared<ResidueHaar>(residues);
}

HaarPtr make_haar(const std::string& spec) {
  if (spec == "canonical") return canonical_haar();
  if (spec == "locations") return dyadic_location_haar();
  throw ValidationError("unknown Haar system '" + spec + "'");
}

Index sigma(const DyadicRational& d, const HaarSystem& sys) {
  return sys.kth_member(d.level(), d.numerator(), Index{1} << d.level());
}

}  // namespace banachlab
