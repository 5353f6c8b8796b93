#include "banachlab/experiments.hpp"

#include <algorithm>

#include "banachlab/schreier.hpp"

namespace banachlab {

FunctionSpec standard_function(const OraclePtr& oracle) {
  return {"standard", [oracle](Index k) { return oracle->basis_vector(k); }, true};
}

FunctionSpec haar_image_function(const HaarPtr& sys, const OraclePtr& oracle) {
  // sigma is injective on reduced dyadics (distinct cells at the same
  // level are disjoint; distinct levels give distinct designated
  // members), so the values are distinct basis vectors.
  return {"haar:" + sys->id(),
          [sys, oracle](Index k) { return oracle->basis_vector(sigma(dyadic_enumerate(k), *sys)); },
          true};
}

void validate_partition(const TaggedPartition& part) {
  if (part.level < 0 || part.level > 30) throw ValidationError("partition level out of range");
  Index cells = Index{1} << part.level;
  if (static_cast<Index>(part.tags.size()) != cells) {
    throw ValidationError("partition needs exactly 2^level tags");
  }
  for (Index i = 0; i < cells; ++i) {
    const auto& tag = part.tags[static_cast<std::size_t>(i)];
    if (!tag) continue;
    Rat v = tag->value();
    Rat lo = make_rat(i, int_pow2(static_cast<unsigned long>(part.level)));
    Rat hi = make_rat(i + 1, int_pow2(static_cast<unsigned long>(part.level)));
    if (!(lo < v && v < hi)) {
      throw ValidationError("tag " + tag->str() + " not interior to cell " + std::to_string(i + 1));
    }
  }
}

FinVec riemann_vector(const FunctionSpec& f, const TaggedPartition& part,
                      const std::vector<int>& signs) {
  validate_partition(part);
  if (!signs.empty() && signs.size() != part.tags.size()) {
    throw ValidationError("sign list length mismatch");
  }
  FinVec sum;
  for (std::size_t i = 0; i < part.tags.size(); ++i) {
    if (!part.tags[i]) continue;
    FinVec v = f.at(dyadic_index(*part.tags[i]));
    if (!signs.empty() && signs[i] < 0) v *= Rat(-1);
    sum += v;
  }
  return sum;
}

NormValue riemann_sum(const FunctionSpec& f, const TaggedPartition& part,
                      const NormOracle& oracle) {
  NormValue nv = oracle.enclosure(riemann_vector(f, part));
  Rat scale = make_rat(1, int_pow2(static_cast<unsigned long>(part.level)));
  return {nv.lower * scale, nv.upper * scale, nv.exact};
}

namespace {

// Candidate tags per cell: interior dyadics of bounded extra depth.
std::vector<std::vector<DyadicRational>> cell_candidates(int m, int tag_depth) {
  std::vector<std::vector<DyadicRational>> out;
  Index cells = Index{1} << m;
  out.reserve(static_cast<std::size_t>(cells));
  for (Index c = 1; c <= cells; ++c) out.push_back(dyadics_in_cell(m, c, tag_depth));
  return out;
}

bool better(const NormValue& a, const NormValue& b) {
  // Compare certified lower bounds first.
  if (a.lower != b.lower) return a.lower > b.lower;
  return a.upper > b.upper;
}

RiemannReport riemann_search(const FunctionSpec& f, int m, const NormOracle& oracle,
                             const RiemannBudget& budget, bool signed_choice) {
  if (m < 1 || m > 20) throw ValidationError("riemann level must be in [1, 20]");
  Index cells = Index{1} << m;

  // Spreading-invariant oracle on distinct unit basis vectors: every
  // full tag choice gives the same value, and dropping tags never
  // helps (suppression 1-unconditionality), so tag every cell with its
  // first candidate.  Signs do not matter for the same reason.
  if (oracle.spreading_invariant() && f.disjoint_unit_basis) {
    TaggedPartition tags{m, {}};
    tags.tags.resize(static_cast<std::size_t>(cells));
    for (Index c = 1; c <= cells; ++c) {
      tags.tags[static_cast<std::size_t>(c - 1)] =
          DyadicRational::make(2 * c - 1, m + 1);  // cell midpoint
    }
    RiemannReport rep;
    rep.level = m;
    rep.tags = tags;
    if (signed_choice) rep.signs.assign(static_cast<std::size_t>(cells), 1);
    rep.value = riemann_sum(f, tags, oracle);
    rep.exhaustive = true;
    return rep;
  }

  auto cands = cell_candidates(m, budget.tag_depth);

  // Attempt full enumeration over the candidate universe.
  double combos = 1;
  for (const auto& cc : cands) {
    combos *= static_cast<double>(cc.size() * (signed_choice ? 2 : 1) + 1);
    if (combos > static_cast<double>(budget.combo_cap)) break;
  }
  if (combos <= static_cast<double>(budget.combo_cap)) {
    // Odometer over per-cell options: 0 = untagged, then (candidate,
    // sign) pairs in candidate order (+ before - per candidate).
    std::vector<std::size_t> option(static_cast<std::size_t>(cells), 0);
    RiemannReport best;
    best.level = m;
    bool first = true;
    while (true) {
      TaggedPartition tags{m, {}};
      tags.tags.resize(static_cast<std::size_t>(cells));
      std::vector<int> signs(static_cast<std::size_t>(cells), 1);
      for (Index c = 0; c < cells; ++c) {
        std::size_t opt = option[static_cast<std::size_t>(c)];
        if (opt == 0) continue;
        std::size_t ci = (opt - 1) / (signed_choice ? 2 : 1);
        tags.tags[static_cast<std::size_t>(c)] = cands[static_cast<std::size_t>(c)][ci];
        if (signed_choice && (opt - 1) % 2 == 1) signs[static_cast<std::size_t>(c)] = -1;
      }
      FinVec vec = riemann_vector(f, tags, signed_choice ? signs : std::vector<int>{});
      NormValue nv = oracle.enclosure(vec);
      Rat scale = make_rat(1, int_pow2(static_cast<unsigned long>(m)));
      NormValue scaled{nv.lower * scale, nv.upper * scale, nv.exact};
      if (first || better(scaled, best.value)) {
        first = false;
        best.value = scaled;
        best.tags = tags;
        if (signed_choice) best.signs = signs;
      }
      // Advance the odometer.
      Index c = 0;
      while (c < cells) {
        auto& o = option[static_cast<std::size_t>(c)];
        std::size_t limit = cands[static_cast<std::size_t>(c)].size() * (signed_choice ? 2 : 1);
        if (o < limit) {
          ++o;
          break;
        }
        o = 0;
        ++c;
      }
      if (c == cells) break;
    }
    best.exhaustive = true;
    return best;
  }

  // Greedy: per cell take the candidate with the deepest image support
  // (largest min support of the value vector); certified lower bound.
  TaggedPartition tags{m, {}};
  tags.tags.resize(static_cast<std::size_t>(cells));
  for (Index c = 0; c < cells; ++c) {
    const auto& cc = cands[static_cast<std::size_t>(c)];
    const DyadicRational* pick = nullptr;
    Index best_min = -1;
    for (const auto& d : cc) {
      FinVec v = f.at(dyadic_index(d));
      if (v.is_zero()) continue;
      if (v.min_support() > best_min) {
        best_min = v.min_support();
        pick = &d;
      }
    }
    if (pick) tags.tags[static_cast<std::size_t>(c)] = *pick;
  }
  RiemannReport rep;
  rep.level = m;
  rep.tags = tags;
  if (signed_choice) rep.signs.assign(static_cast<std::size_t>(cells), 1);
  rep.value = riemann_sum(f, tags, oracle);
  rep.exhaustive = false;
  return rep;
}

}  // namespace

RiemannReport riemann_sup(const FunctionSpec& f, int m, const NormOracle& oracle,
                          const RiemannBudget& budget) {
  return riemann_search(f, m, oracle, budget, false);
}

RiemannReport riemann_signed_sup(const FunctionSpec& f, int m, const NormOracle& oracle,
                                 const RiemannBudget& budget) {
  if (f.disjoint_unit_basis) {
    // Sign flips act coordinatewise on disjoint supports, so the signed
    // and unsigned sups agree for the 1-unconditional oracles here.
    RiemannReport rep = riemann_search(f, m, oracle, budget, false);
    rep.signs.assign(rep.tags.tags.size(), 1);
    return rep;
  }
  return riemann_search(f, m, oracle, budget, true);
}

HaarWitnessReport haar_l1_witness(const NormOracle& oracle, const HaarSystem& sys, int n,
                                  const HaarWitnessBudget& budget) {
  if (n < 0 || n > 16) throw ValidationError("haar witness level must be in [0, 16]");
  int m_cap = budget.m_cap > 0 ? budget.m_cap : n;
  if (m_cap < n) throw ValidationError("m_cap must be >= n");

  HaarWitnessReport best;
  best.n = n;
  bool first = true;
  for (int m = n; m <= m_cap; ++m) {
    Index cells = Index{1} << m;
    Index base = cells;  // the (2^m)-th member is automatically >= 2^m
    std::vector<Index> offsets{0};
    if (!oracle.spreading_invariant()) {
      for (Index t = 1; t <= budget.choice_budget; ++t) offsets.push_back(t);
    }
    for (Index off : offsets) {
      std::vector<Index> idx(static_cast<std::size_t>(cells));
      FinVec vec;
      for (Index j = 0; j < cells; ++j) {
        idx[static_cast<std::size_t>(j)] = sys.kth_member(m, j, base + off);
        vec += oracle.basis_vector(idx[static_cast<std::size_t>(j)]);
      }
      NormValue nv = oracle.enclosure(vec);
      Rat scale = make_rat(1, int_pow2(static_cast<unsigned long>(m)));
      NormValue scaled{nv.lower * scale, nv.upper * scale, nv.exact};
      if (first || better(scaled, best.value)) {
        first = false;
        best.m = m;
        best.value = scaled;
        best.indices = idx;
      }
    }
  }
  best.exhaustive = oracle.spreading_invariant();
  return best;
}

namespace {

// Lexicographic enumeration of size-n windows in [lo, hi]; calls fn for
// each until the cap is hit.  Returns true when complete.
bool for_each_window(Index lo, Index hi, int n, long cap,
                     const std::function<void(const std::vector<Index>&)>& fn) {
  std::vector<Index> w(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) w[static_cast<std::size_t>(j)] = lo + j;
  if (w.back() > hi) return true;  // no windows at all
  long count = 0;
  while (true) {
    fn(w);
    if (++count >= cap) return false;
    int j = n - 1;
    while (j >= 0 && w[static_cast<std::size_t>(j)] == hi - (n - 1 - j)) --j;
    if (j < 0) return true;
    ++w[static_cast<std::size_t>(j)];
    for (int t = j + 1; t < n; ++t) {
      w[static_cast<std::size_t>(t)] = w[static_cast<std::size_t>(t - 1)] + 1;
    }
  }
}

}  // namespace

WindowProfileReport spreading_window_profile(const NormOracle& oracle,
                                             const std::vector<Rat>& coeffs, Index lo, Index hi,
                                             long window_cap) {
  int n = static_cast<int>(coeffs.size());
  if (n < 1) throw ValidationError("window profile needs at least one coefficient");
  if (lo < n) throw ValidationError("window start must be >= the window length");
  if (hi < lo + n - 1) throw ValidationError("window range too small");

  WindowProfileReport rep;
  rep.n = n;

  auto eval_window = [&](const std::vector<Index>& w) {
    FinVec v;
    for (int j = 0; j < n; ++j) {
      v += coeffs[static_cast<std::size_t>(j)] * oracle.basis_vector(w[static_cast<std::size_t>(j)]);
    }
    return oracle.enclosure(v);
  };

  if (oracle.spreading_invariant()) {
    std::vector<Index> w(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) w[static_cast<std::size_t>(j)] = lo + j;
    NormValue nv = eval_window(w);
    rep.min_value = rep.max_value = nv;
    rep.min_window = rep.max_window = w;
    rep.windows = 1;
    rep.exhaustive = true;
    return rep;
  }

  bool first = true;
  bool complete = for_each_window(lo, hi, n, window_cap, [&](const std::vector<Index>& w) {
    NormValue nv = eval_window(w);
    ++rep.windows;
    if (first) {
      first = false;
      rep.min_value = rep.max_value = nv;
      rep.min_window = rep.max_window = w;
      return;
    }
    if (nv.lower < rep.min_value.lower ||
        (nv.lower == rep.min_value.lower && nv.upper < rep.min_value.upper)) {
      rep.min_value = nv;
      rep.min_window = w;
    }
    if (better(nv, rep.max_value)) {
      rep.max_value = nv;
      rep.max_window = w;
    }
  });
  if (first) throw ValidationError("window range produced no windows");
  rep.exhaustive = complete;
  return rep;
}

namespace {

// Natural enumeration of the system's cells: A^1_0, A^1_1, A^2_0, ...
std::pair<int, Index> nth_cell(int k) {
  int level = 1;
  while ((Index{1} << (level + 1)) - 2 < k) ++level;
  return {level, Index(k) - ((Index{1} << level) - 2) - 1};
}

}  // namespace

ArrayProfileReport asymptotic_array_profile(const NormOracle& oracle, const HaarSystem& sys, int n,
                                            Index pos_hi, long diag_cap) {
  if (n < 1 || n > 64) throw ValidationError("array profile length out of range");
  if (pos_hi < 2 * n - 1) throw ValidationError("position range too small");

  std::vector<std::pair<int, Index>> rows;
  rows.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) rows.push_back(nth_cell(k));

  ArrayProfileReport rep;
  rep.n = n;
  bool first = true;
  bool complete = for_each_window(n, pos_hi, n, diag_cap, [&](const std::vector<Index>& w) {
    FinVec v;
    for (int j = 0; j < n; ++j) {
      auto [level, cell] = rows[static_cast<std::size_t>(j)];
      v += oracle.basis_vector(sys.kth_member(level, cell, w[static_cast<std::size_t>(j)]));
    }
    NormValue nv = oracle.enclosure(v);
    Rat scale = make_rat(1, n);
    NormValue scaled{nv.lower * scale, nv.upper * scale, nv.exact};
    ++rep.diagonals;
    if (first || scaled.lower < rep.min_value.lower ||
        (scaled.lower == rep.min_value.lower && scaled.upper < rep.min_value.upper)) {
      first = false;
      rep.min_value = scaled;
      rep.min_positions = w;
    }
  });
  if (first) throw ValidationError("no diagonals enumerated");
  rep.exhaustive = complete;
  return rep;
}

std::vector<NormalizedVector> difference_sequence(const NormOracle& oracle, int count,
                                                  Index start) {
  if (count < 0 || start < 1) throw ValidationError("bad difference sequence parameters");
  std::vector<NormalizedVector> out;
  out.reserve(static_cast<std::size_t>(count));
  for (Index i = start; i < start + count; ++i) {
    FinVec raw = oracle.basis_vector(2 * i) - oracle.basis_vector(2 * i + 1);
    NormValue nv = oracle.eval(raw);
    FinVec vec = raw;
    if (nv.exact) vec *= Rat(1) / nv.lower;
    out.push_back({std::move(vec), nv});
  }
  return out;
}

AveragingReport cyclic_average_check(const NormOracle& oracle, const std::vector<FinVec>& ws,
                                     const std::vector<Rat>& coeffs) {
  if (ws.empty() || ws.size() != coeffs.size()) {
    throw ValidationError("cyclic average: need equally many vectors and coefficients");
  }
  if (!is_block_sequence(ws)) {
    throw NotBlockError("cyclic average requires a block sequence");
  }
  for (const Rat& a : coeffs) {
    if (a < 0) throw ValidationError("cyclic average requires nonnegative coefficients");
  }
  std::size_t L = ws.size();

  auto exact_norm = [&](const FinVec& v) {
    NormValue nv = oracle.eval(v);
    if (!nv.exact) throw ValidationError("cyclic average requires an exact oracle");
    return nv.lower;
  };

  FinVec plain_sum;
  for (const auto& w : ws) plain_sum += w;
  Rat coeff_sum(0);
  for (const Rat& a : coeffs) coeff_sum += a;

  FinVec combined_vec;
  for (std::size_t i = 0; i < L; ++i) combined_vec += coeffs[i] * ws[i];

  AveragingReport rep;
  rep.combined = exact_norm(combined_vec);
  Rat avg(0);
  for (std::size_t shift = 0; shift < L; ++shift) {
    FinVec v;
    for (std::size_t i = 0; i < L; ++i) v += coeffs[(i + shift) % L] * ws[i];
    avg += exact_norm(v);
  }
  rep.cyclic_average = avg / Rat(static_cast<long>(L));
  rep.scaled_sum = coeff_sum / Rat(static_cast<long>(L)) * exact_norm(plain_sum);
  rep.triangle_ok = rep.cyclic_average >= rep.scaled_sum;
  if (!rep.triangle_ok) {
    throw Error("cyclic averaging triangle relation failed — this is a bug");
  }
  rep.half_bound_ok = rep.combined >= rep.scaled_sum / 2;
  return rep;
}

}  // namespace banachlab
