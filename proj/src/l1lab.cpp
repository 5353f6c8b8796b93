#include "banachlab/l1lab.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace banachlab {

StepFunction::StepFunction(int level, std::vector<Rat> values)
    : level_(level), values_(std::move(values)) {
  if (level < 0 || level > 20) throw ValidationError("step function level out of range");
  if (values_.size() != (std::size_t{1} << level)) {
    throw ValidationError("step function needs exactly 2^level values");
  }
}

StepFunction StepFunction::constant(const Rat& v) { return StepFunction(0, {v}); }

StepFunction StepFunction::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string kw;
  int level = -1;
  if (!(in >> kw >> level) || kw != "level") {
    throw ValidationError("step function text must start with 'level g'");
  }
  if (level < 0 || level > 20) throw ValidationError("step function level out of range");
  std::vector<Rat> values;
  std::string tok;
  while (in >> tok) values.push_back(parse_rat(tok));
  return StepFunction(level, std::move(values));
}

StepFunction StepFunction::refined(int to_level) const {
  if (to_level < level_) throw ValidationError("cannot refine to a coarser grid");
  if (to_level > 20) throw ValidationError("refinement level out of range");
  std::size_t reps = std::size_t{1} << (to_level - level_);
  std::vector<Rat> out;
  out.reserve(values_.size() * reps);
  for (const Rat& v : values_) {
    for (std::size_t r = 0; r < reps; ++r) out.push_back(v);
  }
  return StepFunction(to_level, std::move(out));
}

int StepFunction::common_level(const std::vector<StepFunction>& fs) {
  int level = 0;
  for (const auto& f : fs) level = std::max(level, f.level());
  return level;
}

Rat StepFunction::l1_norm() const {
  Rat sum(0);
  for (const Rat& v : values_) sum += rat_abs(v);
  return sum / Rat(int_pow2(static_cast<unsigned long>(level_)));
}

StepFunction& StepFunction::operator+=(const StepFunction& other) {
  int lvl = std::max(level_, other.level());
  StepFunction a = refined(lvl);
  StepFunction b = other.refined(lvl);
  for (std::size_t c = 0; c < a.values_.size(); ++c) a.values_[c] += b.values_[c];
  *this = std::move(a);
  return *this;
}

StepFunction& StepFunction::operator-=(const StepFunction& other) {
  StepFunction neg = other;
  neg *= Rat(-1);
  return *this += neg;
}

StepFunction& StepFunction::operator*=(const Rat& c) {
  for (Rat& v : values_) v *= c;
  return *this;
}

bool operator==(const StepFunction& a, const StepFunction& b) {
  int lvl = std::max(a.level(), b.level());
  return a.refined(lvl).values() == b.refined(lvl).values();
}

std::string StepFunction::str() const {
  std::string out = "level " + std::to_string(level_);
  for (const Rat& v : values_) out += " " + rat_str(v);
  return out;
}

KhintchineReport khintchine_check(const std::vector<StepFunction>& fs, const Rat& tol,
                                  int scale_bits) {
  std::size_t n = fs.size();
  if (n == 0) throw ValidationError("khintchine_check needs at least one function");
  if (n > 16) throw CapError("khintchine_check caps at 16 functions (sign enumeration)");

  int lvl = StepFunction::common_level(fs);
  std::size_t cells = std::size_t{1} << lvl;
  std::vector<std::vector<Rat>> vals;  // vals[i][cell]
  vals.reserve(n);
  for (const auto& f : fs) vals.push_back(f.refined(lvl).values());
  Rat cell_width = make_rat(1, int_pow2(static_cast<unsigned long>(lvl)));

  // Sign average; eps and -eps give equal norms, so fix eps_1 = +1.
  Rat lhs(0);
  std::size_t half = std::size_t{1} << (n - 1);
  for (std::size_t mask = 0; mask < half; ++mask) {
    Rat norm(0);
    for (std::size_t c = 0; c < cells; ++c) {
      Rat s = vals[0][c];
      for (std::size_t i = 1; i < n; ++i) {
        if (mask & (std::size_t{1} << (i - 1))) {
          s -= vals[i][c];
        } else {
          s += vals[i][c];
        }
      }
      norm += rat_abs(s);
    }
    lhs += norm * cell_width;
  }
  lhs /= Rat(static_cast<long>(half));

  // Cellwise sqrt(sum of squares), outward rounded.
  RatInterval rhs{Rat(0), Rat(0)};
  for (std::size_t c = 0; c < cells; ++c) {
    Rat sq(0);
    for (std::size_t i = 0; i < n; ++i) sq += vals[i][c] * vals[i][c];
    RatInterval root = nth_root_enclosure(sq, 2, scale_bits);
    rhs.lo += root.lo;
    rhs.hi += root.hi;
  }
  rhs.lo *= cell_width;
  rhs.hi *= cell_width;

  // Certify lhs >= rhs/sqrt(2) - tol via the upper bound of rhs/sqrt(2).
  RatInterval inv_sqrt2 = nth_root_enclosure(make_rat(1, 2), 2, scale_bits);
  bool ok = lhs + tol >= rhs.hi * inv_sqrt2.hi;
  return {lhs, rhs, ok};
}

namespace {

Rat combo_norm(const std::vector<std::vector<Rat>>& vals, const std::vector<Rat>& a,
               const Rat& cell_width) {
  std::size_t cells = vals[0].size();
  Rat norm(0);
  for (std::size_t c = 0; c < cells; ++c) {
    Rat s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * vals[i][c];
    norm += rat_abs(s);
  }
  return norm * cell_width;
}

bool disjoint_supports(const std::vector<std::vector<Rat>>& vals) {
  std::size_t cells = vals[0].size();
  for (std::size_t c = 0; c < cells; ++c) {
    int nonzero = 0;
    for (const auto& v : vals) {
      if (v[c] != 0) ++nonzero;
    }
    if (nonzero > 1) return false;
  }
  return true;
}

}  // namespace

ThetaReport theta_lower_estimate(const std::vector<StepFunction>& fs, long grid,
                                 int refine_rounds) {
  std::size_t n = fs.size();
  if (n == 0) throw ValidationError("theta estimate needs at least one function");
  if (n > 12) throw CapError("theta estimate caps at 12 functions");
  if (grid < 2) throw ValidationError("theta grid must be >= 2");

  int lvl = StepFunction::common_level(fs);
  std::vector<std::vector<Rat>> vals;
  vals.reserve(n);
  for (const auto& f : fs) vals.push_back(f.refined(lvl).values());
  Rat cell_width = make_rat(1, int_pow2(static_cast<unsigned long>(lvl)));

  // Disjoint supports: ||sum a_i f_i|| = sum |a_i| ||f_i||, so the
  // constant is exactly min_i ||f_i||.
  if (disjoint_supports(vals)) {
    std::size_t arg = 0;
    Rat best = fs[0].l1_norm();
    for (std::size_t i = 1; i < n; ++i) {
      Rat v = fs[i].l1_norm();
      if (v < best) {
        best = v;
        arg = i;
      }
    }
    std::vector<Rat> witness(n, Rat(0));
    witness[arg] = Rat(1);
    return {best, witness, true};
  }

  Rat best;
  std::vector<Rat> best_a;
  bool first = true;
  auto try_point = [&](const std::vector<Rat>& a) {
    Rat v = combo_norm(vals, a, cell_width);
    if (first || v < best) {
      first = false;
      best = v;
      best_a = a;
    }
  };

  // Coordinate and pairwise-difference witnesses.
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rat> a(n, Rat(0));
    a[i] = Rat(1);
    try_point(a);
    for (std::size_t j = i + 1; j < n; ++j) {
      for (int sgn : {+1, -1}) {
        std::vector<Rat> b(n, Rat(0));
        b[i] = make_rat(1, 2);
        b[j] = make_rat(sgn, 2);
        try_point(b);
      }
    }
  }

  // Sign-pattern x simplex grid (coarser grid for larger n), then zoom.
  long g = n == 2 ? grid : std::min<long>(grid, 16);
  auto for_compositions = [&](auto&& self, std::size_t i, long rest,
                              std::vector<long>& c, const auto& emit) -> void {
    if (i + 1 == n) {
      c[i] = rest;
      emit(c);
      return;
    }
    for (long t = 0; t <= rest; ++t) {
      c[i] = t;
      self(self, i + 1, rest - t, c, emit);
    }
  };
  std::size_t sign_patterns = std::size_t{1} << (n - 1);  // a and -a coincide
  std::vector<long> c(n, 0);
  for (std::size_t sp = 0; sp < sign_patterns; ++sp) {
    for_compositions(for_compositions, 0, g, c, [&](const std::vector<long>& parts) {
      std::vector<Rat> a(n);
      for (std::size_t i = 0; i < n; ++i) {
        Rat coeff = make_rat(parts[i], g);
        if (i > 0 && (sp & (std::size_t{1} << (i - 1)))) coeff = -coeff;
        a[i] = coeff;
      }
      try_point(a);
    });
  }

  // Zoom refinement around the incumbent.
  Rat radius = make_rat(1, g);
  for (int round = 0; round < refine_rounds; ++round) {
    std::vector<Rat> center = best_a;
    Rat step = radius / 4;
    // Perturb pairs of coordinates, renormalizing onto the sphere.
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        for (int t = -3; t <= 3; ++t) {
          std::vector<Rat> a = center;
          a[i] += step * t;
          Rat mass(0);
          for (const Rat& v : a) mass += rat_abs(v);
          if (mass == 0) continue;
          for (Rat& v : a) v /= mass;
          try_point(a);
        }
      }
    }
    radius = step;
  }

  return {best, best_a, false};
}

std::vector<Rat> assignment_masses(const std::vector<StepFunction>& fs,
                                   const CellAssignment& assignment) {
  std::size_t n = fs.size();
  std::vector<StepFunction> refined;
  refined.reserve(n);
  for (const auto& f : fs) refined.push_back(f.refined(assignment.level));
  std::vector<Rat> masses(n, Rat(0));
  Rat cell_width = make_rat(1, int_pow2(static_cast<unsigned long>(assignment.level)));
  for (std::size_t c = 0; c < assignment.owner.size(); ++c) {
    int o = assignment.owner[c];
    if (o < 0) continue;
    if (static_cast<std::size_t>(o) >= n) throw ValidationError("assignment owner out of range");
    if (c >= refined[static_cast<std::size_t>(o)].values().size()) {
      throw ValidationError("assignment cell out of range");
    }
    masses[static_cast<std::size_t>(o)] += rat_abs(refined[static_cast<std::size_t>(o)].values()[c]) * cell_width;
  }
  return masses;
}

namespace {

struct DorSearch {
  const std::vector<std::vector<Rat>>& vals;  // vals[i][cell]
  Rat cell_width;
  std::vector<std::size_t> order;  // cells, big max mass first
  std::size_t n;

  std::vector<int> best_owner;
  Rat best_min;

  // masses[i]: mass assigned to owner i so far; potential[i]: mass owner
  // i could still collect from the remaining cells.  Leaving a cell
  // unassigned is never better, so it is not branched.
  void rec(std::size_t depth, std::vector<int>& owner, std::vector<Rat>& masses,
           std::vector<Rat>& potential) {
    if (depth == order.size()) {
      Rat mn = *std::min_element(masses.begin(), masses.end());
      if (mn > best_min) {
        best_min = mn;
        best_owner = owner;
      }
      return;
    }
    Rat bound = masses[0] + potential[0];
    for (std::size_t i = 1; i < n; ++i) bound = std::min(bound, Rat(masses[i] + potential[i]));
    if (bound <= best_min) return;

    std::size_t cell = order[depth];
    std::vector<Rat> gains(n);
    for (std::size_t i = 0; i < n; ++i) {
      gains[i] = rat_abs(vals[i][cell]) * cell_width;
      potential[i] -= gains[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      masses[i] += gains[i];
      owner[cell] = static_cast<int>(i);
      rec(depth + 1, owner, masses, potential);
      masses[i] -= gains[i];
      owner[cell] = -1;
    }
    for (std::size_t i = 0; i < n; ++i) potential[i] += gains[i];
  }
};

}  // namespace

DorReport dor_disjointify(const std::vector<StepFunction>& fs, const Rat& theta, DorMode mode,
                          std::size_t exact_cell_cap) {
  std::size_t n = fs.size();
  if (n == 0) throw ValidationError("disjointification needs at least one function");
  if (theta <= 0 || theta > 1) throw ValidationError("theta must lie in (0, 1]");

  int lvl = StepFunction::common_level(fs);
  std::size_t cells = std::size_t{1} << lvl;
  std::vector<std::vector<Rat>> vals;
  vals.reserve(n);
  for (const auto& f : fs) vals.push_back(f.refined(lvl).values());
  Rat cell_width = make_rat(1, int_pow2(static_cast<unsigned long>(lvl)));

  // Greedy: (cell, owner) pairs in decreasing mass order; first come,
  // first served per cell.
  struct Pair {
    Rat mass;
    std::size_t cell;
    std::size_t owner;
  };
  std::vector<Pair> pairs;
  for (std::size_t c = 0; c < cells; ++c) {
    for (std::size_t i = 0; i < n; ++i) {
      if (vals[i][c] != 0) pairs.push_back({rat_abs(vals[i][c]) * cell_width, c, i});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.mass != b.mass) return a.mass > b.mass;
    if (a.cell != b.cell) return a.cell < b.cell;
    return a.owner < b.owner;
  });
  CellAssignment greedy{lvl, std::vector<int>(cells, -1)};
  for (const auto& p : pairs) {
    if (greedy.owner[p.cell] == -1) greedy.owner[p.cell] = static_cast<int>(p.owner);
  }
  auto greedy_masses = assignment_masses(fs, greedy);
  Rat greedy_min = n == 0 ? Rat(0) : *std::min_element(greedy_masses.begin(), greedy_masses.end());

  if (mode == DorMode::Greedy) {
    return {greedy_min >= theta * theta, greedy_min, greedy, false};
  }

  if (cells > exact_cell_cap) {
    throw CapError("exact disjointification caps at " + std::to_string(exact_cell_cap) +
                   " cells");
  }

  DorSearch search{vals, cell_width, {}, n, greedy.owner, greedy_min};
  search.order.resize(cells);
  std::iota(search.order.begin(), search.order.end(), std::size_t{0});
  std::sort(search.order.begin(), search.order.end(), [&](std::size_t a, std::size_t b) {
    Rat ma(0), mb(0);
    for (std::size_t i = 0; i < n; ++i) {
      ma = std::max(ma, rat_abs(vals[i][a]));
      mb = std::max(mb, rat_abs(vals[i][b]));
    }
    if (ma != mb) return ma > mb;
    return a < b;
  });
  std::vector<int> owner(cells, -1);
  std::vector<Rat> masses(n, Rat(0));
  std::vector<Rat> potential(n, Rat(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < cells; ++c) potential[i] += rat_abs(vals[i][c]) * cell_width;
  }
  // The greedy assignment seeds the incumbent; the search records only
  // strict improvements.
  search.rec(0, owner, masses, potential);

  CellAssignment best{lvl, search.best_owner};
  auto best_masses = assignment_masses(fs, best);
  Rat best_min =
      best_masses.empty() ? Rat(0) : *std::min_element(best_masses.begin(), best_masses.end());
  if (best_min < greedy_min) {  // exact never loses to greedy
    best = greedy;
    best_min = greedy_min;
  }
  return {best_min >= theta * theta, best_min, best, true};
}

}  // namespace banachlab
