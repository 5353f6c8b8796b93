#include "banachlab/wiw.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace banachlab {

// ---------------------------------------------------------------------------
// WeightSchedule
// ---------------------------------------------------------------------------

WeightSchedule WeightSchedule::standard() { return WeightSchedule(); }

WeightSchedule WeightSchedule::custom(std::vector<Int> a, std::vector<Int> b,
                                      bool require_growth) {
  if (a.empty() || b.empty()) throw ValidationError("weight schedule tables must be nonempty");
  if (a[0] != 2) throw ValidationError("weight schedule requires a_1 = 2");
  if (b[0] != 1) throw ValidationError("weight schedule requires b_1 = 1");
  for (std::size_t k = 1; k < a.size(); ++k) {
    if (a[k] <= a[k - 1]) throw ValidationError("a must be strictly increasing");
  }
  for (std::size_t k = 1; k < b.size(); ++k) {
    if (b[k] <= b[k - 1]) throw ValidationError("b must be strictly increasing");
  }
  WeightSchedule s;
  s.custom_ = true;
  s.custom_a_ = std::move(a);
  s.custom_b_ = std::move(b);
  if (require_growth) {
    int upto = static_cast<int>(std::min(s.custom_a_.size(), s.custom_b_.size()));
    if (!s.growth_condition_holds(upto)) {
      throw ValidationError("weight schedule violates b_{k+1} > b_k ln(a_{k+1}^2)");
    }
  }
  return s;
}

Int WeightSchedule::a(int k) const {
  if (k < 1) throw ValidationError("weight index must be >= 1");
  if (custom_) {
    if (static_cast<std::size_t>(k) > custom_a_.size()) {
      throw ValidationError("custom schedule has no a_" + std::to_string(k));
    }
    return custom_a_[static_cast<std::size_t>(k - 1)];
  }
  return int_pow2(static_cast<unsigned long>(k));
}

namespace {

// ceil(ln y) for y > 1, certified via rational enclosures; refines the
// series until both endpoints agree.
Int certified_ceil_ln(const Rat& y) {
  for (int terms = 24; terms <= 192; terms *= 2) {
    RatInterval l = ln_enclosure(y, terms);
    Int clo = rat_ceil(l.lo);
    Int chi = rat_ceil(l.hi);
    if (clo == chi) return clo;
  }
  throw Error("could not certify ceil(ln) — enclosure straddles an integer");
}

}  // namespace

Int WeightSchedule::b(int k) const {
  if (k < 1) throw ValidationError("weight index must be >= 1");
  if (custom_) {
    if (static_cast<std::size_t>(k) > custom_b_.size()) {
      throw ValidationError("custom schedule has no b_" + std::to_string(k));
    }
    return custom_b_[static_cast<std::size_t>(k - 1)];
  }
  if (b_memo_.empty()) b_memo_.push_back(1);
  while (static_cast<std::size_t>(k) > b_memo_.size()) {
    int next = static_cast<int>(b_memo_.size()) + 1;
    Rat asq = Rat(a(next)) * Rat(a(next));
    b_memo_.push_back(b_memo_.back() * certified_ceil_ln(asq) + 1);
  }
  return b_memo_[static_cast<std::size_t>(k - 1)];
}

bool WeightSchedule::growth_condition_holds(int upto) const {
  for (int k = 1; k < upto; ++k) {
    Rat asq = Rat(a(k + 1)) * Rat(a(k + 1));
    bool decided = false;
    for (int terms = 24; terms <= 192 && !decided; terms *= 2) {
      RatInterval l = ln_enclosure(asq, terms);
      Rat bk(b(k)), bk1(b(k + 1));
      if (bk1 > bk * l.hi) {
        decided = true;  // certified true for this k
      } else if (bk1 <= bk * l.lo) {
        return false;  // certified false
      }
    }
    if (!decided) throw Error("could not certify the growth condition at k = " + std::to_string(k));
  }
  return true;
}

// ---------------------------------------------------------------------------
// WiwFunctional
// ---------------------------------------------------------------------------

WiwFunctional WiwFunctional::leaf(int sign, Index index) {
  if (sign != 1 && sign != -1) throw ValidationError("leaf sign must be +-1");
  if (index < 1) throw ValidationError("leaf index must be >= 1");
  WiwFunctional f;
  f.sign_ = sign;
  f.index_ = index;
  return f;
}

WiwFunctional WiwFunctional::node(std::vector<int> weight_indices,
                                  std::vector<WiwFunctional> children) {
  if (weight_indices.empty()) throw ValidationError("node requires a nonempty weight tuple");
  for (int k : weight_indices) {
    if (k < 1) throw ValidationError("weight indices must be >= 1");
  }
  if (children.empty()) throw ValidationError("node requires children");
  WiwFunctional f;
  f.weight_indices_ = std::move(weight_indices);
  f.children_ = std::move(children);
  return f;
}

Index WiwFunctional::min_support() const {
  if (is_leaf()) return index_;
  Index m = children_.front().min_support();
  for (const auto& c : children_) m = std::min(m, c.min_support());
  return m;
}

Index WiwFunctional::max_support() const {
  if (is_leaf()) return index_;
  Index m = children_.front().max_support();
  for (const auto& c : children_) m = std::max(m, c.max_support());
  return m;
}

std::optional<Int> WiwFunctional::weight(const WeightSchedule& sched) const {
  if (is_leaf()) return std::nullopt;
  Int w(1);
  for (int k : weight_indices_) w *= sched.a(k);
  return w;
}

std::string WiwFunctional::encode() const {
  if (is_leaf()) {
    return std::string("(leaf ") + (sign_ > 0 ? "+" : "-") + " " + std::to_string(index_) + ")";
  }
  std::string out = "(w";
  for (int k : weight_indices_) out += " " + std::to_string(k);
  for (const auto& c : children_) out += " " + c.encode();
  out += ")";
  return out;
}

namespace {

struct SexprParser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  char peek() {
    skip_ws();
    if (pos >= text.size()) throw ValidationError("unexpected end of functional encoding");
    return text[pos];
  }

  void expect(char c) {
    if (peek() != c) {
      throw ValidationError(std::string("expected '") + c + "' in functional encoding");
    }
    ++pos;
  }

  std::string token() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')') {
      ++pos;
    }
    if (start == pos) throw ValidationError("expected token in functional encoding");
    return std::string(text.substr(start, pos - start));
  }

  WiwFunctional parse() {
    expect('(');
    std::string head = token();
    if (head == "leaf") {
      std::string sign = token();
      if (sign != "+" && sign != "-") throw ValidationError("leaf sign must be + or -");
      std::string idx = token();
      expect(')');
      try {
        return WiwFunctional::leaf(sign == "+" ? 1 : -1, std::stoll(idx));
      } catch (const std::exception&) {
        throw ValidationError("bad leaf index '" + idx + "'");
      }
    }
    if (head != "w") throw ValidationError("expected 'w' or 'leaf', got '" + head + "'");
    std::vector<int> ks;
    while (peek() != '(') {
      std::string t = token();
      try {
        ks.push_back(std::stoi(t));
      } catch (const std::exception&) {
        throw ValidationError("bad weight index '" + t + "'");
      }
    }
    std::vector<WiwFunctional> children;
    while (peek() == '(') children.push_back(parse());
    expect(')');
    return WiwFunctional::node(std::move(ks), std::move(children));
  }
};

}  // namespace

WiwFunctional WiwFunctional::decode(std::string_view text) {
  SexprParser p{text};
  WiwFunctional f = p.parse();
  p.skip_ws();
  if (p.pos != text.size()) throw ValidationError("trailing characters in functional encoding");
  return f;
}

// ---------------------------------------------------------------------------
// Validation and evaluation
// ---------------------------------------------------------------------------

namespace {

std::optional<WiwViolation> find_violation_at(const WiwFunctional& f, const WeightSchedule& sched,
                                              const std::string& where) {
  if (f.is_leaf()) return std::nullopt;
  const auto& cs = f.children();
  for (std::size_t q = 0; q < cs.size(); ++q) {
    auto v = find_violation_at(cs[q], sched, where + ".child[" + std::to_string(q) + "]");
    if (v) return v;
  }
  for (std::size_t q = 1; q < cs.size(); ++q) {
    if (cs[q - 1].max_support() >= cs[q].min_support()) {
      return WiwViolation{"successive", where + ".child[" + std::to_string(q) + "]",
                          "max supp " + std::to_string(cs[q - 1].max_support()) +
                              " >= min supp " + std::to_string(cs[q].min_support())};
    }
  }
  for (std::size_t q = 1; q < cs.size(); ++q) {
    auto w = cs[q].weight(sched);
    if (w && *w <= cs[q - 1].max_support()) {
      return WiwViolation{"very-fast-growing", where + ".child[" + std::to_string(q) + "]",
                          "weight " + w->get_str() + " <= previous max supp " +
                              std::to_string(cs[q - 1].max_support())};
    }
  }
  Int bsum(0);
  for (int k : f.weight_indices()) bsum += sched.b(k);
  std::vector<Index> mins;
  mins.reserve(cs.size());
  for (const auto& c : cs) mins.push_back(c.min_support());
  if (!schreier_member_level(mins, bsum)) {
    std::string set;
    for (Index m : mins) set += (set.empty() ? "" : ",") + std::to_string(m);
    return WiwViolation{"admissibility", where,
                        "{" + set + "} not in S_" + bsum.get_str()};
  }
  return std::nullopt;
}

}  // namespace

std::optional<WiwViolation> find_violation(const WiwFunctional& f, const WeightSchedule& sched) {
  return find_violation_at(f, sched, "root");
}

Rat eval_functional_unchecked(const WiwFunctional& f, const FinVec& x,
                              const WeightSchedule& sched) {
  if (f.is_leaf()) return Rat(f.sign()) * x.coeff(f.index());
  Rat sum(0);
  for (const auto& c : f.children()) sum += eval_functional_unchecked(c, x, sched);
  return sum / Rat(*f.weight(sched));
}

Rat eval_functional(const WiwFunctional& f, const FinVec& x, const WeightSchedule& sched) {
  if (auto v = find_violation(f, sched)) {
    throw ValidationError("invalid functional (" + v->rule + " at " + v->where + "): " + v->detail);
  }
  return eval_functional_unchecked(f, x, sched);
}

bool certificate_valid(const NormCertificate& cert, const WeightSchedule& sched) {
  if (find_violation(cert.witness, sched)) return false;
  return eval_functional_unchecked(cert.witness, cert.target, sched) == cert.value;
}

// ---------------------------------------------------------------------------
// Budgeted lower-bound search
// ---------------------------------------------------------------------------

namespace {

struct SuppEntry {
  Index pos;
  Rat absval;
  int sign;
};

std::vector<SuppEntry> support_entries(const FinVec& x) {
  std::vector<SuppEntry> out;
  for (const auto& [i, c] : x) out.push_back({i, rat_abs(c), c > 0 ? 1 : -1});
  return out;
}

// Greedy S_n family maximizing picked |coefficient| mass: take points in
// decreasing |value| order while the set stays admissible.
std::vector<Index> greedy_schreier_family(const std::vector<SuppEntry>& entries, const Int& level) {
  std::vector<std::size_t> order(entries.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) {
    if (entries[l].absval != entries[r].absval) return entries[l].absval > entries[r].absval;
    return entries[l].pos < entries[r].pos;
  });
  std::vector<Index> picked;
  for (std::size_t oi : order) {
    std::vector<Index> trial = picked;
    trial.insert(std::upper_bound(trial.begin(), trial.end(), entries[oi].pos), entries[oi].pos);
    if (schreier_member_level(trial, level)) picked = std::move(trial);
  }
  return picked;
}

WiwFunctional leaves_over(const std::vector<Index>& family, const FinVec& x,
                          const std::vector<int>& ks) {
  std::vector<WiwFunctional> leaves;
  leaves.reserve(family.size());
  for (Index i : family) {
    leaves.push_back(WiwFunctional::leaf(x.coeff(i) >= 0 ? 1 : -1, i));
  }
  return WiwFunctional::node(ks, std::move(leaves));
}

struct Candidate {
  Rat value;
  WiwFunctional f;
};

void consider(std::optional<Candidate>& best, const WiwFunctional& f, const FinVec& x,
              const WeightSchedule& sched) {
  if (find_violation(f, sched)) return;
  Rat v = eval_functional_unchecked(f, x, sched);
  if (!best || v > best->value ||
      (v == best->value && f.encode() < best->f.encode())) {
    best = Candidate{v, f};
  }
}

// Best one-node functional on x restricted to [lo, hi]: the best leaf,
// or (1/a_k)(leaves over a greedy S_{b_k} family) for k <= k_max with
// a_k above the weight floor (very-fast-growing constraint from the
// previous sibling).
std::optional<Candidate> best_flat_piece(const FinVec& x, const WeightSchedule& sched, int k_max,
                                         const Int& weight_floor) {
  auto entries = support_entries(x);
  if (entries.empty()) return std::nullopt;
  std::optional<Candidate> best;
  // Leaf: infinite weight, always allowed.
  const SuppEntry* top = &entries.front();
  for (const auto& e : entries) {
    if (e.absval > top->absval) top = &e;
  }
  consider(best, WiwFunctional::leaf(top->sign, top->pos), x, sched);
  for (int k = 1; k <= k_max; ++k) {
    Int ak, bk;
    try {
      ak = sched.a(k);
      bk = sched.b(k);
    } catch (const ValidationError&) {
      break;  // past the end of a custom schedule
    }
    if (ak <= weight_floor) continue;
    auto family = greedy_schreier_family(entries, bk);
    if (family.empty()) continue;
    consider(best, leaves_over(family, x, {k}), x, sched);
  }
  return best;
}

}  // namespace

NormCertificate wiw_lower_certificate(const FinVec& x, const WeightSchedule& sched,
                                      const WiwSearchBudget& budget) {
  if (x.is_zero()) {
    throw ValidationError("lower-bound search requires a nonzero vector");
  }
  std::optional<Candidate> best = best_flat_piece(x, sched, budget.max_weight_index, Int(0));

  // Nested constructions: split the support into successive blocks of
  // roughly equal l1 mass, take the best piece per block (respecting
  // the very-fast-growing floor), and combine under a root tuple.
  // Sweeping every sub-budget keeps the candidate set monotone in the
  // budget.
  if (budget.depth >= 2) {
    auto entries = support_entries(x);
    int s = static_cast<int>(entries.size());
    for (int k_used = 1; k_used <= budget.max_weight_index; ++k_used) {
      for (int parts = 2; parts <= std::min<int>(budget.max_parts, s); ++parts) {
        if (Index(parts) > entries.front().pos) break;  // root S_1-admissibility
        // Block boundaries by cumulative mass.
        Rat total = x.abs_sum();
        std::vector<std::pair<int, int>> blocks;
        int start = 0;
        Rat acc(0);
        for (int q = 0; q < parts; ++q) {
          Rat goal = total * Rat(q + 1) / Rat(parts);
          int end = start;
          while (end < s - (parts - 1 - q) - 1) {
            acc += entries[static_cast<std::size_t>(end)].absval;
            if (acc >= goal) break;
            ++end;
          }
          if (q == parts - 1) end = s - 1;
          blocks.emplace_back(start, end);
          start = end + 1;
        }
        std::vector<WiwFunctional> children;
        Int floor_w(0);
        bool ok = true;
        for (auto [blo, bhi] : blocks) {
          FinVec piece;
          for (int i = blo; i <= bhi; ++i) {
            piece.set(entries[static_cast<std::size_t>(i)].pos,
                      x.coeff(entries[static_cast<std::size_t>(i)].pos));
          }
          auto cand = best_flat_piece(piece, sched, k_used, floor_w);
          if (!cand) {
            ok = false;
            break;
          }
          children.push_back(cand->f);
          floor_w = Int(children.back().max_support());
        }
        if (ok) {
          consider(best, WiwFunctional::node({1}, children), x, sched);
        }
      }
    }
  }

  // Small supports: fold in the bounded exhaustive search.
  if (x.support_size() <= 6) {
    WiwExhaustiveCaps caps;
    caps.support_cap = 6;
    auto ex = wiw_exhaustive_norm(x, sched, caps);
    consider(best, ex.best, x, sched);
  }

  if (!best) throw Error("lower-bound search produced no candidate");
  return NormCertificate{best->value, best->f, x};
}

// ---------------------------------------------------------------------------
// Bounded exhaustive norm
// ---------------------------------------------------------------------------

namespace {

// One enumerated functional on a support subset: its weight (nullopt =
// leaf, infinite), value against x, tree depth and witness.
struct MaskEntry {
  std::optional<Int> weight;
  Rat value;
  int depth;
  WiwFunctional f;
};

struct TupleClass {
  Int product;
  Int bsum;
  std::vector<int> tuple;
};

// Distinct weight products <= cap with, per product, the largest
// admissibility sum (S_B grows with B, so larger B dominates).
std::vector<TupleClass> tuple_classes(const WeightSchedule& sched, const Rat& cap) {
  std::map<Int, TupleClass> by_product;
  std::vector<int> stack;
  auto dfs = [&](auto&& self, int min_k, const Int& product, const Int& bsum) -> void {
    if (!stack.empty()) {
      auto it = by_product.find(product);
      if (it == by_product.end() || bsum > it->second.bsum ||
          (bsum == it->second.bsum && stack < it->second.tuple)) {
        by_product[product] = TupleClass{product, bsum, stack};
      }
    }
    for (int k = min_k;; ++k) {
      Int ak, bk;
      try {
        ak = sched.a(k);
        bk = sched.b(k);
      } catch (const ValidationError&) {
        break;  // past the end of a custom schedule
      }
      Int next = product * ak;
      if (Rat(next) > cap) break;
      stack.push_back(k);
      self(self, k, next, bsum + bk);
      stack.pop_back();
    }
  };
  dfs(dfs, 1, Int(1), Int(0));
  std::vector<TupleClass> out;
  out.reserve(by_product.size());
  for (auto& [w, tc] : by_product) out.push_back(tc);
  return out;
}

}  // namespace

WiwExhaustiveResult wiw_exhaustive_norm(const FinVec& x, const WeightSchedule& sched,
                                        const WiwExhaustiveCaps& caps) {
  auto entries = support_entries(x);
  std::size_t s = entries.size();
  if (s == 0) {
    return {NormValue::exactly(Rat(0)), WiwFunctional::leaf(1, 1), Rat(0), 0};
  }
  if (s > caps.support_cap || s > 16) {
    throw CapError("exhaustive norm: support size " + std::to_string(s) + " exceeds cap");
  }

  Rat l1 = x.abs_sum();
  Rat min_abs = entries.front().absval;
  for (const auto& e : entries) min_abs = std::min(min_abs, e.absval);

  Rat weight_cap = caps.weight_cap;
  bool weight_clamped = false;
  if (weight_cap == 0) {
    long e = (l1 > min_abs) ? floor_log2(l1 / min_abs) + 1 : 1;
    if (e > 48) {
      e = 48;
      weight_clamped = true;
    }
    weight_cap = Rat(int_pow2(static_cast<unsigned long>(e)));
  }
  int depth_cap = caps.depth_cap > 0 ? caps.depth_cap : static_cast<int>(s);

  auto tuples = tuple_classes(sched, weight_cap);

  // entries_by_mask[mask]: best value per distinct weight (and the leaf
  // entry for singletons).  Chunks of a composition are consecutive
  // runs of the mask's bits in position order.
  std::vector<std::vector<MaskEntry>> table(std::size_t(1) << s);
  std::map<std::pair<std::vector<Index>, Int>, bool> adm_memo;

  auto admissible = [&](const std::vector<Index>& mins, const Int& bsum) {
    auto key = std::make_pair(mins, bsum);
    auto it = adm_memo.find(key);
    if (it != adm_memo.end()) return it->second;
    bool r = schreier_member_level(mins, bsum);
    adm_memo.emplace(key, r);
    return r;
  };

  std::vector<unsigned> masks_by_popcount(std::size_t(1) << s);
  for (unsigned m = 1; m < (1u << s); ++m) masks_by_popcount[m] = m;
  std::sort(masks_by_popcount.begin(), masks_by_popcount.end(),
            [](unsigned a, unsigned b) {
              int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
              return pa != pb ? pa < pb : a < b;
            });

  for (unsigned mask : masks_by_popcount) {
    if (mask == 0) continue;
    auto& slot = table[mask];
    std::vector<int> bits;
    for (int i = 0; i < static_cast<int>(s); ++i) {
      if (mask & (1u << i)) bits.push_back(i);
    }
    int cnt = static_cast<int>(bits.size());
    if (cnt == 1) {
      const auto& e = entries[static_cast<std::size_t>(bits[0])];
      slot.push_back({std::nullopt, e.absval, 0, WiwFunctional::leaf(e.sign, e.pos)});
      continue;
    }
    // Compositions into r >= 2 consecutive chunks: cut points as a
    // bitmask over the cnt-1 gaps.
    for (unsigned cuts = 1; cuts < (1u << (cnt - 1)); ++cuts) {
      std::vector<std::pair<int, int>> chunks;  // [from, to] in bits[]
      int from = 0;
      for (int g = 0; g < cnt - 1; ++g) {
        if (cuts & (1u << g)) {
          chunks.emplace_back(from, g);
          from = g + 1;
        }
      }
      chunks.emplace_back(from, cnt - 1);
      std::vector<Index> mins;
      std::vector<Index> maxs;
      std::vector<unsigned> chunk_masks;
      for (auto [f, t] : chunks) {
        mins.push_back(entries[static_cast<std::size_t>(bits[f])].pos);
        maxs.push_back(entries[static_cast<std::size_t>(bits[t])].pos);
        unsigned cm = 0;
        for (int i = f; i <= t; ++i) cm |= (1u << bits[i]);
        chunk_masks.push_back(cm);
      }
      for (const auto& tc : tuples) {
        if (!admissible(mins, tc.bsum)) continue;
        // Per chunk: best compatible entry (leaf, or weight above the
        // previous chunk's max support), depth below the cap.
        Rat sum(0);
        int depth = 0;
        std::vector<const WiwFunctional*> kids;
        bool ok = true;
        for (std::size_t q = 0; q < chunk_masks.size(); ++q) {
          const MaskEntry* pick = nullptr;
          for (const auto& e : table[chunk_masks[q]]) {
            if (e.depth + 1 > depth_cap) continue;
            if (q > 0 && e.weight && *e.weight <= maxs[q - 1]) continue;
            if (!pick || e.value > pick->value) pick = &e;
          }
          if (!pick) {
            ok = false;
            break;
          }
          sum += pick->value;
          depth = std::max(depth, pick->depth + 1);
          kids.push_back(&pick->f);
        }
        if (!ok) continue;
        Rat value = sum / Rat(tc.product);
        // Insert or improve the entry for this weight.
        MaskEntry* found = nullptr;
        for (auto& e : slot) {
          if (e.weight && *e.weight == tc.product) {
            found = &e;
            break;
          }
        }
        if (found && found->value >= value) continue;
        std::vector<WiwFunctional> children;
        children.reserve(kids.size());
        for (const auto* k : kids) children.push_back(*k);
        WiwFunctional f = WiwFunctional::node(tc.tuple, std::move(children));
        if (found) {
          *found = {tc.product, value, depth, std::move(f)};
        } else {
          slot.push_back({tc.product, value, depth, std::move(f)});
        }
      }
    }
  }

  // Best over all subsets and entries.
  std::optional<MaskEntry> best;
  for (unsigned mask = 1; mask < (1u << s); ++mask) {
    for (const auto& e : table[mask]) {
      if (!best || e.value > best->value ||
          (e.value == best->value && e.f.encode() < best->f.encode())) {
        best = e;
      }
    }
  }

  bool exact = !weight_clamped && weight_cap >= l1 / min_abs && depth_cap >= static_cast<int>(s);
  NormValue value = NormValue::exactly(best->value);
  if (!exact) {
    Rat upper = best->value + l1 / (2 * weight_cap);
    if (depth_cap < static_cast<int>(s)) {
      upper += l1 / Rat(int_pow2(static_cast<unsigned long>(depth_cap)));
    }
    value = NormValue::between(best->value, std::min(upper, l1));
  }
  return {value, best->f, weight_cap, depth_cap};
}

// ---------------------------------------------------------------------------
// Constructions
// ---------------------------------------------------------------------------

WiwFunctional combine_dropping_first(const std::vector<FinVec>& blocks,
                                     const std::vector<WiwFunctional>& fs,
                                     const WeightSchedule& sched) {
  if (blocks.empty() || blocks.size() != fs.size()) {
    throw ValidationError("combine_dropping_first: need equally many blocks and functionals");
  }
  if (!is_block_sequence(blocks)) {
    throw ValidationError("combine_dropping_first: blocks must form a block sequence");
  }
  const std::vector<int>& tuple = fs.front().weight_indices();
  for (std::size_t l = 0; l < fs.size(); ++l) {
    const auto& f = fs[l];
    std::string at = "functional " + std::to_string(l);
    if (f.is_leaf()) throw ValidationError("combine_dropping_first: " + at + " is a leaf");
    if (f.weight_indices() != tuple) {
      throw ValidationError("combine_dropping_first: " + at + " has a different weight tuple");
    }
    if (f.children().size() < 2) {
      throw ValidationError("combine_dropping_first: " + at + " has fewer than two children");
    }
    if (auto v = find_violation(f, sched)) {
      throw ValidationError("combine_dropping_first: " + at + " invalid (" + v->rule + " at " +
                            v->where + ")");
    }
    if (f.min_support() < blocks[l].min_support() || f.max_support() > blocks[l].max_support()) {
      throw ValidationError("combine_dropping_first: " + at + " not supported inside its block");
    }
  }
  Index first_retained = fs.front().children()[1].min_support();
  if (static_cast<Index>(fs.size()) > first_retained) {
    throw ValidationError("combine_dropping_first: block count " + std::to_string(fs.size()) +
                          " exceeds min support " + std::to_string(first_retained) +
                          " of the first retained child");
  }
  std::vector<WiwFunctional> children;
  for (const auto& f : fs) {
    for (std::size_t q = 1; q < f.children().size(); ++q) children.push_back(f.children()[q]);
  }
  std::vector<int> extended = tuple;
  extended.push_back(1);
  WiwFunctional out = WiwFunctional::node(std::move(extended), std::move(children));
  if (auto v = find_violation(out, sched)) {
    throw ValidationError("combine_dropping_first: combined functional invalid (" + v->rule +
                          " at " + v->where + "): " + v->detail);
  }
  return out;
}

WiwFunctional leaf_family(const std::vector<Index>& indices, const std::vector<int>& signs,
                          int weight_index, const WeightSchedule& sched) {
  if (indices.empty()) throw ValidationError("leaf_family: empty index list");
  if (!signs.empty() && signs.size() != indices.size()) {
    throw ValidationError("leaf_family: sign list length mismatch");
  }
  std::vector<WiwFunctional> leaves;
  leaves.reserve(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    leaves.push_back(WiwFunctional::leaf(signs.empty() ? 1 : signs[i], indices[i]));
  }
  WiwFunctional out = WiwFunctional::node({weight_index}, std::move(leaves));
  if (auto v = find_violation(out, sched)) {
    throw ValidationError("leaf_family invalid (" + v->rule + "): " + v->detail);
  }
  return out;
}

}  // namespace banachlab
