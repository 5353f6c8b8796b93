#include <doctest.h>

#include <random>

#include "banachlab/wiw.hpp"
#include "support/brute.hpp"

using namespace banachlab;

namespace {

// Test-only generator: every functional with support inside `pts`,
// tuples drawn from {(1), (2), (1,1)} and structural depth <= depth.
// Children sequences are built by chaining pool members with strictly
// increasing support ranges; invalid trees are filtered afterwards, so
// this enumerates the raw shape space independently of the search.
std::vector<WiwFunctional> gen_pool(const std::vector<Index>& pts, int depth) {
  std::vector<WiwFunctional> pool;
  for (Index p : pts) {
    pool.push_back(WiwFunctional::leaf(1, p));
    pool.push_back(WiwFunctional::leaf(-1, p));
  }
  const std::vector<std::vector<int>> tuples = {{1}, {2}, {1, 1}};
  for (int d = 1; d <= depth; ++d) {
    std::vector<WiwFunctional> lower = pool;
    // Chains of pool members with increasing supports.
    std::vector<std::vector<WiwFunctional>> chains;
    std::vector<WiwFunctional> current;
    auto extend = [&](auto&& self, Index min_next) -> void {
      if (!current.empty()) chains.push_back(current);
      if (current.size() >= pts.size()) return;
      for (const auto& f : lower) {
        if (f.min_support() < min_next) continue;
        current.push_back(f);
        self(self, f.max_support() + 1);
        current.pop_back();
      }
    };
    extend(extend, 1);
    for (const auto& chain : chains) {
      for (const auto& t : tuples) {
        pool.push_back(WiwFunctional::node(t, chain));
      }
    }
  }
  return pool;
}

Rat brute_sup(const std::vector<Index>& pts, const FinVec& x, const WeightSchedule& sched,
              int depth) {
  Rat best(0);
  for (const auto& f : gen_pool(pts, depth)) {
    if (find_violation(f, sched)) continue;
    best = std::max(best, eval_functional_unchecked(f, x, sched));
  }
  return best;
}

}  // namespace

TEST_CASE("standard weight schedule") {
  WeightSchedule sched = WeightSchedule::standard();
  CHECK(sched.a(1) == 2);
  CHECK(sched.a(2) == 4);
  CHECK(sched.a(5) == 32);
  // b_{k+1} = b_k * ceil(ln(a_{k+1}^2)) + 1 from b_1 = 1:
  // ceil(ln 16) = 3, ceil(ln 64) = 5, ceil(ln 256) = 6.
  CHECK(sched.b(1) == 1);
  CHECK(sched.b(2) == 4);
  CHECK(sched.b(3) == 21);
  CHECK(sched.b(4) == 127);
  CHECK(sched.growth_condition_holds(6));
}

TEST_CASE("custom weight schedules are validated") {
  auto ok = WeightSchedule::custom({2, 5, 11}, {1, 3, 9});
  CHECK(ok.a(3) == 11);
  CHECK(ok.b(2) == 3);
  CHECK_THROWS_AS(ok.a(4), ValidationError);
  CHECK_THROWS_AS(WeightSchedule::custom({3, 5}, {1, 2}), ValidationError);  // a_1 != 2
  CHECK_THROWS_AS(WeightSchedule::custom({2, 4}, {2, 3}), ValidationError);  // b_1 != 1
  CHECK_THROWS_AS(WeightSchedule::custom({2, 2}, {1, 2}), ValidationError);  // not increasing
  // b growing too slowly for the growth condition: b_2 = 2 < 1*ln(16) = 2.77.
  auto slow = WeightSchedule::custom({2, 4}, {1, 2});
  CHECK_FALSE(slow.growth_condition_holds(2));
}

TEST_CASE("functional encoding round trip") {
  WiwFunctional f = WiwFunctional::node(
      {1}, {WiwFunctional::leaf(1, 2), WiwFunctional::leaf(-1, 3)});
  CHECK(f.encode() == "(w 1 (leaf + 2) (leaf - 3))");
  CHECK(WiwFunctional::decode(f.encode()) == f);
  WiwFunctional nested = WiwFunctional::node(
      {1, 2}, {WiwFunctional::leaf(1, 4), WiwFunctional::node({3}, {WiwFunctional::leaf(1, 9)})});
  CHECK(WiwFunctional::decode(nested.encode()) == nested);
  CHECK(nested.min_support() == 4);
  CHECK(nested.max_support() == 9);
  CHECK_THROWS_AS(WiwFunctional::decode("(w 1"), ValidationError);
  CHECK_THROWS_AS(WiwFunctional::decode("(leaf * 2)"), ValidationError);
  CHECK_THROWS_AS(WiwFunctional::decode("(w 1 (leaf + 2)) junk"), ValidationError);
}

TEST_CASE("functional weight") {
  WeightSchedule sched = WeightSchedule::standard();
  CHECK(!WiwFunctional::leaf(1, 3).weight(sched).has_value());  // infinite
  WiwFunctional f = WiwFunctional::node(
      {1, 2}, {WiwFunctional::leaf(1, 2), WiwFunctional::leaf(1, 3)});
  CHECK(*f.weight(sched) == 8);
}

TEST_CASE("validation rules") {
  WeightSchedule sched = WeightSchedule::standard();
  SUBCASE("valid one-level family") {
    WiwFunctional f = WiwFunctional::node(
        {1}, {WiwFunctional::leaf(1, 2), WiwFunctional::leaf(1, 3)});
    CHECK(validate_functional(f, sched));
  }
  SUBCASE("admissibility violation") {
    WiwFunctional f = WiwFunctional::node(
        {1}, {WiwFunctional::leaf(1, 1), WiwFunctional::leaf(1, 2)});
    auto v = find_violation(f, sched);
    REQUIRE(v.has_value());
    CHECK(v->rule == "admissibility");
  }
  SUBCASE("very fast growing violation") {
    WiwFunctional g = WiwFunctional::node(
        {1}, {WiwFunctional::leaf(1, 4), WiwFunctional::leaf(1, 5)});
    WiwFunctional f = WiwFunctional::node({1}, {WiwFunctional::leaf(1, 2), g});
    auto v = find_violation(f, sched);
    REQUIRE(v.has_value());
    CHECK(v->rule == "very-fast-growing");  // w(g) = 2 is not > max supp e_2* = 2
  }
  SUBCASE("successiveness violation") {
    WiwFunctional f = WiwFunctional::node(
        {1}, {WiwFunctional::leaf(1, 3), WiwFunctional::leaf(1, 2)});
    auto v = find_violation(f, sched);
    REQUIRE(v.has_value());
    CHECK(v->rule == "successive");
  }
  SUBCASE("deeper weights fix the growth rule") {
    WiwFunctional g = WiwFunctional::node(
        {2}, {WiwFunctional::leaf(1, 4), WiwFunctional::leaf(1, 5)});
    WiwFunctional f = WiwFunctional::node({1}, {WiwFunctional::leaf(1, 2), g});
    CHECK(validate_functional(f, sched));  // w(g) = 4 > 2
  }
}

TEST_CASE("evaluation") {
  WeightSchedule sched = WeightSchedule::standard();
  FinVec x23 = FinVec::unit(2) + FinVec::unit(3);
  WiwFunctional f = WiwFunctional::node(
      {1}, {WiwFunctional::leaf(1, 2), WiwFunctional::leaf(1, 3)});
  CHECK(eval_functional(f, x23, sched) == 1);

  CHECK(eval_functional(WiwFunctional::leaf(1, 5), FinVec::unit(2), sched) == 0);

  WiwFunctional g = WiwFunctional::node(
      {2}, {WiwFunctional::leaf(1, 4), WiwFunctional::leaf(1, 5)});
  WiwFunctional h = WiwFunctional::node({1}, {WiwFunctional::leaf(1, 2), g});
  FinVec x = FinVec::unit(2) + FinVec::unit(4) + FinVec::unit(5);
  CHECK(eval_functional(h, x, sched) == make_rat(3, 4));

  WiwFunctional bad = WiwFunctional::node(
      {1}, {WiwFunctional::leaf(1, 1), WiwFunctional::leaf(1, 2)});
  CHECK_THROWS_AS(eval_functional(bad, x, sched), ValidationError);
}

TEST_CASE("pruning bound |f(x)| <= l1(x)/w(f) for weighted functionals") {
  WeightSchedule sched = WeightSchedule::standard();
  std::mt19937_64 rng(314);
  for (int trial = 0; trial < 40; ++trial) {
    FinVec x = brute::random_vector(rng, 5, 10);
    auto cert = wiw_lower_certificate(x, sched);
    if (cert.witness.is_leaf()) continue;
    Rat w(*cert.witness.weight(sched));
    REQUIRE(rat_abs(eval_functional(cert.witness, x, sched)) <= x.abs_sum() / w);
  }
  // And on a squeezed handcrafted instance.
  FinVec x = FinVec::parse("3:-3/2 4:5 7:1/3");
  WiwFunctional f = WiwFunctional::node(
      {1}, {WiwFunctional::leaf(-1, 3), WiwFunctional::leaf(1, 4), WiwFunctional::leaf(1, 7)});
  CHECK(rat_abs(eval_functional(f, x, sched)) <= x.abs_sum() / 2);
}

TEST_CASE("lower-bound certificates") {
  WeightSchedule sched = WeightSchedule::standard();
  SUBCASE("single basis vector") {
    auto cert = wiw_lower_certificate(FinVec::unit(9), sched);
    CHECK(cert.value == 1);
    CHECK(cert.witness == WiwFunctional::leaf(1, 9));
    CHECK(certificate_valid(cert, sched));
  }
  SUBCASE("two units resolve to the coordinate value") {
    auto cert = wiw_lower_certificate(FinVec::unit(2) + FinVec::unit(3), sched);
    CHECK(cert.value >= make_rat(1, 2));
    CHECK(certificate_valid(cert, sched));
  }
  SUBCASE("large admissible families certify half the mass") {
    for (int n : {4, 5, 6}) {
      FinVec x;
      Index base = Index{1} << n;
      for (Index i = base; i < 2 * base; ++i) x += FinVec::unit(i);
      auto cert = wiw_lower_certificate(x, sched);
      REQUIRE(cert.value >= Rat(base) / 2);
      REQUIRE(certificate_valid(cert, sched));
    }
  }
  SUBCASE("budget growth never shrinks the value") {
    std::mt19937_64 rng(77);
    std::vector<WiwSearchBudget> budgets = {
        {1, 1, 2}, {2, 1, 4}, {2, 2, 4}, {3, 2, 8}, {4, 2, 8}};
    for (int trial = 0; trial < 15; ++trial) {
      FinVec x = brute::random_vector(rng, 7, 40);
      Rat last(-1);
      for (const auto& b : budgets) {
        Rat v = wiw_lower_certificate(x, sched, b).value;
        REQUIRE(v >= last);
        last = v;
      }
    }
  }
}

TEST_CASE("exhaustive norm") {
  WeightSchedule sched = WeightSchedule::standard();
  SUBCASE("single point") {
    auto r = wiw_exhaustive_norm(FinVec::unit(3), sched);
    CHECK(r.value.exact);
    CHECK(r.value.lower == 1);
  }
  SUBCASE("two units: the leaf wins") {
    auto r = wiw_exhaustive_norm(FinVec::unit(2) + FinVec::unit(3), sched);
    CHECK(r.value.exact);
    CHECK(r.value.lower == 1);
    CHECK(r.best == WiwFunctional::leaf(1, 2));
  }
  SUBCASE("agrees with independent enumeration") {
    std::mt19937_64 rng(2718);
    for (int trial = 0; trial < 12; ++trial) {
      std::size_t width = trial < 10 ? 3 : 4;
      FinVec x;
      std::vector<Index> pts;
      while (pts.size() < width) {
        Index p = 2 + static_cast<Index>(rng() % 6);
        bool fresh = true;
        for (Index q : pts) fresh = fresh && q != p;
        if (fresh) pts.push_back(p);
      }
      std::sort(pts.begin(), pts.end());
      for (Index p : pts) x.set(p, brute::random_rational(rng, 3, 2));
      WiwExhaustiveCaps caps;
      caps.weight_cap = Rat(4);
      caps.depth_cap = 2;
      auto r = wiw_exhaustive_norm(x, sched, caps);
      Rat expected = brute_sup(pts, x, sched, 2);
      REQUIRE(r.value.lower == expected);
      // Supports outside supp(x) never help (restriction assumption).
      std::vector<Index> wider = pts;
      wider.push_back(pts.back() + 2);
      REQUIRE(brute_sup(wider, x, sched, 2) == expected);
    }
  }
  SUBCASE("certificate and caps") {
    FinVec x = FinVec::parse("2:1 3:1/2 5:1/4");
    auto r = wiw_exhaustive_norm(x, sched);
    CHECK(r.value.exact);
    CHECK(eval_functional(r.best, x, sched) == r.value.lower);
    auto cert = wiw_lower_certificate(x, sched);
    CHECK(cert.value <= r.value.upper);

    FinVec big;
    for (Index i = 1; i <= 13; ++i) big += FinVec::unit(i);
    WiwExhaustiveCaps caps;
    caps.support_cap = 8;
    CHECK_THROWS_AS(wiw_exhaustive_norm(big, sched, caps), CapError);
  }
  SUBCASE("tight caps flag an inexact enclosure") {
    FinVec x = FinVec::parse("2:1 3:1 5:1");
    WiwExhaustiveCaps caps;
    caps.weight_cap = Rat(2);
    caps.depth_cap = 1;
    auto r = wiw_exhaustive_norm(x, sched, caps);
    CHECK_FALSE(r.value.exact);
    CHECK(r.value.lower <= r.value.upper);
    auto full = wiw_exhaustive_norm(x, sched);
    CHECK(full.value.exact);
    CHECK(r.value.lower <= full.value.lower);
    CHECK(full.value.lower <= r.value.upper);
  }
}

TEST_CASE("lower bound vs exhaustive on random vectors") {
  WeightSchedule sched = WeightSchedule::standard();
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 50; ++trial) {
    FinVec x = brute::random_vector(rng, 5, 12);
    auto cert = wiw_lower_certificate(x, sched);
    auto ex = wiw_exhaustive_norm(x, sched);
    REQUIRE(cert.value <= ex.value.upper);
    REQUIRE(x.abs_max() <= ex.value.lower);         // leaves are in the norming set
    REQUIRE(ex.value.upper <= x.abs_sum());         // coefficients stay below 1
  }
}

TEST_CASE("combining functionals by dropping first children") {
  WeightSchedule sched = WeightSchedule::standard();
  SUBCASE("two singleton-leaf blocks") {
    // Blocks around {64..67} and {70..73}; each functional has weight
    // a_2 = 4 and four leaf children.
    std::vector<FinVec> blocks;
    std::vector<WiwFunctional> fs;
    for (Index start : {Index{64}, Index{70}}) {
      FinVec block;
      std::vector<WiwFunctional> leaves;
      for (Index i = start; i < start + 4; ++i) {
        block += FinVec::unit(i);
        leaves.push_back(WiwFunctional::leaf(1, i));
      }
      blocks.push_back(block);
      fs.push_back(WiwFunctional::node({2}, leaves));
    }
    WiwFunctional combined = combine_dropping_first(blocks, fs, sched);
    CHECK(validate_functional(combined, sched));
    CHECK(combined.weight_indices() == std::vector<int>{2, 1});
    CHECK(combined.children().size() == 6);
    // Evaluation identity: F(sum x_l) = (1/a_1) sum_l (f_l(x_l) - f^l_1(x_l)/w).
    FinVec total = blocks[0] + blocks[1];
    Rat lhs = eval_functional(combined, total, sched);
    Rat rhs(0);
    for (std::size_t l = 0; l < fs.size(); ++l) {
      Rat fl = eval_functional(fs[l], blocks[l], sched);
      Rat first = eval_functional_unchecked(fs[l].children()[0], blocks[l], sched);
      rhs += fl - first / 4;
    }
    CHECK(lhs == rhs / 2);
  }
  SUBCASE("node children survive the combination") {
    // Per-block functionals with a leaf head and a weighted tail; the
    // retained children are nodes, so the combined family exercises the
    // cross-block growth comparisons.
    WiwFunctional g1 = WiwFunctional::node(
        {3}, {WiwFunctional::leaf(1, 5), WiwFunctional::leaf(1, 6)});
    WiwFunctional f1 = WiwFunctional::node({2}, {WiwFunctional::leaf(1, 4), g1});
    WiwFunctional g2 = WiwFunctional::node(
        {4}, {WiwFunctional::leaf(1, 11), WiwFunctional::leaf(1, 12)});
    WiwFunctional f2 = WiwFunctional::node({2}, {WiwFunctional::leaf(1, 10), g2});
    REQUIRE(validate_functional(f1, sched));
    REQUIRE(validate_functional(f2, sched));
    FinVec b1 = FinVec::unit(4) + FinVec::unit(5) + FinVec::unit(6);
    FinVec b2 = FinVec::unit(10) + FinVec::unit(11) + FinVec::unit(12);
    WiwFunctional combined = combine_dropping_first({b1, b2}, {f1, f2}, sched);
    CHECK(validate_functional(combined, sched));
    CHECK(combined.children().size() == 2);
    CHECK(eval_functional(combined, b1 + b2, sched) == make_rat(3, 64));
  }
  SUBCASE("supports must stay inside their blocks") {
    std::vector<FinVec> blocks = {FinVec::unit(8) + FinVec::unit(9),
                                  FinVec::unit(12) + FinVec::unit(13)};
    std::vector<WiwFunctional> fs = {
        WiwFunctional::node({1}, {WiwFunctional::leaf(1, 8), WiwFunctional::leaf(1, 10)}),
        WiwFunctional::node({1}, {WiwFunctional::leaf(1, 12), WiwFunctional::leaf(1, 13)})};
    CHECK_THROWS_WITH_AS(combine_dropping_first(blocks, fs, sched),
                         "combine_dropping_first: functional 0 not supported inside its block",
                         ValidationError);
  }
  SUBCASE("mismatched tuples are rejected") {
    std::vector<FinVec> blocks = {FinVec::unit(8) + FinVec::unit(9),
                                  FinVec::unit(12) + FinVec::unit(13)};
    std::vector<WiwFunctional> fs = {
        WiwFunctional::node({1}, {WiwFunctional::leaf(1, 8), WiwFunctional::leaf(1, 9)}),
        WiwFunctional::node({2}, {WiwFunctional::leaf(1, 12), WiwFunctional::leaf(1, 13)})};
    CHECK_THROWS_AS(combine_dropping_first(blocks, fs, sched), ValidationError);
  }
  SUBCASE("too many blocks for the first retained child") {
    // First retained child sits at index 2, but there are 3 blocks.
    std::vector<FinVec> blocks;
    std::vector<WiwFunctional> fs;
    Index starts[] = {1, 4, 7};
    for (Index start : starts) {
      blocks.push_back(FinVec::unit(start) + FinVec::unit(start + 1));
      fs.push_back(WiwFunctional::node(
          {1}, {WiwFunctional::leaf(1, start), WiwFunctional::leaf(1, start + 1)}));
    }
    CHECK_THROWS_AS(combine_dropping_first(blocks, fs, sched), ValidationError);
  }
}

TEST_CASE("leaf families") {
  WeightSchedule sched = WeightSchedule::standard();
  WiwFunctional f = leaf_family({8, 9, 10}, {}, 1, sched);
  CHECK(validate_functional(f, sched));
  CHECK(eval_functional(f, FinVec::unit(8) + FinVec::unit(9), sched) == 1);
  CHECK_THROWS_AS(leaf_family({1, 2}, {}, 1, sched), ValidationError);  // {1,2} not admissible
  CHECK_THROWS_AS(leaf_family({}, {}, 1, sched), ValidationError);
}
