#include <doctest.h>

#include <algorithm>
#include <random>

#include "banachlab/l1lab.hpp"
#include "banachlab/records.hpp"
#include "support/brute.hpp"

using namespace banachlab;

namespace {

StepFunction random_step(std::mt19937_64& rng, int level) {
  std::vector<Rat> values;
  for (std::size_t c = 0; c < (std::size_t{1} << level); ++c) {
    values.push_back(rng() % 4 == 0 ? Rat(0) : brute::random_rational(rng, 3, 4));
  }
  return StepFunction(level, std::move(values));
}

}  // namespace

TEST_CASE("step function basics") {
  StepFunction one = StepFunction::constant(Rat(1));
  CHECK(one.l1_norm() == 1);
  StepFunction half(1, {Rat(2), Rat(0)});  // 2 on [0, 1/2)
  CHECK(half.l1_norm() == 1);
  CHECK(half.refined(3).l1_norm() == 1);
  CHECK(half.refined(4) == half);
  CHECK(StepFunction::parse("level 1 2 0") == half);
  CHECK(half.str() == "level 1 2 0");
  CHECK((one + half).values() == std::vector<Rat>{Rat(3), Rat(1)});
  CHECK((Rat(2) * one - one).l1_norm() == 1);
  CHECK_THROWS_AS(StepFunction(1, {Rat(1)}), ValidationError);
  CHECK_THROWS_AS(StepFunction::parse("grid 1 1 1"), ValidationError);
  CHECK_THROWS_AS(half.refined(0), ValidationError);
}

TEST_CASE("khintchine sign average versus square function") {
  SUBCASE("equality instance f1 = f2 = 1 matches 1/sqrt(2) within 1e-12") {
    StepFunction one = StepFunction::constant(Rat(1));
    KhintchineReport rep = khintchine_check({one, one});
    CHECK(rep.lhs == 1);
    // rhs encloses sqrt(2).
    CHECK(rep.rhs.lo * rep.rhs.lo <= 2);
    CHECK(rep.rhs.hi * rep.rhs.hi >= 2);
    CHECK(rep.bound_ok);
    // |lhs - rhs/sqrt(2)| <= 1e-12 via outward bounds.
    auto inv = nth_root_enclosure(make_rat(1, 2), 2, 80);
    Rat tol = make_rat(1, Int("1000000000000"));
    CHECK(rep.lhs + tol >= rep.rhs.hi * inv.hi);
    CHECK(rep.lhs - tol <= rep.rhs.lo * inv.lo);
  }
  SUBCASE("single function: both sides are the norm") {
    StepFunction f(2, {Rat(1), Rat(-2), Rat(0), make_rat(1, 2)});
    KhintchineReport rep = khintchine_check({f});
    CHECK(rep.lhs == f.l1_norm());
    CHECK(rep.rhs.lo == f.l1_norm());  // cellwise sqrt of squares is exact
    CHECK(rep.rhs.hi == f.l1_norm());
    CHECK(rep.bound_ok);
  }
  SUBCASE("disjointly supported unit functions") {
    StepFunction f1(1, {Rat(2), Rat(0)});
    StepFunction f2(1, {Rat(0), Rat(2)});
    KhintchineReport rep = khintchine_check({f1, f2});
    CHECK(rep.lhs == 2);
    CHECK(rep.rhs.lo == 2);
    CHECK(rep.bound_ok);
  }
  SUBCASE("random instances satisfy the certified bound") {
    std::mt19937_64 rng(808);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<StepFunction> fs;
      int n = 2 + static_cast<int>(rng() % 5);
      for (int i = 0; i < n; ++i) fs.push_back(random_step(rng, 1 + static_cast<int>(rng() % 4)));
      REQUIRE(khintchine_check(fs).bound_ok);
    }
  }
  std::vector<StepFunction> too_many(17, StepFunction::constant(Rat(1)));
  CHECK_THROWS_AS(khintchine_check(too_many), CapError);
}

TEST_CASE("theta lower-constant estimation") {
  SUBCASE("disjoint unit supports certify theta = 1") {
    StepFunction f1(1, {Rat(2), Rat(0)});
    StepFunction f2(1, {Rat(0), Rat(2)});
    ThetaReport rep = theta_lower_estimate({f1, f2});
    CHECK(rep.certified);
    CHECK(rep.value == 1);
  }
  SUBCASE("identical functions collapse to zero") {
    StepFunction one = StepFunction::constant(Rat(1));
    ThetaReport rep = theta_lower_estimate({one, one});
    CHECK(rep.value == 0);
    CHECK_FALSE(rep.certified);
  }
  SUBCASE("constant and sign function: 1/2, matching the dense grid") {
    StepFunction one = StepFunction::constant(Rat(1));
    StepFunction sign(1, {Rat(1), Rat(-1)});
    ThetaReport rep = theta_lower_estimate({one, sign}, 1024, 0);
    CHECK(rep.value == make_rat(1, 2));
    // Independent dense-grid minimum at resolution 2^-10.
    Rat best(10);
    for (long t = 0; t <= 1024; ++t) {
      Rat a = make_rat(t, 1024);
      for (int sgn : {1, -1}) {
        Rat b = Rat(sgn) * (1 - a);
        // ||a*1 + b*sign||_1 = (|a+b| + |a-b|)/2 = max(|a|, |b|).
        Rat v = std::max(rat_abs(a), rat_abs(b));
        best = std::min(best, v);
      }
    }
    CHECK(rep.value == best);
  }
  SUBCASE("estimate upper-bounds the true constant on witnesses") {
    std::mt19937_64 rng(909);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<StepFunction> fs = {random_step(rng, 2), random_step(rng, 2),
                                      random_step(rng, 2)};
      ThetaReport rep = theta_lower_estimate(fs, 16, 1);
      // The witness must achieve the reported value exactly.
      StepFunction combo = rep.witness[0] * fs[0];
      for (std::size_t i = 1; i < fs.size(); ++i) combo += rep.witness[i] * fs[i];
      Rat mass(0);
      for (const Rat& a : rep.witness) mass += rat_abs(a);
      REQUIRE(mass == 1);
      REQUIRE(combo.l1_norm() == rep.value);
    }
  }
}

TEST_CASE("dor disjointification") {
  SUBCASE("disjoint unit supports succeed at theta = 1") {
    StepFunction f1(2, {Rat(4), Rat(0), Rat(0), Rat(0)});
    StepFunction f2(2, {Rat(0), Rat(2), Rat(2), Rat(0)});
    DorReport rep = dor_disjointify({f1, f2}, Rat(1), DorMode::Exact);
    CHECK(rep.success);
    CHECK(rep.min_mass == 1);
    CHECK(rep.optimal);
    auto masses = assignment_masses({f1, f2}, rep.assignment);
    CHECK(masses[0] == 1);
    CHECK(masses[1] == 1);
  }
  SUBCASE("two copies of the constant: optimal min mass is 1/2") {
    StepFunction one = StepFunction::constant(Rat(1)).refined(2);
    DorReport fail = dor_disjointify({one, one}, make_rat(3, 4), DorMode::Exact);
    CHECK_FALSE(fail.success);  // needs (3/4)^2 = 9/16 > 1/2
    CHECK(fail.min_mass == make_rat(1, 2));
    DorReport ok = dor_disjointify({one, one}, make_rat(7, 10), DorMode::Exact);
    CHECK(ok.success);  // needs 49/100 <= 1/2
  }
  SUBCASE("exact beats or ties greedy; exact matches full enumeration") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 12; ++trial) {
      std::vector<StepFunction> fs = {random_step(rng, 3), random_step(rng, 3),
                                      random_step(rng, 3)};
      DorReport greedy = dor_disjointify(fs, make_rat(1, 2), DorMode::Greedy);
      DorReport exact = dor_disjointify(fs, make_rat(1, 2), DorMode::Exact);
      REQUIRE(exact.min_mass >= greedy.min_mass);
      // Full enumeration over all 3^8 assignments.
      Rat best(0);
      std::vector<int> owner(8, 0);
      while (true) {
        CellAssignment a{3, owner};
        auto masses = assignment_masses(fs, a);
        best = std::max(best, *std::min_element(masses.begin(), masses.end()));
        int c = 0;
        while (c < 8 && owner[static_cast<std::size_t>(c)] == 2) {
          owner[static_cast<std::size_t>(c)] = 0;
          ++c;
        }
        if (c == 8) break;
        ++owner[static_cast<std::size_t>(c)];
      }
      REQUIRE(exact.min_mass == best);
    }
  }
  SUBCASE("validation") {
    StepFunction one = StepFunction::constant(Rat(1));
    CHECK_THROWS_AS(dor_disjointify({one}, Rat(0), DorMode::Exact), ValidationError);
    CHECK_THROWS_AS(dor_disjointify({one}, Rat(2), DorMode::Exact), ValidationError);
    CHECK_THROWS_AS(dor_disjointify({one.refined(10)}, Rat(1), DorMode::Exact, 64), CapError);
  }
}

TEST_CASE("multi-function text parsing") {
  auto fs = parse_step_functions("level 0 1\nlevel 1 1 -1\n");
  REQUIRE(fs.size() == 2);
  CHECK(fs[0] == StepFunction::constant(Rat(1)));
  CHECK(fs[1].values() == std::vector<Rat>{Rat(1), Rat(-1)});
  CHECK_THROWS_AS(parse_step_functions("nonsense"), ValidationError);
}
