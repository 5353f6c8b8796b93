#include <doctest.h>

#include "banachlab/haar.hpp"

using namespace banachlab;

TEST_CASE("bit reversal") {
  CHECK(bit_reverse(0, 1) == 0);
  CHECK(bit_reverse(1, 1) == 1);
  CHECK(bit_reverse(1, 2) == 2);
  CHECK(bit_reverse(3, 2) == 3);
  CHECK(bit_reverse(1, 3) == 4);
  CHECK(bit_reverse(6, 3) == 3);
}

TEST_CASE("canonical system basics") {
  auto sys = canonical_haar();
  // A^1_0 is the odds, A^1_1 the evens.
  for (Index i : {1, 3, 5, 7}) CHECK(sys->member(1, 0, i));
  for (Index i : {2, 4, 6, 8}) CHECK(sys->member(1, 1, i));
  CHECK(sys->kth_member(1, 1, 2) == 4);
  CHECK(sys->kth_member(2, 3, 4) == 16);
  CHECK(sys->kth_member(0, 0, 1) == 1);
  CHECK_THROWS_AS(sys->kth_member(1, 2, 1), ValidationError);  // bad cell
  CHECK_THROWS_AS(sys->kth_member(1, 0, 0), ValidationError);  // bad k
}

TEST_CASE("canonical system satisfies the partition and refinement laws") {
  auto sys = canonical_haar();
  for (int n = 0; n <= 8; ++n) {
    Index cells = Index{1} << n;
    for (Index i = 1; i <= (1 << 12); i += (n < 4 ? 1 : 13)) {
      int owners = 0;
      Index owner = -1;
      for (Index j = 0; j < cells; ++j) {
        if (sys->member(n, j, i)) {
          ++owners;
          owner = j;
        }
      }
      REQUIRE(owners == 1);
      if (n < 8) {
        bool left = sys->member(n + 1, 2 * owner, i);
        bool right = sys->member(n + 1, 2 * owner + 1, i);
        REQUIRE((left || right));
        REQUIRE(!(left && right));
      }
    }
  }
}

TEST_CASE("kth members are strictly increasing and match membership") {
  auto sys = canonical_haar();
  for (int n : {0, 2, 5}) {
    for (Index j : {Index{0}, (Index{1} << n) - 1}) {
      Index prev = 0;
      for (Index k = 1; k <= (1 << 10); k += 37) {
        Index m = sys->kth_member(n, j, k);
        REQUIRE((m > prev || k == 1));
        REQUIRE(sys->member(n, j, m));
        prev = m;
      }
    }
  }
}

TEST_CASE("sigma embedding") {
  auto sys = canonical_haar();
  CHECK(sigma(DyadicRational(), *sys) == 1);  // sigma(0): first member of N
  CHECK(sigma(DyadicRational::parse("1/2"), *sys) == 4);
  CHECK(sigma(DyadicRational::parse("3/4"), *sys) == 16);
  // sigma(3/4) lands in A^1_1 since 3/4 lies in [1/2, 1).
  CHECK(sys->member(1, 1, 16));
  // Reduced level n forces sigma(d) >= 2^n (the k-th member is >= k).
  for (std::int64_t k = 1; k <= (1 << 10); ++k) {
    DyadicRational d = dyadic_enumerate(k);
    REQUIRE(sigma(d, *sys) >= (Index{1} << d.level()));
  }
  // Deeper dyadics land inside the coarser cell containing them.
  for (std::int64_t k = 1; k <= 256; ++k) {
    DyadicRational d = dyadic_enumerate(k);
    for (int coarse = 0; coarse < d.level(); ++coarse) {
      Index cell = rat_floor(d.value() * Rat(int_pow2(static_cast<unsigned long>(coarse)))).get_si();
      REQUIRE(sys->member(coarse, cell, sigma(d, *sys)));
    }
  }
}

TEST_CASE("dyadic-location system") {
  auto sys = dyadic_location_haar();
  CHECK(sys->member(1, 1, 1));  // d_1 = 1/2 in [1/2, 1)
  CHECK(sys->member(1, 0, 2));  // d_2 = 1/4 in (0, 1/2)
  CHECK(sys->member(2, 3, 3));  // d_3 = 3/4 in [3/4, 1)
  CHECK(sys->kth_member(1, 0, 1) == 2);

  for (int n = 0; n <= 4; ++n) {
    Index cells = Index{1} << n;
    for (Index i = 1; i <= 64; ++i) {
      int owners = 0;
      for (Index j = 0; j < cells; ++j) {
        if (sys->member(n, j, i)) ++owners;
      }
      REQUIRE(owners == 1);
    }
  }

  // A non-injective enumeration is rejected on the validation prefix.
  CHECK_THROWS_AS(
      dyadic_location_haar([](Index) { return DyadicRational::parse("1/2"); }, "constant", 8),
      ValidationError);
}

TEST_CASE("residue systems") {
  // Canonical in table form.
  auto canon = residue_haar({{0}, {0, 1}, {0, 2, 1, 3}});
  CHECK(canon->member(2, 1, 3));  // residue 2: i-1 = 2 mod 4
  CHECK(canon->kth_member(2, 1, 2) == 7);
  // Swapped children of cell 0 at level 2: still a Haar system.
  auto swapped = residue_haar({{0}, {0, 1}, {2, 0, 1, 3}});
  CHECK(swapped->member(2, 0, 3));
  for (Index i = 1; i <= 32; ++i) {
    bool in_parent = canon->member(1, 0, i);
    bool split = swapped->member(2, 0, i) || swapped->member(2, 1, i);
    REQUIRE(in_parent == split);
  }
  // Validation failures.
  CHECK_THROWS_AS(residue_haar({{0}, {0, 0}}), ValidationError);          // not a permutation
  CHECK_THROWS_AS(residue_haar({{0}, {0, 1}, {1, 3, 0, 2}}), ValidationError);  // no refinement
  CHECK_THROWS_AS(residue_haar({{1}}), ValidationError);                  // level 0 must be {0}
  CHECK_THROWS_AS(residue_haar({{0}, {0, 1}})->member(5, 0, 1), ValidationError);  // no level 5
}

TEST_CASE("system registry") {
  CHECK(make_haar("canonical")->id() == "canonical");
  CHECK(make_haar("locations")->id() == "locations");
  CHECK_THROWS_AS(make_haar("mystery"), ValidationError);
}
