#include <doctest.h>

#include <vector>

#include "banachlab/schreier.hpp"
#include "support/brute.hpp"

using namespace banachlab;

namespace {

std::vector<Index> mask_to_set(std::size_t mask, int width) {
  std::vector<Index> out;
  for (int b = 0; b < width; ++b) {
    if (mask & (std::size_t{1} << b)) out.push_back(b + 1);
  }
  return out;
}

}  // namespace

TEST_CASE("membership examples") {
  CHECK(schreier_member({2, 3}, 1));
  CHECK_FALSE(schreier_member({1, 2}, 1));
  CHECK(schreier_member({3, 4, 5, 6}, 2));
  CHECK_FALSE(schreier_member({3, 4, 5, 6}, 1));
  CHECK(schreier_member({}, 0));
  CHECK(schreier_member({7}, 0));
  CHECK_FALSE(schreier_member({7, 9}, 0));
  CHECK_THROWS_AS(schreier_member({3, 2}, 1), ValidationError);
  CHECK_THROWS_AS(schreier_member({0, 2}, 1), ValidationError);
  CHECK_THROWS_AS(schreier_member({2, 3}, -1), ValidationError);
}

TEST_CASE("greedy membership agrees with exhaustive decomposition on [1,12]") {
  const int width = 12, max_n = 3;
  auto table = brute::schreier_table(max_n, width);
  for (int n = 0; n <= max_n; ++n) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << width); ++mask) {
      auto F = mask_to_set(mask, width);
      REQUIRE(schreier_member(F, n) == table[static_cast<std::size_t>(n)][mask]);
    }
  }
}

TEST_CASE("hereditary, increasing, spreading on [1,12]") {
  const int width = 12, max_n = 3;
  auto table = brute::schreier_table(max_n, width);
  for (int n = 0; n <= max_n; ++n) {
    const auto& members = table[static_cast<std::size_t>(n)];
    for (std::size_t mask = 0; mask < members.size(); ++mask) {
      if (!members[mask]) continue;
      // Hereditary: remove one element at a time.
      for (int b = 0; b < width; ++b) {
        if (mask & (std::size_t{1} << b)) {
          REQUIRE(members[mask & ~(std::size_t{1} << b)]);
        }
      }
      // Increasing in n.
      if (n < max_n) REQUIRE(table[static_cast<std::size_t>(n) + 1][mask]);
      // Spreading: push one element right by one slot where possible.
      auto F = mask_to_set(mask, width);
      for (std::size_t i = 0; i < F.size(); ++i) {
        Index next = F[i] + 1;
        if (next > width) continue;
        if (i + 1 < F.size() && next >= F[i + 1]) continue;
        auto G = F;
        G[i] = next;
        std::size_t gmask = 0;
        for (Index e : G) gmask |= (std::size_t{1} << (e - 1));
        REQUIRE(members[gmask]);
      }
    }
  }
}

TEST_CASE("large-level membership shortcuts") {
  auto table = brute::schreier_table(3, 10);
  for (int n = 0; n <= 3; ++n) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << 10); mask += 7) {
      auto F = mask_to_set(mask, 10);
      REQUIRE(schreier_member_level(F, Int(n)) == table[static_cast<std::size_t>(n)][mask]);
    }
  }
  // Any set with min >= 2 is in S_{|F|-1}, hence in every huge level.
  CHECK(schreier_member_level({2, 3, 4, 5, 6, 7, 8, 9}, Int("123456789123456789")));
  // Sets with min 1 never grow past singletons.
  CHECK_FALSE(schreier_member_level({1, 2}, Int("123456789123456789")));
  CHECK(schreier_member_level({1}, Int(0)));
}

TEST_CASE("admissibility of block sequences") {
  std::vector<FinVec> ok = {FinVec::unit(2), FinVec::unit(3)};
  CHECK(is_admissible(ok, 1));
  std::vector<FinVec> bad = {FinVec::unit(1), FinVec::unit(2)};
  CHECK_FALSE(is_admissible(bad, 1));
  std::vector<FinVec> four = {FinVec::unit(4), FinVec::unit(5), FinVec::unit(6), FinVec::unit(7)};
  CHECK(is_admissible(four, 3));
  std::vector<FinVec> overlap = {FinVec::unit(2) + FinVec::unit(3), FinVec::unit(3)};
  CHECK_THROWS_AS(is_admissible(overlap, 1), NotBlockError);
}
