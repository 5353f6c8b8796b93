#include "banachlab/dyadic.hpp"

#include <bit>

namespace banachlab {

DyadicRational DyadicRational::make(std::int64_t num, int level) {
  if (num < 0 || level < 0) throw ValidationError("dyadic out of range");
  while (num != 0 && num % 2 == 0) {
    num /= 2;
    --level;
  }
  if (num == 0) level = 0;
  if (level < 0 || (level <= 62 && num >= (std::int64_t{1} << level))) {
    throw ValidationError("dyadic not in [0,1)");
  }
  DyadicRational d;
  d.numerator_ = num;
  d.level_ = level;
  return d;
}

DyadicRational DyadicRational::parse(std::string_view text) {
  Rat q = parse_rat(text);
  if (q < 0 || q >= 1) throw ValidationError("dyadic not in [0,1): '" + std::string(text) + "'");
  if (!is_power_of_two(q.get_den())) {
    throw ValidationError("denominator not a power of two: '" + std::string(text) + "'");
  }
  int level = static_cast<int>(mpz_sizeinbase(q.get_den_mpz_t(), 2)) - 1;
  if (level > 62) throw ValidationError("dyadic level too deep");
  return make(q.get_num().get_si(), level);
}

Rat DyadicRational::value() const {
  return make_rat(numerator_, int_pow2(static_cast<unsigned long>(level_)));
}

std::string DyadicRational::str() const {
  if (numerator_ == 0) return "0";
  return std::to_string(numerator_) + "/" + int_pow2(static_cast<unsigned long>(level_)).get_str();
}

std::strong_ordering DyadicRational::operator<=>(const DyadicRational& other) const {
  int c = cmp(value(), other.value());
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

DyadicRational dyadic_enumerate(std::int64_t k) {
  if (k < 1) throw ValidationError("dyadic_enumerate requires k >= 1");
  // Level n holds the 2^(n-1) odd numerators over 2^n; cumulative count
  // through level n is 2^n - 1.
  int n = std::bit_width(static_cast<std::uint64_t>(k));
  std::int64_t offset = k - (std::int64_t{1} << (n - 1));
  return DyadicRational::make(2 * offset + 1, n);
}

std::int64_t dyadic_index(const DyadicRational& d) {
  if (d.is_zero()) throw ValidationError("dyadic_index of 0");
  return (std::int64_t{1} << (d.level() - 1)) + (d.numerator() - 1) / 2;
}

std::vector<DyadicRational> dyadics_in_cell(int m, std::int64_t cell, int depth) {
  if (m < 0 || cell < 1 || cell > (std::int64_t{1} << m)) {
    throw ValidationError("bad dyadic cell");
  }
  std::vector<DyadicRational> out;
  for (int e = 1; e <= depth; ++e) {
    int level = m + e;
    if (level > 62) break;
    // odd numerators j with 2^e*(cell-1) < j < 2^e*cell
    std::int64_t lo = (cell - 1) << e;
    std::int64_t hi = cell << e;
    for (std::int64_t j = lo + 1; j < hi; j += 2) {
      out.push_back(DyadicRational::make(j, level));
    }
  }
  return out;
}

}  // namespace banachlab
