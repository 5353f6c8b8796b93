#pragma once

// Exact rational arithmetic (GMP) plus the few certified real-number
// enclosures the library needs: k-th roots and natural logarithms with
// outward-rounded rational bounds.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include "banachlab/errors.hpp"

namespace banachlab {

using Int = mpz_class;
using Rat = mpq_class;

/// Canonicalized rational num/den. Throws on den == 0.
Rat make_rat(Int num, Int den);

/// Parses "p/q" or "p" (optionally signed). Throws ValidationError.
Rat parse_rat(std::string_view text);

/// Canonical text form: "p/q" or "p" for integers.
std::string rat_str(const Rat& q);

Rat rat_abs(const Rat& q);
Int rat_floor(const Rat& q);
Int rat_ceil(const Rat& q);
Rat rat_pow(const Rat& base, unsigned long exp);
Int int_pow2(unsigned long e);

bool is_power_of_two(const Int& n);  // n >= 1 and n == 2^k
// Largest e with 2^e <= q (q > 0); may be negative.
long floor_log2(const Rat& q);

/// Closed rational interval [lo, hi]; lo == hi encodes an exact value.
struct RatInterval {
  Rat lo;
  Rat hi;
  bool exact() const { return lo == hi; }
  Rat width() const { return hi - lo; }
};

/// Encloses x^(1/p) for x >= 0, p >= 1.  Width at most 2^-scale_bits
/// unless the root is rational, in which case the result is exact.
RatInterval nth_root_enclosure(const Rat& x, unsigned long p, int scale_bits);

/// Encloses ln(y) for y > 0.  Argument is reduced by powers of two and
/// the remainder handled with the atanh series; `terms` series terms
/// (default is plenty for ~1e-18 widths).
RatInterval ln_enclosure(const Rat& y, int terms = 24);

}  // namespace banachlab
