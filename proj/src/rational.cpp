#include "banachlab/rational.hpp"

#include <cctype>

namespace banachlab {

Rat make_rat(Int num, Int den) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  Rat q(std::move(num), std::move(den));
  q.canonicalize();
  return q;
}

Rat parse_rat(std::string_view text) {
  if (text.empty()) throw ValidationError("empty rational literal");
  std::string s(text);
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-' || c == '+')) {
      throw ValidationError("bad rational literal: '" + s + "'");
    }
  }
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rat(Int(s));
    }
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    return make_rat(std::move(num), std::move(den));
  } catch (const std::invalid_argument&) {
    throw ValidationError("bad rational literal: '" + s + "'");
  }
}

std::string rat_str(const Rat& q) { return q.get_str(); }

Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

Int rat_floor(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Int rat_ceil(const Rat& q) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rat rat_pow(const Rat& base, unsigned long exp) {
  Rat r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), exp);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), exp);
  return r;  // canonical since base is
}

Int int_pow2(unsigned long e) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

bool is_power_of_two(const Int& n) {
  if (n < 1) return false;
  return mpz_popcount(n.get_mpz_t()) == 1;
}

long floor_log2(const Rat& q) {
  if (q <= 0) throw ValidationError("floor_log2 of non-positive value");
  auto pow2 = [](long k) {
    if (k >= 0) return Rat(int_pow2(static_cast<unsigned long>(k)));
    return make_rat(1, int_pow2(static_cast<unsigned long>(-k)));
  };
  long bn = static_cast<long>(mpz_sizeinbase(q.get_num_mpz_t(), 2));
  long bd = static_cast<long>(mpz_sizeinbase(q.get_den_mpz_t(), 2));
  long e = bn - bd;  // within one of the answer
  while (pow2(e) > q) --e;
  while (pow2(e + 1) <= q) ++e;
  return e;
}

RatInterval nth_root_enclosure(const Rat& x, unsigned long p, int scale_bits) {
  if (x < 0) throw ValidationError("nth_root_enclosure of negative value");
  if (p == 0) throw ValidationError("0th root");
  if (x == 0) return {Rat(0), Rat(0)};
  if (p == 1) return {x, x};

  // Exact case: both numerator and denominator are perfect p-th powers.
  Int rn, rd;
  int en = mpz_root(rn.get_mpz_t(), x.get_num_mpz_t(), p);
  int ed = mpz_root(rd.get_mpz_t(), x.get_den_mpz_t(), p);
  if (en != 0 && ed != 0) {
    Rat r = make_rat(rn, rd);
    return {r, r};
  }

  // floor((num * S^p / den)^(1/p)) / S with S = 2^scale_bits gives an
  // outward enclosure of width 2^-scale_bits.
  Int scale = int_pow2(static_cast<unsigned long>(scale_bits));
  Int scaled_num;
  mpz_pow_ui(scaled_num.get_mpz_t(), scale.get_mpz_t(), p);
  scaled_num *= x.get_num();
  Int n;
  mpz_fdiv_q(n.get_mpz_t(), scaled_num.get_mpz_t(), x.get_den_mpz_t());
  Int r;
  mpz_root(r.get_mpz_t(), n.get_mpz_t(), p);
  return {make_rat(r, scale), make_rat(r + 1, scale)};
}

namespace {

// ln 2 to 18 decimal places, outward-rounded.
RatInterval ln2_bounds() {
  Int den("1000000000000000000");
  return {make_rat(Int("693147180559945309"), den),
          make_rat(Int("693147180559945310"), den)};
}

// ln(m) for m in [1, 2) via 2*atanh((m-1)/(m+1)).
RatInterval ln_reduced(const Rat& m, int terms) {
  Rat z = (m - 1) / (m + 1);  // in [0, 1/3]
  Rat z2 = z * z;
  Rat sum(0);
  Rat power = z;
  for (int j = 0; j < terms; ++j) {
    sum += power / Rat(2 * j + 1);
    power *= z2;
  }
  // Tail of sum_{j>=terms} z^(2j+1)/(2j+1) <= z^(2*terms+1) / ((2*terms+1)(1-z^2)).
  Rat tail = power / (Rat(2 * terms + 1) * (Rat(1) - z2));
  return {2 * sum, 2 * (sum + tail)};
}

}  // namespace

RatInterval ln_enclosure(const Rat& y, int terms) {
  if (y <= 0) throw ValidationError("ln of non-positive value");
  long e = floor_log2(y);
  Rat m = y;
  if (e >= 0) {
    m /= Rat(int_pow2(static_cast<unsigned long>(e)));
  } else {
    m *= Rat(int_pow2(static_cast<unsigned long>(-e)));
  }
  RatInterval lm = ln_reduced(m, terms);
  RatInterval l2 = ln2_bounds();
  if (e >= 0) {
    return {Rat(e) * l2.lo + lm.lo, Rat(e) * l2.hi + lm.hi};
  }
  return {Rat(e) * l2.hi + lm.lo, Rat(e) * l2.lo + lm.hi};
}

}  // namespace banachlab
