#include "banachlab/finvec.hpp"

#include <sstream>

namespace banachlab {

FinVec FinVec::unit(Index i) {
  FinVec v;
  v.set(i, Rat(1));
  return v;
}

FinVec FinVec::parse(std::string_view text) {
  FinVec v;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    auto colon = tok.find(':');
    if (colon == std::string::npos) {
      throw ValidationError("bad vector entry '" + tok + "' (want index:coefficient)");
    }
    Index i = 0;
    try {
      i = std::stoll(tok.substr(0, colon));
    } catch (const std::exception&) {
      throw ValidationError("bad vector index in '" + tok + "'");
    }
    if (i < 1) throw ValidationError("vector index must be >= 1 in '" + tok + "'");
    Rat c = parse_rat(tok.substr(colon + 1));
    if (v.coeff(i) != 0) throw ValidationError("duplicate vector index in '" + tok + "'");
    v.set(i, c);
  }
  return v;
}

void FinVec::set(Index i, const Rat& c) {
  if (i < 1) throw ValidationError("vector index must be >= 1");
  if (c == 0) {
    entries_.erase(i);
  } else {
    entries_[i] = c;
  }
}

Rat FinVec::coeff(Index i) const {
  auto it = entries_.find(i);
  return it == entries_.end() ? Rat(0) : it->second;
}

Index FinVec::min_support() const {
  if (entries_.empty()) throw ValidationError("support of zero vector");
  return entries_.begin()->first;
}

Index FinVec::max_support() const {
  if (entries_.empty()) throw ValidationError("support of zero vector");
  return entries_.rbegin()->first;
}

FinVec& FinVec::operator+=(const FinVec& other) {
  for (const auto& [i, c] : other.entries_) set(i, coeff(i) + c);
  return *this;
}

FinVec& FinVec::operator-=(const FinVec& other) {
  for (const auto& [i, c] : other.entries_) set(i, coeff(i) - c);
  return *this;
}

FinVec& FinVec::operator*=(const Rat& c) {
  if (c == 0) {
    entries_.clear();
  } else {
    for (auto& [i, v] : entries_) v *= c;
  }
  return *this;
}

FinVec FinVec::restricted(Index lo, Index hi) const {
  FinVec out;
  for (auto it = entries_.lower_bound(lo); it != entries_.end() && it->first <= hi; ++it) {
    out.set(it->first, it->second);
  }
  return out;
}

Rat FinVec::abs_sum() const {
  Rat s(0);
  for (const auto& [i, c] : entries_) s += rat_abs(c);
  return s;
}

Rat FinVec::abs_max() const {
  Rat m(0);
  for (const auto& [i, c] : entries_) {
    Rat a = rat_abs(c);
    if (a > m) m = a;
  }
  return m;
}

std::string FinVec::str() const {
  std::string out;
  for (const auto& [i, c] : entries_) {
    if (!out.empty()) out += ' ';
    out += std::to_string(i) + ":" + rat_str(c);
  }
  return out;
}

bool is_block_sequence(const std::vector<FinVec>& vs) {
  for (std::size_t k = 0; k < vs.size(); ++k) {
    if (vs[k].is_zero()) return false;
    if (k > 0 && vs[k - 1].max_support() >= vs[k].min_support()) return false;
  }
  return true;
}

}  // namespace banachlab
