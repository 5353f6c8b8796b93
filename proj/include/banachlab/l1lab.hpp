#pragma once

// Desk-scale model of L1[0,1]: simple functions on dyadic grids with
// exact rational cell values, the sign-averaged square-function check,
// l1-lower-constant estimation and disjointification of supports.

#include <string>
#include <string_view>
#include <vector>

#include "banachlab/rational.hpp"

namespace banachlab {

/// Constant on each cell [(c-1)/2^g, c/2^g); exactly 2^g values.
class StepFunction {
 public:
  StepFunction(int level, std::vector<Rat> values);
  static StepFunction constant(const Rat& v);
  /// Text form: "level g" then 2^g whitespace-separated rationals.
  static StepFunction parse(std::string_view text);

  int level() const { return level_; }
  const std::vector<Rat>& values() const { return values_; }

  StepFunction refined(int to_level) const;
  static int common_level(const std::vector<StepFunction>& fs);

  Rat l1_norm() const;

  StepFunction& operator+=(const StepFunction& other);  // refines as needed
  StepFunction& operator-=(const StepFunction& other);
  StepFunction& operator*=(const Rat& c);
  friend StepFunction operator+(StepFunction a, const StepFunction& b) { return a += b; }
  friend StepFunction operator-(StepFunction a, const StepFunction& b) { return a -= b; }
  friend StepFunction operator*(const Rat& c, StepFunction f) { return f *= c; }
  friend bool operator==(const StepFunction& a, const StepFunction& b);

  std::string str() const;

 private:
  int level_;
  std::vector<Rat> values_;
};

struct KhintchineReport {
  Rat lhs;          // exact average over all sign vectors of ||sum eps_i f_i||_1
  RatInterval rhs;  // enclosure of the integral of sqrt(sum f_i^2)
  bool bound_ok;    // lhs >= rhs/sqrt(2) - tol, certified via the upper bounds
};

/// Exhaustive sign enumeration; at most 16 functions.
KhintchineReport khintchine_check(const std::vector<StepFunction>& fs,
                                  const Rat& tol = make_rat(1, Int("1000000000")),
                                  int scale_bits = 64);

struct ThetaReport {
  Rat value;                 // best-known upper bound for the l1-lower constant
  std::vector<Rat> witness;  // coefficients on the l1 sphere attaining it
  bool certified;            // equals the true constant (disjoint supports)
};

/// min over the l1 sphere of ||sum a_i f_i||_1, searched on a sign x
/// simplex grid with zoom refinement; exact for disjointly supported
/// families.
ThetaReport theta_lower_estimate(const std::vector<StepFunction>& fs, long grid = 1024,
                                 int refine_rounds = 2);

enum class DorMode { Greedy, Exact };

/// owner[cell] in [0, n) or -1 for unassigned, at a fixed grid level.
struct CellAssignment {
  int level = 0;
  std::vector<int> owner;
};

struct DorReport {
  bool success;    // min_mass >= theta^2
  Rat min_mass;    // min over owners of their assigned mass
  CellAssignment assignment;
  bool optimal;    // exact search completed (branch and bound)
};

/// Masses per owner: integral of |f_i| over its assigned cells.
std::vector<Rat> assignment_masses(const std::vector<StepFunction>& fs,
                                   const CellAssignment& assignment);

/// Searches for an assignment of grid cells to owners with every
/// owner's mass >= theta^2; exact mode is branch-and-bound optimal in
/// the min mass, greedy takes cells in decreasing mass order.
DorReport dor_disjointify(const std::vector<StepFunction>& fs, const Rat& theta, DorMode mode,
                          std::size_t exact_cell_cap = 64);

}  // namespace banachlab
