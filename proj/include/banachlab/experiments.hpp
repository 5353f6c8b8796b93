#pragma once

// Experiment harnesses: adversarial Riemann sums over tagged dyadic
// partitions, witness search for l1-type lower bounds over Haar systems
// of partitions, spreading/asymptotic finite-window profiles, and the
// cyclic averaging check.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "banachlab/dyadic.hpp"
#include "banachlab/finvec.hpp"
#include "banachlab/haar.hpp"
#include "banachlab/norms.hpp"

namespace banachlab {

/// A function [0,1] -> X supported on the dyadics: value at d_k is
/// at(k), zero elsewhere.  disjoint_unit_basis marks specs whose values
/// are norm-one basis vectors at pairwise distinct indices.
struct FunctionSpec {
  std::string id;
  std::function<FinVec(Index)> at;
  bool disjoint_unit_basis = false;
};

/// d_k -> basis_vector(k).
FunctionSpec standard_function(const OraclePtr& oracle);

/// d_k -> basis_vector(sigma(d_k)) for the given Haar system.
FunctionSpec haar_image_function(const HaarPtr& sys, const OraclePtr& oracle);

/// Equal-mesh level-m partition with one optional interior dyadic tag
/// per cell (no tag models an irrational point, contributing zero).
struct TaggedPartition {
  int level = 0;
  std::vector<std::optional<DyadicRational>> tags;
};

/// Throws unless tags has size 2^level and each tag is interior to its cell.
void validate_partition(const TaggedPartition& part);

/// sum_i f(t_i), unscaled; optional per-cell signs (+1/-1).
FinVec riemann_vector(const FunctionSpec& f, const TaggedPartition& part,
                      const std::vector<int>& signs = {});

/// ||(1/2^m) sum_i f(t_i)|| under the oracle (enclosure-safe).
NormValue riemann_sum(const FunctionSpec& f, const TaggedPartition& part,
                      const NormOracle& oracle);

struct RiemannBudget {
  int tag_depth = 4;          // candidate tags: reduced levels m+1 .. m+tag_depth
  long combo_cap = 100000;    // full enumeration bound
};

struct RiemannReport {
  int level = 0;
  NormValue value;            // (1/2^m) ||sum f(t_i)|| at the witness tags
  TaggedPartition tags;
  std::vector<int> signs;     // empty for the unsigned sup
  bool exhaustive = false;    // sup fully resolved over the tag universe
};

/// Adversarial sup of riemann_sum over interior tag choices at level m.
/// Exact (over all tags) for spreading-invariant oracles on
/// disjoint-unit-basis specs; exact over the candidate universe when it
/// fits the budget; otherwise a certified greedy lower bound.
RiemannReport riemann_sup(const FunctionSpec& f, int m, const NormOracle& oracle,
                          const RiemannBudget& budget = {});

/// Same with an added sign choice per cell.  Coincides with riemann_sup
/// for disjoint-unit-basis specs (all oracles here are 1-unconditional).
RiemannReport riemann_signed_sup(const FunctionSpec& f, int m, const NormOracle& oracle,
                                 const RiemannBudget& budget = {});

struct HaarWitnessBudget {
  int m_cap = 0;            // levels m in [n, m_cap]; 0 means m_cap = n
  Index choice_budget = 4;  // extra member offsets tried beyond the canonical choice
};

struct HaarWitnessReport {
  int n = 0;
  int m = 0;                   // level achieving the best value
  NormValue value;             // (1/2^m) ||sum_j e_{i_j}||
  std::vector<Index> indices;  // indices[j] in A^m_j with indices[j] >= 2^m
  bool exhaustive = false;     // exact level values (spreading-invariant oracle)
};

/// Best value of (1/2^m)||sum_j e_{i_j}|| over m in [n, m_cap] and
/// choices i_j in A^m_j with 2^m <= i_j; a certified lower bound for
/// the inner sup at level n.
HaarWitnessReport haar_l1_witness(const NormOracle& oracle, const HaarSystem& sys, int n,
                                  const HaarWitnessBudget& budget = {});

struct WindowProfileReport {
  int n = 0;
  NormValue min_value;
  NormValue max_value;
  std::vector<Index> min_window;
  std::vector<Index> max_window;
  long windows = 0;
  bool exhaustive = false;
};

/// Extremes of ||sum_j coeffs[j] e_{i_j}|| over windows
/// lo <= i_1 < ... < i_n <= hi (requires lo >= n).  Single exact value
/// for spreading-invariant oracles.
WindowProfileReport spreading_window_profile(const NormOracle& oracle,
                                             const std::vector<Rat>& coeffs, Index lo, Index hi,
                                             long window_cap = 100000);

struct ArrayProfileReport {
  int n = 0;
  NormValue min_value;             // min over diagonals of (1/n)||sum_j e^j_{i_j}||
  std::vector<Index> min_positions;
  long diagonals = 0;
  bool exhaustive = false;
};

/// Rows are the subsequences of the basis along the system's sets in
/// natural enumeration (A^1_0, A^1_1, A^2_0, ...); diagonals range over
/// n <= i_1 < ... < i_n <= pos_hi.
ArrayProfileReport asymptotic_array_profile(const NormOracle& oracle, const HaarSystem& sys, int n,
                                            Index pos_hi, long diag_cap = 100000);

struct NormalizedVector {
  FinVec vec;       // normalized when norm.exact, raw otherwise
  NormValue norm;   // norm of the raw difference
};

/// (e_{2i} - e_{2i+1}) / ||e_{2i} - e_{2i+1}|| for i = start .. start+count-1.
std::vector<NormalizedVector> difference_sequence(const NormOracle& oracle, int count,
                                                  Index start = 1);

struct AveragingReport {
  Rat combined;        // ||sum a_i w_i||
  Rat cyclic_average;  // (1/L) sum_rho ||sum a_{rho(i)} w_i||
  Rat scaled_sum;      // (sum a / L) ||sum w_i||
  bool triangle_ok;    // cyclic_average >= scaled_sum (holds always)
  bool half_bound_ok;  // combined >= (1/2) scaled_sum on this instance
};

/// Requires an exact oracle, nonnegative coefficients and a block
/// sequence ws; throws Error if the triangle relation fails (a bug).
AveragingReport cyclic_average_check(const NormOracle& oracle, const std::vector<FinVec>& ws,
                                     const std::vector<Rat>& coeffs);

}  // namespace banachlab
