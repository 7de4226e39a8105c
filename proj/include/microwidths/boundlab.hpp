#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "microwidths/dset.hpp"
#include "microwidths/findim.hpp"
#include "microwidths/params.hpp"

namespace microwidths {

enum class AllocScheme { PQ5, PQ6, Greedy };

/// Per-block rank budget k_{j,i} for one subadditive split of the identity.
/// `budget` is the effective rank 1 + sum (k_{j,i} - 1) the combined bound
/// certifies; `requested` is the K the construction was parameterized with
/// (they differ for the paper-formula schemes, whose accounting constants are
/// not pinned down).
struct AllocationPlan {
  AllocScheme scheme = AllocScheme::Greedy;
  std::int64_t requested = 1;
  std::int64_t budget = 1;
  std::vector<std::vector<std::int64_t>> ranks;  // [j][i], each >= 1

  int M = -1;                            // PQ5 cut level (square annihilated corner)
  int M1 = -1, M2 = -1, M3 = -1, M4 = -1;  // PQ6 cut levels
  std::optional<Rational> eps, z1, z2, z3, z4;  // PQ6 free parameters
};

/// The block scaling factor 2^{-j delta - i s'} of (3.9)-type estimates
/// (order constant normalized to 1).
double block_scale(int j, int i, const EmbeddingParams& params);

/// Lorentz-scale aggregate sup_n n^{1/r} s_n of a non-increasing sequence.
/// Rejects sequences that increase anywhere.
double ideal_norm(const std::vector<double>& values, const Rational& r);

/// Largest integer strictly smaller than a (the paper's [.] bracket).
std::int64_t strict_floor(double a);

/// Builds the rank allocation for budget K over the partition's blocks.
/// PQ6 signals infeasibility (std::invalid_argument) when the free-parameter
/// region is empty or the cut levels come out unordered for this K.
AllocationPlan allocate(std::int64_t K, const BlockPartition& part, const EmbeddingParams& params,
                        AllocScheme scheme, SKind kind = SKind::Approx);

/// PS2-combined order upper bound for s_{budget}(id) on the truncated
/// embedding: (sum_b [block_scale * width(M_b, k_b)]^rho)^{1/rho} with
/// rho = min(1, p2, q2).
double upper_bound(const AllocationPlan& plan, const BlockPartition& part,
                   const EmbeddingParams& params, SKind kind = SKind::Approx);

/// Factorization lower bound: max over blocks with M_{j,i} >= k of
/// 2^{-j delta - i s'} * width_lower(M_{j,i}, k).
double lower_bound(std::int64_t k, const BlockPartition& part, const EmbeddingParams& params,
                   SKind kind = SKind::Approx);

enum class CurveRole { Upper, Lower, Exact };

struct BoundCurve {
  std::vector<std::pair<std::int64_t, double>> points;
  CurveRole role = CurveRole::Exact;
  std::string metadata;
};

struct SlopeFit {
  double slope = 0.0;
  double r2 = 0.0;
  int used_points = 0;
};

/// Ordinary least squares on (log k, log value) over points with positive
/// value and k in [k_min, k_max]. Throws std::invalid_argument with fewer
/// than 8 usable points.
SlopeFit fit_slope(const BoundCurve& curve, std::int64_t k_min, std::int64_t k_max);

/// Step-2 ideal-norm diagnostic: per block, L_{s,infty} (1/s = 1/r + 1/2) of
/// the model sequence {block_scale * width(M_b, k)}_k against the printed
/// table value block_scale * 2^{(in + d(j-i))(1/t + 1/r)} (2^{in(...)} for
/// i >= j).
struct IdealRow {
  int j = 0, i = 0;
  double lhs = 0.0;
  double model = 0.0;
  double ratio = 0.0;
};
std::vector<IdealRow> ideal_norm_table(SKind kind, const BlockPartition& part,
                                       const EmbeddingParams& params, const Rational& r);

std::string to_string(AllocScheme scheme);
std::string to_string(CurveRole role);
AllocScheme parse_scheme(const std::string& text);

/// CSV dump: k,value,role,scheme.
void dump_curves_csv(std::ostream& os, const std::vector<BoundCurve>& curves);

}  // namespace microwidths
