#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <vector>

#include "microwidths/extrat.hpp"

namespace microwidths {

/// A computable d-set U in R^n. Three model families:
///   Point:          U = {x0},                              d = 0
///   FaceCube(m):    U = [0,1]^m x {0}^{n-m},               d = m
///   CantorProduct:  U = C_theta x [0,1]^m x {0}^{n-1-m},   d = log2/log(1/theta) + m
/// where C_theta is the self-similar Cantor set on [0,1] with contraction
/// ratio theta in (0, 1/2).
struct DSetModel {
  enum class Kind { Point, FaceCube, CantorProduct };

  Kind kind = Kind::Point;
  int n = 1;
  std::vector<double> x0;  // Point location
  int m = 0;               // FaceCube/CantorProduct cube factor
  Rational theta;          // Cantor contraction ratio

  double dimension() const;
  /// True when lattice distances are computed in exact integer arithmetic
  /// (Point at the origin, FaceCube); Cantor distances carry a 2^-40 error.
  bool lattice_exact() const;
  std::string describe() const;
};

DSetModel point_set(std::vector<double> x0);
DSetModel face_cube(int n, int m);
DSetModel cantor_product(int n, const Rational& theta, int m);

/// Euclidean distance from x to U; exact for Point/FaceCube, within 2^-40
/// for CantorProduct.
double distance(const std::vector<double>& x, const DSetModel& U);

/// The 2-microlocal weight w_j(x) = (1 + 2^j dist(x, U))^{s_w}.
double weight(int j, const std::vector<double>& x, const DSetModel& U, const Rational& s_w);

/// (2^j * dist(2^{-j} ell, U))^2 -- the scaled squared lattice distance the
/// block classification runs on. Integer-exact for lattice_exact models.
double scaled_dist2(const DSetModel& U, int j, const std::vector<std::int64_t>& ell);

/// Index i of the annulus I_{j,i} containing ell: 0 when dist <= sqrt(n) 2^{-j},
/// otherwise the unique i with sqrt(n) 2^{-j+i-1} < dist <= sqrt(n) 2^{-j+i}.
int block_index(const DSetModel& U, int j, const std::vector<std::int64_t>& ell);

/// The truncated family I_{j,i}, j <= J, i <= I_max. Sizes M_{j,i} are always
/// present; coordinate lists only when built by `partition` (they are the
/// memory-heavy part).
struct BlockPartition {
  DSetModel model;
  int J = 0;
  int I_max = 0;
  std::vector<std::vector<std::int64_t>> sizes;  // [j][i] = M_{j,i}
  bool has_points = false;
  // [j][i] -> flattened lattice coordinates, n entries per point
  std::vector<std::vector<std::vector<std::int64_t>>> points;

  std::int64_t size(int j, int i) const { return sizes.at(j).at(i); }
  std::int64_t total() const;
};

inline constexpr std::int64_t kDefaultEnumerationCap = 40'000'000;

/// Enumerates every block member explicitly. Throws std::length_error when
/// the total would exceed `cap` (the guard against unbounded enumeration).
BlockPartition partition(const DSetModel& U, int J, int I_max,
                         std::int64_t cap = kDefaultEnumerationCap);

/// Counts M_{j,i} without materializing coordinates (closed-form counting on
/// the last coordinate; no cap needed).
BlockPartition partition_sizes(const DSetModel& U, int J, int I_max);

/// Number of dyadic cubes Q_{j,ell} (side 2^-j, centered 2^-j ell) with
/// sqrt(n) 2^{-j+i} < dist(Q_{j,ell}, U) <= 4 sqrt(n) 2^{-j+i}, where the
/// cube distance is the exact min over the closed cube.
std::int64_t count_N(const DSetModel& U, int j, int i);

/// Model value of Lemma-3.4 type for N_{j,i}: 2^{in} 2^{(j-i)d} for i < j,
/// 2^{in} for i >= j (d from the model, possibly irrational for Cantor).
double counting_model(const DSetModel& U, int j, int i);

/// Visits every member of one block I_{j,i} with its scaled squared distance.
/// Throws std::length_error past `cap` visits.
void scan_block(const DSetModel& U, int j, int i,
                const std::function<void(const std::vector<std::int64_t>&, double)>& fn,
                std::int64_t cap = kDefaultEnumerationCap);

/// CSV dump: j,i,M_ji,N_ji (one row per block; N_ji computed on demand).
void dump_partition_csv(std::ostream& os, const BlockPartition& part, bool with_counts = true);

}  // namespace microwidths
