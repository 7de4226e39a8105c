#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "microwidths/dset.hpp"
#include "microwidths/params.hpp"

namespace microwidths {

/// Sparse element of the truncated index set {(j, ell) : j <= J, ell in some
/// I_{j,i}, i <= I_max}.
struct SeqElement {
  using Key = std::pair<int, std::vector<std::int64_t>>;
  int J = 0;
  int I_max = 0;
  std::map<Key, double> entries;

  void set(int j, std::vector<std::int64_t> ell, double value);
};

/// One side of the embedding: ell_q(2^{js} ell_p(w)) with w_j(x) =
/// (1 + 2^j dist(x,U))^{weight_exponent}.
struct SpaceSpec {
  Rational s;
  ExtRat p = ExtRat::finite(Rational(2));
  ExtRat q = ExtRat::finite(Rational(2));
  Rational weight_exponent;  // 0 for the unweighted target space
  DSetModel U;
};

/// The mixed quasi-norm (sum_j 2^{jsq} (sum_m |lambda w|^p)^{q/p})^{1/q},
/// with sup modifications at p = inf and/or q = inf.
double norm(const SeqElement& lambda, const SpaceSpec& spec);

/// Canonical block projection P_{j,i}: zero outside I_{j,i}.
SeqElement project(const SeqElement& lambda, int j, int i, const BlockPartition& part);

/// For p1 = p2 = q1 = q2 the embedding is the diagonal operator with entries
/// sigma_{j,ell} = 2^{-j delta} w_j(2^{-j} ell)^{-1} on flat ell_p. Returns the
/// full multiset over the partition, sorted descending; its k-th entry is the
/// exact k-th s-number (all three scales coincide) of the truncated embedding.
/// Requires a partition built with coordinates.
std::vector<double> as_diagonal(const EmbeddingParams& params, const BlockPartition& part);

/// First `top_k` entries of as_diagonal for the truncation (J, I_max), computed
/// without materializing far blocks: blocks are consumed in decreasing order of
/// their sigma upper bound until the cut is provably below the k-th value.
std::vector<double> top_diagonal(const EmbeddingParams& params, const DSetModel& U, int J,
                                 int I_max, std::int64_t top_k);

/// sigma_{j,ell} from the scaled squared lattice distance (2^j dist)^2.
double diagonal_sigma(const EmbeddingParams& params, int j, double dist2_scaled);

/// CSV dump: j,l1..ln,value.
void dump_element_csv(std::ostream& os, const SeqElement& lambda, int n);

}  // namespace microwidths
