#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "microwidths/extrat.hpp"

namespace microwidths {

enum class SKind { Approx, Kolmogorov, Gelfand };  // a_k, d_k, c_k

enum class Exactness { Exact, OrderUpper, OrderLower, OrderTwoSided };

/// One catalog value: the model function evaluated with every multiplicative
/// constant set to 1, tagged with the inequality direction the backing lemma
/// provides and the lemma label it came from.
struct OrderValue {
  double value = 0.0;
  Exactness exactness = Exactness::Exact;
  std::string source;
};

/// a_k(id, l_{p1}^N -> l_{p2}^N) = (N-k+1)^{1/p2-1/p1} for 0 < p2 < p1 <= inf.
/// k > N yields Exact 0 (rank property). Throws when p2 >= p1 or k < 1.
OrderValue exact_approx_pp(const ExtRat& p1, const ExtRat& p2, std::int64_t N, std::int64_t k);

/// c_k(id, l_{p1}^N -> l_{p2}^N) = (N-k+1)^{1/p2-1/p1} for 0 < p2 <= p1 <= inf.
OrderValue exact_gelfand_pp(const ExtRat& p1, const ExtRat& p2, std::int64_t N, std::int64_t k);

/// Model value of s_k(id, l_{p1}^N -> l_{p2}^N) for the requested scale,
/// dispatching over the lemma catalog. Outside a two-sided lemma's validity
/// window the value extends as an order upper bound (monotonicity in k);
/// the source records the extension. `lambda` tunes the a-number bound for
/// p1 <= 1, p2 = inf (default 1/2). Throws regime_not_covered-style
/// std::domain_error only for invalid inputs (k < 1, nonpositive N).
OrderValue order_width(SKind kind, const ExtRat& p1, const ExtRat& p2, std::int64_t N,
                       std::int64_t k, std::optional<double> lambda = std::nullopt);

/// Best catalog lower-bound model for s_k; value 0 with source "none" where
/// the catalog provides no lower bound at this index.
OrderValue order_width_lower(SKind kind, const ExtRat& p1, const ExtRat& p2, std::int64_t N,
                             std::int64_t k);

/// Exact s-numbers of a diagonal operator on l_p (any 0 < p <= inf):
/// the entries sorted descending. Rejects negative entries.
std::vector<double> diagonal_snumbers(std::vector<double> sigma);

/// Exact s-numbers of a matrix between Euclidean spaces: singular values,
/// descending. `rows x cols`, row-major.
std::vector<double> hilbert_snumbers(const std::vector<std::vector<double>>& matrix);

std::string to_string(SKind kind);

}  // namespace microwidths
