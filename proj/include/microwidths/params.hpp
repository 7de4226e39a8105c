#pragma once

#include <optional>

#include "microwidths/extrat.hpp"

namespace microwidths {

/// Scalar data of one weighted sequence space ell_q(2^{js} ell_p(w)).
struct SpaceParams {
  ExtRat p;      // integrability exponent, 0 < p <= inf
  ExtRat q;      // summability exponent, 0 < q <= inf
  Rational s;    // smoothness exponent (the 2^{js} factor)
  Rational s_w;  // weight exponent s'_i of w_j(x) = (1 + 2^j dist(x,U))^{s'_i}
};

/// Conjugate exponent: p/(p-1) for 1<p<inf, 1 for p=inf, inf for 0<p<=1.
ExtRat conjugate(const ExtRat& p);

/// All scalar parameters of one embedding plus the derived quantities the
/// decision tables read. theta/theta1/p_tilde are absent when their defining
/// condition fails, never defaulted.
struct EmbeddingParams {
  SpaceParams source;
  SpaceParams target;
  int n = 1;       // ambient dimension
  Rational d;      // d-set dimension, 0 <= d <= n

  Rational delta;               // s1 - s2 - n(1/p1 - 1/p2)
  Rational s_prime;             // s1' - s2'
  ExtRat p_star;                // 1/p* = (1/p2 - 1/p1)_+
  ExtRat t;                     // min(p1', p2)
  std::optional<Rational> theta;    // (1/p1 - 1/p2)/(1/2 - 1/p2), needs p2 > 2
  std::optional<Rational> theta1;   // (1/p2' - 1/p1')/(1/2 - 1/p1'), needs p1 < 2
  std::optional<ExtRat> p_tilde;    // 1/p_tilde = min(delta/d, s'/n) + 1/p1

  const ExtRat& p1() const { return source.p; }
  const ExtRat& p2() const { return target.p; }
  Rational inv_p1() const { return source.p.reciprocal(); }
  Rational inv_p2() const { return target.p.reciprocal(); }

  /// min(delta/d, s'/n) with the d = 0 convention delta/d = +inf.
  Rational rate_min() const;

  /// min(delta/d, s'/n) + 1/p1, finite even when p_tilde itself is absent.
  Rational inv_p_tilde() const { return rate_min() + inv_p1(); }
};

/// Computes every derived field as an exact rational. Throws when d is
/// outside [0, n].
EmbeddingParams derive_params(const SpaceParams& source, const SpaceParams& target, int n,
                              const Rational& d);

/// Compactness of the embedding: delta > d/p* and s' > n/p*.
bool is_compact(const EmbeddingParams& params);

}  // namespace microwidths
