#include "microwidths/params.hpp"

namespace microwidths {

ExtRat conjugate(const ExtRat& p) {
  if (p.is_infinite()) return ExtRat::finite(Rational(1));
  const Rational& v = p.value();
  if (v <= 1) return ExtRat::infinity();
  return ExtRat::finite(v / (v - 1));
}

Rational EmbeddingParams::rate_min() const {
  const Rational sn = s_prime / n;
  if (d == 0) return sn;  // a 0-set is a point: the s'/n branch governs
  const Rational dd = delta / d;
  return dd < sn ? dd : sn;
}

EmbeddingParams derive_params(const SpaceParams& source, const SpaceParams& target, int n,
                              const Rational& d) {
  if (n < 1) throw std::invalid_argument("derive_params: n must be >= 1");
  if (d < 0 || d > n) throw std::invalid_argument("derive_params: d must lie in [0, n]");

  EmbeddingParams e;
  e.source = source;
  e.target = target;
  e.n = n;
  e.d = d;

  const Rational u1 = source.p.reciprocal();
  const Rational u2 = target.p.reciprocal();
  e.delta = source.s - target.s - Rational(n) * (u1 - u2);
  e.s_prime = source.s_w - target.s_w;

  const Rational inv_pstar = u2 > u1 ? u2 - u1 : Rational(0);
  e.p_star = ExtRat::from_reciprocal(inv_pstar);
  e.t = min(conjugate(source.p), target.p);

  const Rational half(1, 2);
  if (u2 < half)  // p2 > 2
    e.theta = (u1 - u2) / (half - u2);
  if (u1 > half) {  // p1 < 2, so p1' > 2
    const Rational v1 = conjugate(source.p).reciprocal();
    const Rational v2 = conjugate(target.p).reciprocal();
    e.theta1 = (v2 - v1) / (half - v1);
  }

  const Rational inv_ptilde = e.rate_min() + u1;
  if (inv_ptilde > 0) e.p_tilde = ExtRat::from_reciprocal(inv_ptilde);

  return e;
}

bool is_compact(const EmbeddingParams& params) {
  const Rational inv_pstar = params.p_star.reciprocal();
  return params.delta > params.d * inv_pstar && params.s_prime > Rational(params.n) * inv_pstar;
}

}  // namespace microwidths
