#include <doctest.h>

#include "microwidths/params.hpp"

using namespace microwidths;

namespace {

ExtRat fin(long long num, long long den = 1) { return ExtRat::finite(rat(num, den)); }

EmbeddingParams make(const ExtRat& p1, const ExtRat& p2, const Rational& delta,
                     const Rational& s_prime, int n, const Rational& d) {
  SpaceParams src{p1, p1, delta + Rational(n) * (p1.reciprocal() - p2.reciprocal()), s_prime};
  SpaceParams tgt{p2, p2, Rational(0), Rational(0)};
  return derive_params(src, tgt, n, d);
}

}  // namespace

TEST_CASE("conjugate exponents") {
  CHECK(conjugate(fin(2)) == fin(2));
  CHECK(conjugate(fin(4, 3)) == fin(4));
  CHECK(conjugate(fin(1, 2)).is_infinite());
  CHECK(conjugate(fin(1)).is_infinite());
  CHECK(conjugate(ExtRat::infinity()) == fin(1));
  CHECK_THROWS_AS(ExtRat::finite(Rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(ExtRat::finite(Rational(-3)), std::invalid_argument);
}

TEST_CASE("conjugate is an involution on [1, inf]") {
  std::vector<ExtRat> ps{ExtRat::infinity(), fin(1)};
  for (int num = 1; num <= 50; ++num)
    for (int den = 1; den < num; ++den) ps.push_back(fin(num, den));  // > 1
  int checked = 0;
  for (const auto& p : ps) {
    CHECK(conjugate(conjugate(p)) == p);
    ++checked;
  }
  CHECK(checked >= 50);
}

TEST_CASE("derive_params computes delta, p*, p_tilde") {
  // (s1=3, p1=1), (s2=1, p2=2), n=2 -> delta = 1
  SpaceParams src{fin(1), fin(1), Rational(3), Rational(1)};
  SpaceParams tgt{fin(2), fin(2), Rational(1), Rational(0)};
  const auto e = derive_params(src, tgt, 2, Rational(1));
  CHECK(e.delta == Rational(1));
  CHECK(e.s_prime == Rational(1));
  CHECK(e.p_star.is_infinite());  // p1 <= p2

  // p1=2, p2=1 -> p* = 2
  const auto e2 = make(fin(2), fin(1), Rational(1), Rational(1), 2, Rational(1));
  CHECK(e2.p_star == fin(2));

  // p1=3, min(delta/d, s'/n)=2 -> p_tilde = 3/7
  const auto e3 = make(fin(3), fin(1), Rational(2), Rational(4), 2, Rational(1));
  CHECK(e3.rate_min() == Rational(2));
  REQUIRE(e3.p_tilde.has_value());
  CHECK(*e3.p_tilde == fin(3, 7));

  CHECK_THROWS_AS(make(fin(2), fin(2), Rational(1), Rational(1), 2, Rational(3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(make(fin(2), fin(2), Rational(1), Rational(1), 2, Rational(-1)),
                  std::invalid_argument);
}

TEST_CASE("theta and theta1 are absent when their defining condition fails") {
  const auto a = make(fin(3), fin(2), Rational(1), Rational(1), 1, Rational(1));
  CHECK_FALSE(a.theta.has_value());   // p2 = 2
  CHECK_FALSE(a.theta1.has_value());  // p1 > 2

  const auto b = make(fin(2), fin(4), Rational(1), Rational(4), 2, Rational(1));
  REQUIRE(b.theta.has_value());
  CHECK(*b.theta == Rational(1));  // (1/2 - 1/4)/(1/2 - 1/4)

  const auto c = make(fin(4, 3), fin(4), Rational(2), Rational(3), 2, Rational(1));
  REQUIRE(c.theta1.has_value());
  CHECK(c.t == fin(4));  // min(p1', p2) = min(4, 4)
}

TEST_CASE("compactness gate") {
  // p1 <= p2 (p* = inf): compact iff delta > 0 and s' > 0
  const auto a = make(fin(1), fin(2), rat(1, 10), rat(1, 10), 2, Rational(1));
  CHECK(is_compact(a));

  // p1=2, p2=1, n=2, d=1: delta = 0.4 <= d/p* = 1/2
  const auto b = make(fin(2), fin(1), rat(2, 5), Rational(3), 2, Rational(1));
  CHECK_FALSE(is_compact(b));

  // s' = 0 fails for every p*
  const auto c = make(fin(1), fin(2), Rational(1), Rational(0), 2, Rational(1));
  CHECK_FALSE(is_compact(c));

  for (long long num = 1; num <= 12; ++num) {
    const auto e = make(fin(num, 3), fin(num, 2), rat(1, 7), rat(1, 9), 2, Rational(1));
    CHECK(e.p_star.is_infinite());
    CHECK(is_compact(e));
  }
}

TEST_CASE("d = 0 convention routes rate_min through s'/n") {
  const auto e = make(fin(2), fin(2), rat(1, 100), Rational(4), 2, Rational(0));
  CHECK(e.rate_min() == Rational(2));  // s'/n, not delta/d
}

TEST_CASE("derive_params is pure") {
  const auto a = make(fin(7, 5), fin(9, 2), rat(13, 7), rat(8, 3), 3, rat(5, 2));
  const auto b = make(fin(7, 5), fin(9, 2), rat(13, 7), rat(8, 3), 3, rat(5, 2));
  CHECK(a.delta == b.delta);
  CHECK(a.t == b.t);
  CHECK(a.theta == b.theta);
  CHECK(a.theta1 == b.theta1);
  CHECK(a.p_tilde == b.p_tilde);
}

TEST_CASE("theta(p1,p2) equals theta1 of the swapped conjugate pair") {
  // rational identity for 2 <= p1 < p2 < inf
  for (long long a = 4; a <= 16; ++a)
    for (long long b = a + 1; b <= 20; ++b) {
      const ExtRat p1 = fin(a, 2), p2 = fin(b, 2);
      if (p1.value() < 2) continue;
      const auto direct = make(p1, p2, Rational(1), Rational(1), 2, Rational(1));
      const auto swapped =
          make(conjugate(p2), conjugate(p1), Rational(1), Rational(1), 2, Rational(1));
      REQUIRE(direct.theta.has_value());
      REQUIRE(swapped.theta1.has_value());
      CHECK(*direct.theta == *swapped.theta1);
    }
}
