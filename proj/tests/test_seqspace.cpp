#include <doctest.h>

#include <cmath>
#include <random>

#include "microwidths/seqspace.hpp"

using namespace microwidths;

namespace {

ExtRat fin(long long num, long long den = 1) { return ExtRat::finite(rat(num, den)); }

EmbeddingParams diag_params(const ExtRat& p, const Rational& delta, const Rational& s_prime, int n,
                            const Rational& d) {
  SpaceParams src{p, p, delta, s_prime};
  SpaceParams tgt{p, p, Rational(0), Rational(0)};
  return derive_params(src, tgt, n, d);
}

SeqElement random_element(const BlockPartition& part, std::mt19937& rng, int max_nonzeros) {
  std::uniform_real_distribution<double> val(-2.0, 2.0);
  std::uniform_int_distribution<int> jpick(0, part.J), ipick(0, part.I_max);
  SeqElement lambda;
  lambda.J = part.J;
  lambda.I_max = part.I_max;
  const int n = part.model.n;
  for (int t = 0; t < max_nonzeros; ++t) {
    const int j = jpick(rng), i = ipick(rng);
    const auto& flat = part.points[j][i];
    if (flat.empty()) continue;
    std::uniform_int_distribution<std::size_t> opick(0, flat.size() / n - 1);
    const std::size_t o = opick(rng) * n;
    lambda.set(j, std::vector<std::int64_t>(flat.begin() + o, flat.begin() + o + n), val(rng));
  }
  return lambda;
}

}  // namespace

TEST_CASE("mixed norm on single-term elements") {
  SpaceSpec spec;
  spec.s = Rational(1);
  spec.p = fin(2);
  spec.q = fin(2);
  spec.weight_exponent = Rational(1);
  spec.U = point_set({0.0});

  SeqElement lambda;
  lambda.J = 4;
  lambda.I_max = 8;
  lambda.set(2, {4}, 1.0);  // dist(2^{-2} * 4, 0) = 1, so 2^2 * (1 + 4)^1 = 20
  CHECK(norm(lambda, spec) == doctest::Approx(20.0));

  SeqElement zero;
  zero.J = 4;
  zero.I_max = 8;
  CHECK(norm(zero, spec) == 0.0);
}

TEST_CASE("p = q collapses to the flat weighted lp norm") {
  const auto U = face_cube(2, 1);
  const auto part = partition(U, 4, 4);
  std::mt19937 rng(7);
  for (const auto& p : {fin(1, 2), fin(1), fin(2), fin(3)}) {
    SpaceSpec spec;
    spec.s = rat(3, 4);
    spec.p = p;
    spec.q = p;
    spec.weight_exponent = rat(1, 2);
    spec.U = U;
    for (int trial = 0; trial < 5; ++trial) {
      const auto lambda = random_element(part, rng, 30);
      double flat = 0.0;
      const double pd = p.as_double();
      for (const auto& [key, value] : lambda.entries) {
        const auto& [j, ell] = key;
        std::vector<double> x{std::ldexp(double(ell[0]), -j), std::ldexp(double(ell[1]), -j)};
        const double term =
            std::exp2(double(j) * to_double(spec.s)) * std::abs(value) *
            weight(j, x, U, spec.weight_exponent);
        flat += std::pow(term, pd);
      }
      CHECK(norm(lambda, spec) == doctest::Approx(std::pow(flat, 1.0 / pd)));
    }
  }
}

TEST_CASE("homogeneity and the rho-triangle inequality") {
  const auto U = face_cube(2, 1);
  const auto part = partition(U, 4, 4);
  std::mt19937 rng(99);
  const std::vector<std::pair<ExtRat, ExtRat>> pqs = {
      {fin(2), fin(2)}, {fin(1, 2), fin(1)}, {fin(3), fin(1, 3)}, {ExtRat::infinity(), fin(2)}};
  for (const auto& [p, q] : pqs) {
    SpaceSpec spec;
    spec.s = rat(1, 2);
    spec.p = p;
    spec.q = q;
    spec.weight_exponent = Rational(1);
    spec.U = U;
    double rho = 1.0;
    if (!p.is_infinite()) rho = std::min(rho, p.as_double());
    if (!q.is_infinite()) rho = std::min(rho, q.as_double());
    for (int trial = 0; trial < 50; ++trial) {
      const auto a = random_element(part, rng, 20);
      const auto b = random_element(part, rng, 20);
      const double na = norm(a, spec);
      CHECK(norm(a, spec) == na);  // deterministic
      SeqElement scaled = a;
      for (auto& [k, v] : scaled.entries) v *= -2.5;
      CHECK(norm(scaled, spec) == doctest::Approx(2.5 * na));

      SeqElement sum = a;
      sum.entries.insert(b.entries.begin(), b.entries.end());
      for (const auto& [k, v] : b.entries) {
        auto it = a.entries.find(k);
        if (it != a.entries.end()) sum.entries[k] = it->second + v;
      }
      const double lhs = std::pow(norm(sum, spec), rho);
      const double rhs = std::pow(na, rho) + std::pow(norm(b, spec), rho);
      CHECK(lhs <= rhs * (1 + 1e-12) + 1e-12);
    }
  }
}

TEST_CASE("block projections: idempotent, orthogonal, reassembling") {
  const auto U = face_cube(2, 1);
  const auto part = partition(U, 3, 3);
  std::mt19937 rng(1234);
  const auto lambda = random_element(part, rng, 40);

  SeqElement assembled;
  assembled.J = lambda.J;
  assembled.I_max = lambda.I_max;
  for (int j = 0; j <= part.J; ++j)
    for (int i = 0; i <= part.I_max; ++i) {
      const auto pji = project(lambda, j, i, part);
      // idempotence
      const auto twice = project(pji, j, i, part);
      CHECK(twice.entries == pji.entries);
      // disjoint blocks annihilate
      for (int i2 = 0; i2 <= part.I_max; ++i2) {
        if (i2 == i) continue;
        CHECK(project(pji, j, i2, part).entries.empty());
      }
      for (const auto& [key, value] : pji.entries) assembled.entries[key] += value;
    }
  CHECK(assembled.entries == lambda.entries);
}

TEST_CASE("as_diagonal: weights, sandwich, degenerate scales") {
  const auto U = face_cube(2, 1);
  const auto part = partition(U, 3, 3);

  // entries on U itself have weight 1: sigma = 2^{-j delta}
  auto params = diag_params(fin(2), Rational(1), Rational(1), 2, Rational(1));
  const auto sigma = as_diagonal(params, part);
  CHECK(sigma.front() == doctest::Approx(1.0));  // (0,0) block contains points of U

  // every entry respects the weight sandwich around 2^{-j delta - i s'}:
  // the block's distance window pins sigma * 2^{j delta + i s'} between
  // (2^-i + sqrt(n))^-s' and (2^-i + sqrt(n)/2)^-s' (1 and (1+sqrt n)^-s'
  // for i = 0), here with delta = s' = 1
  const int n = 2;
  const double sqn = std::sqrt(2.0);
  for (int j = 0; j <= part.J; ++j)
    for (int i = 0; i <= part.I_max; ++i) {
      const double lo = i == 0 ? 1.0 / (1.0 + sqn) : 1.0 / (std::exp2(-double(i)) + sqn);
      const double hi = i == 0 ? 1.0 : 1.0 / (std::exp2(-double(i)) + sqn / 2);
      const auto& flat = part.points[j][i];
      for (std::size_t o = 0; o < flat.size(); o += n) {
        const std::vector<std::int64_t> ell{flat[o], flat[o + 1]};
        const double s = diagonal_sigma(params, j, scaled_dist2(U, j, ell));
        const double ratio = s * std::exp2(double(j) + double(i));
        CHECK(ratio >= lo * (1 - 1e-9));
        CHECK(ratio <= hi * (1 + 1e-9));
      }
    }

  // delta = 0 with weight exponent 0: every sigma is 1
  auto flat_params = diag_params(fin(2), Rational(0), Rational(0), 2, Rational(1));
  for (double v : as_diagonal(flat_params, part)) CHECK(v == doctest::Approx(1.0));

  // non-diagonal parameter combinations are rejected
  SpaceParams src{fin(1), fin(1), Rational(1), Rational(1)};
  SpaceParams tgt{fin(2), fin(2), Rational(0), Rational(0)};
  CHECK_THROWS_AS(as_diagonal(derive_params(src, tgt, 2, Rational(1)), part),
                  std::invalid_argument);
}

TEST_CASE("diagonal norm consistency: B1 norm equals the flat norm of sigma-scaled entries") {
  const auto U = face_cube(2, 1);
  const auto part = partition(U, 4, 4);
  const auto params = diag_params(fin(2), rat(6, 5), Rational(1), 2, Rational(1));
  SpaceSpec b1;
  b1.s = params.delta;
  b1.p = fin(2);
  b1.q = fin(2);
  b1.weight_exponent = params.s_prime;
  b1.U = U;

  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto lambda = random_element(part, rng, 25);
    double flat = 0.0;
    for (const auto& [key, value] : lambda.entries) {
      const auto& [j, ell] = key;
      const double sigma = diagonal_sigma(params, j, scaled_dist2(U, j, ell));
      flat += (value / sigma) * (value / sigma);
    }
    CHECK(norm(lambda, b1) == doctest::Approx(std::sqrt(flat)));
  }
}

TEST_CASE("top_diagonal equals the head of the full diagonal") {
  const auto U = face_cube(2, 1);
  const auto part = partition(U, 5, 5);
  const auto params = diag_params(fin(2), rat(6, 5), Rational(1), 2, Rational(1));
  const auto full = as_diagonal(params, part);
  for (std::int64_t K : {1LL, 10LL, 100LL, 500LL}) {
    const auto top = top_diagonal(params, U, 5, 5, K);
    REQUIRE(static_cast<std::int64_t>(top.size()) >= std::min<std::int64_t>(K, full.size()));
    for (std::int64_t k = 0; k < std::min<std::int64_t>(K, full.size()); ++k)
      CHECK(top[k] == doctest::Approx(full[k]).epsilon(1e-14));
  }
  // exact s-numbers are non-increasing and start at the largest sigma
  for (std::size_t k = 1; k < full.size(); ++k) CHECK(full[k] <= full[k - 1]);
}

TEST_CASE("norm is unchanged when the truncation window grows") {
  const auto U = face_cube(2, 1);
  const auto part = partition(U, 3, 3);
  std::mt19937 rng(42);
  auto lambda = random_element(part, rng, 15);
  SpaceSpec spec;
  spec.s = Rational(1);
  spec.p = fin(2);
  spec.q = fin(1);
  spec.weight_exponent = Rational(1);
  spec.U = U;
  const double before = norm(lambda, spec);
  lambda.J += 2;
  lambda.I_max += 2;
  CHECK(norm(lambda, spec) == doctest::Approx(before));
}
