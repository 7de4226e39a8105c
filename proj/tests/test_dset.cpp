#include <doctest.h>

#include <cmath>
#include <set>

#include "microwidths/dset.hpp"

using namespace microwidths;

namespace {

// Independent classification oracle: raw box scan with double distances.
std::vector<std::vector<std::int64_t>> brute_sizes(const DSetModel& U, int J, int I_max,
                                                   std::int64_t radius) {
  std::vector<std::vector<std::int64_t>> sizes(J + 1, std::vector<std::int64_t>(I_max + 1, 0));
  const double sqn = std::sqrt(double(U.n));
  for (int j = 0; j <= J; ++j) {
    std::vector<std::int64_t> ell(U.n, -radius);
    while (true) {
      std::vector<double> x(U.n);
      for (int c = 0; c < U.n; ++c) x[c] = std::ldexp(double(ell[c]), -j);
      const double dist = distance(x, U);
      for (int i = 0; i <= I_max; ++i) {
        const double hi = sqn * std::ldexp(1.0, -j + i);
        const bool in = i == 0 ? dist <= hi : (dist > hi / 2 && dist <= hi);
        if (in) sizes[j][i] += 1;
      }
      int c = 0;
      for (; c < U.n; ++c) {
        if (++ell[c] <= radius) break;
        ell[c] = -radius;
      }
      if (c == U.n) break;
    }
  }
  return sizes;
}

}  // namespace

TEST_CASE("distance to the three model families") {
  CHECK(distance({3.0, 4.0}, point_set({0.0, 0.0})) == doctest::Approx(5.0));
  CHECK(distance({0.5, 0.3}, face_cube(2, 1)) == doctest::Approx(0.3));
  CHECK(distance({0.7, 0.0}, face_cube(2, 1)) == 0.0);
  CHECK(distance({-1.0, 0.0}, face_cube(2, 1)) == doctest::Approx(1.0));
  CHECK(distance({2.0, 2.0}, face_cube(2, 1)) == doctest::Approx(std::sqrt(5.0)));

  const auto C = cantor_product(1, rat(1, 3), 0);
  CHECK(distance({0.0}, C) == 0.0);
  CHECK(distance({1.0}, C) == 0.0);
  CHECK(distance({1.0 / 3.0}, C) == doctest::Approx(0.0).epsilon(1e-11));
  CHECK(distance({0.5}, C) == doctest::Approx(1.0 / 6.0));
  CHECK(distance({0.4}, C) == doctest::Approx(0.4 - 1.0 / 3.0));
  CHECK(distance({-1.0}, C) == doctest::Approx(1.0));
  CHECK(distance({1.0 / 8.0}, C) == doctest::Approx(1.0 / 8.0 - 1.0 / 9.0));

  // product factor: C_theta x [0,1] in R^2
  const auto C2 = cantor_product(2, rat(1, 3), 1);
  CHECK(distance({0.5, 0.5}, C2) == doctest::Approx(1.0 / 6.0));
  CHECK(distance({0.5, 2.0}, C2) == doctest::Approx(std::hypot(1.0 / 6.0, 1.0)));
}

TEST_CASE("2-microlocal weight evaluation") {
  const auto P = point_set({0.0});
  CHECK(weight(3, {1.0}, P, Rational(2)) == doctest::Approx(81.0));  // (1+8)^2
  CHECK(weight(5, {0.0}, P, Rational(7)) == doctest::Approx(1.0));
  CHECK(weight(0, {1.0}, P, Rational(-1)) == doctest::Approx(0.5));
}

TEST_CASE("partition of the point model at level 1, frozen from enumeration") {
  const auto part = partition(point_set({0.0}), 2, 2);
  // dist(l/2, 0) <= 1/2 <=> |l| <= 1; 1/2 < dist <= 1 <=> l = +-2
  CHECK(part.size(1, 0) == 3);
  CHECK(part.size(1, 1) == 2);
  const auto& block = part.points[1][1];
  const std::set<std::int64_t> got(block.begin(), block.end());
  CHECK(got == std::set<std::int64_t>{-2, 2});
}

TEST_CASE("partition agrees with the raw box-scan oracle") {
  const struct {
    DSetModel U;
    std::int64_t radius;
  } cases[] = {
      {point_set({0.0}), 600},
      {face_cube(1, 1), 600},
      {point_set({0.0, 0.0}), 90},
      {face_cube(2, 1), 120},
      {cantor_product(1, rat(1, 3), 0), 600},
  };
  for (const auto& tc : cases) {
    const int J = tc.U.n == 1 ? 5 : 3, I = tc.U.n == 1 ? 4 : 3;
    const auto oracle = brute_sizes(tc.U, J, I, tc.radius);
    const auto fast = partition_sizes(tc.U, J, I);
    const auto full = partition(tc.U, J, I);
    for (int j = 0; j <= J; ++j)
      for (int i = 0; i <= I; ++i) {
        CAPTURE(tc.U.describe());
        CAPTURE(j);
        CAPTURE(i);
        CHECK(fast.size(j, i) == oracle[j][i]);
        CHECK(full.size(j, i) == oracle[j][i]);
      }
  }
}

TEST_CASE("blocks are pairwise disjoint and cover the truncated shell") {
  const auto part = partition(face_cube(2, 1), 3, 4);
  std::set<std::pair<int, std::vector<std::int64_t>>> seen;
  for (int j = 0; j <= part.J; ++j)
    for (int i = 0; i <= part.I_max; ++i) {
      const auto& flat = part.points[j][i];
      for (std::size_t o = 0; o < flat.size(); o += 2) {
        std::vector<std::int64_t> ell{flat[o], flat[o + 1]};
        CHECK(block_index(part.model, j, ell) == i);
        CHECK(seen.emplace(j, ell).second);  // disjoint
      }
    }
  // cover: every lattice point of level j within distance sqrt(n) 2^{-j+I} shows up
  const double sqn = std::sqrt(2.0);
  for (int j = 0; j <= 3; ++j)
    for (std::int64_t a = -80; a <= 80; ++a)
      for (std::int64_t b = -80; b <= 80; ++b) {
        const double dist =
            distance({std::ldexp(double(a), -j), std::ldexp(double(b), -j)}, part.model);
        if (dist <= sqn * std::ldexp(1.0, -j + part.I_max))
          CHECK(seen.count({j, {a, b}}) == 1);
      }
}

TEST_CASE("scan_block visits exactly the members of one block") {
  for (const auto& U : {face_cube(2, 1), point_set({0.0, 0.0}), cantor_product(1, rat(1, 3), 0)}) {
    const auto part = partition(U, 3, 4);
    for (int j = 0; j <= 3; ++j)
      for (int i = 0; i <= 4; ++i) {
        std::int64_t count = 0;
        scan_block(U, j, i, [&](const std::vector<std::int64_t>& ell, double d2) {
          CHECK(block_index(U, j, ell) == i);
          CHECK(d2 == doctest::Approx(scaled_dist2(U, j, ell)));
          ++count;
        });
        CAPTURE(U.describe());
        CHECK(count == part.size(j, i));
      }
  }
}

TEST_CASE("count_N: frozen value and oracle agreement for the point model") {
  const auto U = point_set({0.0});
  // brute force over l in [-64, 64]: cube dist (|l| - 1/2)/8 in (1/8, 4/8] <=> |l| in {2,3,4}
  std::int64_t brute = 0;
  for (std::int64_t l = -64; l <= 64; ++l) {
    const double cd = l == 0 ? 0.0 : (std::abs(double(l)) - 0.5) / 8.0;
    if (cd > 1.0 / 8.0 && cd <= 4.0 / 8.0) ++brute;
  }
  CHECK(brute == 6);
  CHECK(count_N(U, 3, 0) == 6);
  for (int j = 0; j <= 5; ++j)
    for (int i = 0; i <= 3; ++i) {
      std::int64_t expect = 0;
      for (std::int64_t l = -3000; l <= 3000; ++l) {
        const double cd = std::max(0.0, (std::abs(double(l)) - 0.5)) * std::ldexp(1.0, -j);
        const double lo = std::ldexp(1.0, -j + i), hi = 4 * lo;
        if (cd > lo && cd <= hi) ++expect;
      }
      CHECK(count_N(U, j, i) == expect);
    }
}

TEST_CASE("count_N growth in i matches 2^{in} for i >> j") {
  for (const auto& U : {point_set({0.0}), face_cube(2, 2)}) {
    for (int i = 6; i <= 9; ++i) {
      const double r =
          double(count_N(U, 2, i + 1)) / double(count_N(U, 2, i)) / std::exp2(double(U.n));
      CHECK(r > 0.8);
      CHECK(r < 1.25);
    }
  }
}

TEST_CASE("counting window inequalities (3.27)/(3.28)") {
  for (const auto& U : {face_cube(2, 1), point_set({0.0}), cantor_product(1, rat(1, 3), 0)}) {
    const auto part = partition_sizes(U, 6, 10);
    for (int j = 0; j <= 6; ++j)
      for (int i = 0; i <= 6; ++i) {
        CAPTURE(U.describe());
        CAPTURE(j);
        CAPTURE(i);
        // M_{j,i} <= N_{j,i+2} + N_{j,i+3} as printed
        CHECK(part.size(j, i) <= count_N(U, j, i + 2) + count_N(U, j, i + 3));
        // N_{j,i} <= sum of the three next M windows: cube distances sit half a
        // diagonal below point distances, which shifts the window by one
        CHECK(count_N(U, j, i) <=
              part.size(j, i + 1) + part.size(j, i + 2) + part.size(j, i + 3));
      }
  }
}

TEST_CASE("weight sandwich over blocks with i >= 1") {
  const auto U = face_cube(2, 1);
  const Rational s_w(1);
  const auto part = partition(U, 6, 6);
  double c1 = 1e300, c2 = 0.0;
  for (int j = 0; j <= part.J; ++j)
    for (int i = 1; i <= part.I_max; ++i) {
      const auto& flat = part.points[j][i];
      for (std::size_t o = 0; o < flat.size(); o += 2) {
        const std::vector<std::int64_t> ell{flat[o], flat[o + 1]};
        const double w = 1.0 + std::sqrt(scaled_dist2(U, j, ell));
        const double ratio = w / std::exp2(double(i) * to_double(s_w));
        c1 = std::min(c1, ratio);
        c2 = std::max(c2, ratio);
      }
    }
  CHECK(c1 > 0.0);
  CHECK(c2 / c1 <= std::pow(4.0, std::abs(to_double(s_w))));
}

TEST_CASE("determinism and enumeration guard") {
  const auto a = partition(face_cube(2, 1), 3, 3);
  const auto b = partition(face_cube(2, 1), 3, 3);
  CHECK(a.sizes == b.sizes);
  CHECK(a.points == b.points);
  CHECK_THROWS_AS(partition(face_cube(2, 1), 6, 8, /*cap=*/100), std::length_error);
}

TEST_CASE("model dimensions") {
  CHECK(point_set({0.0, 0.0}).dimension() == 0.0);
  CHECK(face_cube(3, 2).dimension() == 2.0);
  CHECK(cantor_product(1, rat(1, 3), 0).dimension() ==
        doctest::Approx(std::log(2.0) / std::log(3.0)));
  CHECK(cantor_product(2, rat(1, 4), 1).dimension() == doctest::Approx(0.5 + 1.0));
  CHECK_THROWS_AS(cantor_product(1, rat(1, 2), 0), std::invalid_argument);
  CHECK_THROWS_AS(face_cube(2, 3), std::invalid_argument);
}
