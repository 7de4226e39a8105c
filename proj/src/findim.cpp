#include "microwidths/findim.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace microwidths {

namespace {

constexpr const char* kRankZero = "PS4";

OrderValue make(double v, Exactness e, std::string src) { return {v, e, std::move(src)}; }

void check_index(std::int64_t N, std::int64_t k) {
  if (N < 0) throw std::invalid_argument("width catalog: N must be >= 0");
  if (k < 1) throw std::invalid_argument("width catalog: k must be >= 1");
}

double power(double base, double expo) { return std::pow(base, expo); }

// min(1, N^e k^{-1/2})
double kashin_model(double N, double e, double k) {
  return std::min(1.0, power(N, e) / std::sqrt(k));
}

// d_k(id, l_p^N -> l_inf^N) model for 2 <= p < inf (window-free in k <= N).
double log_window_model(double N, double k, double inv_p) {
  if (k <= 1) return 1.0;
  const double q = std::log1p(N / (k - 1)) / (k - 1);
  return std::min(1.0, power(q, inv_p));
}

// c_k model of gnupp: min(1, (ln(N/(k-1)) + 1)/(k-1))^expo.
double gnupp_model(double N, double k, double expo) {
  if (k <= 1) return 1.0;
  const double q = (std::log(N / (k - 1)) + 1.0) / (k - 1);
  return power(std::min(1.0, q), expo);
}

}  // namespace

OrderValue exact_approx_pp(const ExtRat& p1, const ExtRat& p2, std::int64_t N, std::int64_t k) {
  check_index(N, k);
  const Rational u1 = p1.reciprocal();
  const Rational u2 = p2.reciprocal();
  if (!(u2 > u1)) throw std::invalid_argument("exact_approx_pp: requires p2 < p1");
  if (k > N) return make(0.0, Exactness::Exact, kRankZero);
  return make(power(double(N - k + 1), to_double(u2 - u1)), Exactness::Exact, "an2");
}

OrderValue exact_gelfand_pp(const ExtRat& p1, const ExtRat& p2, std::int64_t N, std::int64_t k) {
  check_index(N, k);
  const Rational u1 = p1.reciprocal();
  const Rational u2 = p2.reciprocal();
  if (!(u2 >= u1)) throw std::invalid_argument("exact_gelfand_pp: requires p2 <= p1");
  if (k > N) return make(0.0, Exactness::Exact, kRankZero);
  return make(power(double(N - k + 1), to_double(u2 - u1)), Exactness::Exact, "gn021ify");
}

namespace {

OrderValue approx_width(const ExtRat& p1, const ExtRat& p2, std::int64_t N, std::int64_t k,
                        std::optional<double> lambda) {
  const Rational u1 = p1.reciprocal();
  const Rational u2 = p2.reciprocal();
  const Rational half(1, 2);

  if (u2 > u1) return exact_approx_pp(p1, p2, N, k);

  if (u1 >= 1 && p2.is_infinite()) {
    // Only the lambda-parametrized bounds exist here (an1(ii) excludes (1, inf)).
    const double lam = lambda.value_or(0.5);
    if (!(lam > 0.0 && lam < 1.0)) throw std::invalid_argument("order_width: lambda must be in (0,1)");
    const std::string src = "an1inf(i) lambda=" + std::to_string(lam);
    if (double(k) <= power(double(N), lam)) return make(1.0, Exactness::OrderUpper, src);
    return make(1.0 / std::sqrt(double(k)), Exactness::OrderUpper, src);
  }

  if (u2 >= half || u1 <= half) {
    // p1 <= p2 <= 2 or 2 <= p1 <= p2
    if (4 * k <= N) return make(1.0, Exactness::OrderTwoSided, "an1(i)");
    return make(1.0, Exactness::OrderUpper, "an1(i)+PS1");
  }

  // 0 < p1 < 2 < p2, t = min(p1', p2) finite
  const Rational v1 = u1 >= 1 ? Rational(0) : 1 - u1;  // 1/p1'
  const Rational inv_t = v1 > u2 ? v1 : u2;
  const double it = to_double(inv_t);
  if (4 * k <= N)
    return make(kashin_model(double(N), it, double(k)), Exactness::OrderTwoSided,
                u1 > 1 ? "an1(iii)" : "an1(ii)");
  if (std::log(double(k)) <= 2.0 * it * std::log(double(N)))
    return make(1.0, Exactness::OrderUpper, "an3");
  return make(kashin_model(double(N), it, double(k)), Exactness::OrderUpper, "an3");
}

OrderValue kolmogorov_width(const ExtRat& p1_in, const ExtRat& p2, std::int64_t N, std::int64_t k) {
  const Rational u2 = p2.reciprocal();
  // Quasi-Banach sources reduce to p1 = min(1, p2) (knify(iii)).
  ExtRat p1 = p1_in;
  std::string via;
  if (!p1.is_infinite() && p1.value() < 1 && u2 < p1.reciprocal()) {
    p1 = p2 < ExtRat::finite(Rational(1)) ? p2 : ExtRat::finite(Rational(1));
    via = "+knify(iii)";
  }
  const Rational u1 = p1.reciprocal();
  const Rational half(1, 2);

  if (u2 > u1)
    return make(power(double(N - k + 1), to_double(u2 - u1)), Exactness::OrderUpper,
                "an2+(2.3)" + via);

  if (u1 == u2) {
    if (u1 < half) return make(1.0, Exactness::OrderTwoSided, "kn1(iii)" + via);  // 2 < p1 = p2, k <= N
    if (4 * k <= N) return make(1.0, Exactness::OrderTwoSided, "kn1(i)" + via);
    return make(1.0, Exactness::OrderUpper, "kn1(i)+PS1" + via);
  }

  if (u2 >= half) {  // p1 < p2 <= 2
    if (4 * k <= N) return make(1.0, Exactness::OrderTwoSided, "kn1(i)" + via);
    return make(1.0, Exactness::OrderUpper, "kn1(i)+PS1" + via);
  }

  if (u1 <= half) {  // 2 <= p1 < p2
    if (!p2.is_infinite()) {
      const double xi = kashin_model(double(N), to_double(u2), double(k));
      const double theta = to_double((u1 - u2) / (half - u2));
      return make(power(xi, theta), Exactness::OrderTwoSided, "kn1(iv)" + via);
    }
    return make(log_window_model(double(N), double(k), to_double(u1)), Exactness::OrderTwoSided,
                "knify(ii)" + via);
  }

  // 1 <= p1 < 2 < p2
  if (p2.is_infinite()) {
    const double v = std::pow(std::log(4.0 * std::exp(1.0) * double(N) / double(k)), 1.5) /
                     std::sqrt(double(k));
    return make(std::min(1.0, v), Exactness::OrderUpper, "knifyupp12" + via);
  }
  const double iu2 = to_double(u2);
  if (4 * k <= N)
    return make(kashin_model(double(N), iu2, double(k)), Exactness::OrderTwoSided, "kn1(ii)" + via);
  if (std::log(double(k)) <= 2.0 * iu2 * std::log(double(N)))
    return make(1.0, Exactness::OrderUpper, "kn3" + via);
  return make(kashin_model(double(N), iu2, double(k)), Exactness::OrderUpper, "kn3" + via);
}

OrderValue gelfand_width(const ExtRat& p1, const ExtRat& p2, std::int64_t N, std::int64_t k) {
  const Rational u1 = p1.reciprocal();
  const Rational u2 = p2.reciprocal();
  const Rational half(1, 2);

  if (u2 >= u1) return exact_gelfand_pp(p1, p2, N, k);

  if (u1 <= half) {  // 2 <= p1 < p2
    if (4 * k <= N) return make(1.0, Exactness::OrderTwoSided, "gn1(i)");
    return make(1.0, Exactness::OrderUpper, "gn1(i)+PS1");
  }

  if (u1 >= 1) {  // 0 < p1 <= 1 < p2
    if (u2 < half)
      return make(gnupp_model(double(N), double(k), to_double(u1 - half)), Exactness::OrderUpper,
                  "gnupp(i)");
    return make(gnupp_model(double(N), double(k), to_double(u1 - u2)), Exactness::OrderTwoSided,
                "gnupp(ii)");
  }

  // 1 < p1 < 2, p1 < p2
  const Rational v1 = 1 - u1;  // 1/p1'
  const double dv1 = to_double(v1);
  if (u2 < half) {  // p2 > 2
    if (4 * k <= N)
      return make(kashin_model(double(N), dv1, double(k)), Exactness::OrderTwoSided, "gn1(ii)");
    if (std::log(double(k)) <= 2.0 * dv1 * std::log(double(N)))
      return make(1.0, Exactness::OrderUpper, "kn3-dual");
    return make(kashin_model(double(N), dv1, double(k)), Exactness::OrderUpper, "kn3-dual");
  }
  // 1 < p1 < p2 <= 2
  const Rational v2 = u2 >= 1 ? Rational(0) : 1 - u2;
  const double xi = kashin_model(double(N), dv1, double(k));
  const double theta1 = to_double((v2 - v1) / (half - v1));
  return make(power(xi, theta1), Exactness::OrderTwoSided, "gn1(iv)");
}

}  // namespace

OrderValue order_width(SKind kind, const ExtRat& p1, const ExtRat& p2, std::int64_t N,
                       std::int64_t k, std::optional<double> lambda) {
  check_index(N, k);
  if (k > N) return make(0.0, Exactness::Exact, kRankZero);
  switch (kind) {
    case SKind::Approx: return approx_width(p1, p2, N, k, lambda);
    case SKind::Kolmogorov: return kolmogorov_width(p1, p2, N, k);
    case SKind::Gelfand: return gelfand_width(p1, p2, N, k);
  }
  throw std::logic_error("order_width: bad kind");
}

OrderValue order_width_lower(SKind kind, const ExtRat& p1_in, const ExtRat& p2, std::int64_t N,
                             std::int64_t k) {
  check_index(N, k);
  if (k > N) return make(0.0, Exactness::Exact, kRankZero);
  const OrderValue none = make(0.0, Exactness::OrderLower, "none");

  ExtRat p1 = p1_in;
  std::string via;
  if (kind == SKind::Kolmogorov && !p1.is_infinite() && p1.value() < 1 &&
      p2.reciprocal() < p1.reciprocal()) {
    p1 = p2 < ExtRat::finite(Rational(1)) ? p2 : ExtRat::finite(Rational(1));
    via = "+knify(iii)";
  }

  const Rational u1 = p1.reciprocal();
  const Rational u2 = p2.reciprocal();
  const Rational half(1, 2);

  switch (kind) {
    case SKind::Approx: {
      if (u2 > u1) return exact_approx_pp(p1, p2, N, k);
      if (u1 >= 1 && p2.is_infinite()) {
        if (2 * k <= N)
          return make(1.0 / std::sqrt(double(k)), Exactness::OrderLower, "an1inf(ii)");
        return none;
      }
      if (u2 >= half || u1 <= half) {
        if (4 * k <= N) return make(1.0, Exactness::OrderTwoSided, "an1(i)");
        return none;
      }
      if (4 * k <= N) {
        const Rational v1 = u1 >= 1 ? Rational(0) : 1 - u1;
        const Rational inv_t = v1 > u2 ? v1 : u2;
        return make(kashin_model(double(N), to_double(inv_t), double(k)), Exactness::OrderTwoSided,
                    u1 > 1 ? "an1(iii)" : "an1(ii)");
      }
      return none;
    }
    case SKind::Kolmogorov: {
      if (u2 > u1) {
        // window 2k <= N keeps the constant-1 model below the an2 upper bound
        if (2 * k <= N)
          return make(power(double(k), to_double(u2 - u1)), Exactness::OrderLower,
                      "kn021ify" + via);
        return none;
      }
      if (u1 == u2) {
        if (u1 < half) return make(1.0, Exactness::OrderTwoSided, "kn1(iii)" + via);
        if (4 * k <= N) return make(1.0, Exactness::OrderTwoSided, "kn1(i)" + via);
        return none;
      }
      if (u2 >= half) {
        if (4 * k <= N) return make(1.0, Exactness::OrderTwoSided, "kn1(i)" + via);
        return none;
      }
      if (u1 <= half) {
        if (!p2.is_infinite()) {
          const double xi = kashin_model(double(N), to_double(u2), double(k));
          return make(power(xi, to_double((u1 - u2) / (half - u2))), Exactness::OrderTwoSided,
                      "kn1(iv)" + via);
        }
        return make(log_window_model(double(N), double(k), to_double(u1)), Exactness::OrderTwoSided,
                    "knify(ii)" + via);
      }
      if (p2.is_infinite()) {
        if (4 * k <= N)
          return make(1.0 / std::sqrt(double(k)), Exactness::OrderLower, "knify(i)" + via);
        return none;
      }
      if (4 * k <= N)
        return make(kashin_model(double(N), to_double(u2), double(k)), Exactness::OrderTwoSided,
                    "kn1(ii)" + via);
      return none;
    }
    case SKind::Gelfand: {
      if (u2 >= u1) return exact_gelfand_pp(p1, p2, N, k);
      if (u1 <= half) {
        if (4 * k <= N) return make(1.0, Exactness::OrderTwoSided, "gn1(i)");
        return none;
      }
      if (u1 >= 1) {
        if (2 * k > N) return none;
        if (u2 <= half)
          return make(power(double(k), to_double(half - u1)), Exactness::OrderLower, "gnlow(i)");
        return make(power(double(k), to_double(u2 - u1)), Exactness::OrderLower, "gnlow(ii)");
      }
      const Rational v1 = 1 - u1;
      if (u2 < half) {
        if (4 * k <= N)
          return make(kashin_model(double(N), to_double(v1), double(k)), Exactness::OrderTwoSided,
                      "gn1(ii)");
        return none;
      }
      const Rational v2 = u2 >= 1 ? Rational(0) : 1 - u2;
      const double xi = kashin_model(double(N), to_double(v1), double(k));
      return make(power(xi, to_double((v2 - v1) / (half - v1))), Exactness::OrderTwoSided,
                  "gn1(iv)");
    }
  }
  throw std::logic_error("order_width_lower: bad kind");
}

std::vector<double> diagonal_snumbers(std::vector<double> sigma) {
  for (double v : sigma)
    if (v < 0) throw std::invalid_argument("diagonal_snumbers: entries must be nonnegative");
  std::sort(sigma.begin(), sigma.end(), std::greater<double>());
  return sigma;
}

std::vector<double> hilbert_snumbers(const std::vector<std::vector<double>>& matrix) {
  const std::size_t rows = matrix.size();
  if (rows == 0) return {};
  const std::size_t cols = matrix[0].size();
  Eigen::MatrixXd m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (matrix[r].size() != cols)
      throw std::invalid_argument("hilbert_snumbers: ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = matrix[r][c];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  return std::vector<double>(sv.data(), sv.data() + sv.size());
}

std::string to_string(SKind kind) {
  switch (kind) {
    case SKind::Approx: return "a";
    case SKind::Kolmogorov: return "d";
    case SKind::Gelfand: return "c";
  }
  return "?";
}

}  // namespace microwidths
