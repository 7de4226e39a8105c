#include <doctest.h>

#include <sstream>

#include "microwidths/commands.hpp"
#include "microwidths/config.hpp"

using namespace microwidths;

namespace {

ExperimentConfig sample_config() {
  std::istringstream in(
      "# acceptance-1 style experiment\n"
      "p1 = 2\np2 = 2\n"
      "delta = 6/5\ns_prime = 1\n"
      "n = 2\nset = facecube\nm = 1\n"
      "J = 6\nI_max = 6\nk_min = 16\nk_max = 256\nk_points = 17\n"
      "scheme = greedy\ntolerance = 0.07\n");
  return parse_config(in);
}

}  // namespace

TEST_CASE("config parsing, defaults and derived parameters") {
  const auto c = sample_config();
  CHECK(c.p1 == ExtRat::finite(Rational(2)));
  CHECK(c.q1 == c.p1);  // q defaults to p
  CHECK(c.delta == rat(6, 5));
  CHECK(c.d == Rational(1));
  const auto params = c.params();
  CHECK(params.delta == rat(6, 5));
  CHECK(params.s_prime == Rational(1));
  CHECK(params.rate_min() == rat(1, 2));
  CHECK(is_compact(params));
}

TEST_CASE("config serialization round-trips") {
  const auto c = sample_config();
  std::istringstream in(serialize_config(c));
  const auto again = parse_config(in);
  CHECK(serialize_config(again) == serialize_config(c));
}

TEST_CASE("config rejects malformed input") {
  const auto reject = [](const std::string& text) {
    std::istringstream in(text);
    CHECK_THROWS_AS(parse_config(in), ConfigError);
  };
  reject("p1 = 2\n");                      // missing keys
  reject("p1 = x\np2 = 2\ndelta = 1\ns_prime = 1\nn = 2\n");
  reject("p1 = 2\np2 = 2\ndelta = 1\ns_prime = 1\nn = 2\nbogus = 1\n");
  reject("p1 = 2\np2 = 2\ndelta = 1\ns_prime = 1\nn = 2\nscheme = magic\n");
  reject("p1 = 2\np2 = 2\ndelta = 1\ns_prime = 1\nn = 2\nk_min = 9\nk_max = 3\n");
  reject("p1 = 2\np2 = 2\ndelta = 1\ns_prime = 1\nn = 2\nset = cantor\ntheta = 1/3\n");  // no d
  reject("p1 = 2\np2 = 2\ndelta = 1\ns_prime = 1\nn = 2\nd = 3\n");
  reject("p1 = 2\np2 = 2\ndelta = 1\ns_prime = 1\nn = 2\np1 = 3\n");  // duplicate
}

TEST_CASE("rational and infinity tokens round-trip bit-exactly") {
  std::istringstream in(
      "p1 = 7/3\np2 = inf\ndelta = 22/7\ns_prime = 355/113\nn = 3\nset = facecube\nm = 2\n");
  const auto c = parse_config(in);
  CHECK(c.p1 == ExtRat::finite(rat(7, 3)));
  CHECK(c.p2.is_infinite());
  CHECK(to_string(c.delta) == "22/7");
  std::istringstream in2(serialize_config(c));
  CHECK(parse_config(in2).s_prime == rat(355, 113));
}

TEST_CASE("rate reports round-trip through their serialization") {
  const auto check_roundtrip = [](const ExtRat& p1, const ExtRat& p2, const Rational& delta,
                                  const Rational& sp) {
    SpaceParams src{p1, p1, delta + Rational(2) * (p1.reciprocal() - p2.reciprocal()), sp};
    SpaceParams tgt{p2, p2, Rational(0), Rational(0)};
    const auto report = make_rate_report(derive_params(src, tgt, 2, Rational(1)));
    const auto again = parse_rate_report(serialize_rate_report(report));
    CHECK(again == report);
    CHECK(serialize_rate_report(again) == serialize_rate_report(report));
  };
  check_roundtrip(ExtRat::finite(Rational(2)), ExtRat::finite(Rational(2)), Rational(1),
                  Rational(2));  // Exact everywhere
  check_roundtrip(ExtRat::finite(rat(4, 3)), ExtRat::finite(Rational(4)), rat(1, 8),
                  rat(1, 8));  // boundary -> Open with notes
  check_roundtrip(ExtRat::finite(rat(4, 3)), ExtRat::finite(Rational(4)), rat(1, 9),
                  rat(1, 5));  // TwoSided region
  check_roundtrip(ExtRat::finite(Rational(2)), ExtRat::finite(Rational(1)), rat(2, 5),
                  Rational(3));  // NotCompact
}

TEST_CASE("run_rate and run_count execute on a small config") {
  const auto c = sample_config();
  std::ostringstream out;
  CHECK(run_rate(c, out, "") == kExitOk);
  CHECK(out.str().find("kappa=1/2") != std::string::npos);

  ExperimentConfig counting = c;
  counting.J = 4;
  counting.I_max = 4;
  std::ostringstream out2;
  CHECK(run_count(counting, out2, "") == kExitOk);
  CHECK(out2.str().find("spread") != std::string::npos);
}

TEST_CASE("verify selftest hits the synthetic exponent to 1e-9") {
  ExperimentConfig c = sample_config();
  c.k_min = 16;
  c.k_max = 65536;
  c.k_points = 40;
  std::ostringstream out;
  CHECK(run_verify(c, out, "", /*selftest=*/true) == kExitOk);
  CHECK(out.str().find("PASS") != std::string::npos);
}

TEST_CASE("k-grid construction") {
  const auto ks = k_grid(16, 4096, 9);
  CHECK(ks.front() == 16);
  CHECK(ks.back() == 4096);
  for (std::size_t i = 1; i < ks.size(); ++i) CHECK(ks[i] > ks[i - 1]);
}
