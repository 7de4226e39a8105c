#pragma once

#include <iosfwd>
#include <string>

#include "microwidths/boundlab.hpp"
#include "microwidths/dset.hpp"
#include "microwidths/params.hpp"
#include "microwidths/rates.hpp"

namespace microwidths {

/// Thrown on malformed configuration; the CLI maps it to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One experiment: embedding parameters, d-set model, truncation and k-grid.
/// Parsed from flat `key = value` text (rationals as num/den, infinity as
/// `inf`), which round-trips exactly.
struct ExperimentConfig {
  ExtRat p1 = ExtRat::finite(Rational(2));
  ExtRat p2 = ExtRat::finite(Rational(2));
  ExtRat q1 = ExtRat::finite(Rational(2));
  ExtRat q2 = ExtRat::finite(Rational(2));
  Rational delta;
  Rational s_prime;
  int n = 1;
  Rational d;
  DSetModel model;

  int J = 8;
  int I_max = 8;
  std::int64_t k_min = 16;
  std::int64_t k_max = 1024;
  int k_points = 33;
  AllocScheme scheme = AllocScheme::Greedy;
  double tolerance = 0.07;

  EmbeddingParams params() const;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_file(const std::string& path);
std::string serialize_config(const ExperimentConfig& c);

/// The `rate` subcommand's full verdict; serializes to key=value lines that
/// re-parse to an identical report.
struct RateReport {
  RateResult approx;
  RateResult kolmogorov;
  RateResult gelfand;
  std::set<WidthRelation> relations;
};

RateReport make_rate_report(const EmbeddingParams& params);
std::string serialize_rate_report(const RateReport& report);
RateReport parse_rate_report(const std::string& text);

bool operator==(const RateResult& a, const RateResult& b);
bool operator==(const RateReport& a, const RateReport& b);

}  // namespace microwidths
