#pragma once

#include <iosfwd>
#include <string>

#include "microwidths/config.hpp"

namespace microwidths {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitConfigError = 2;

/// Subcommand bodies; `out_dir` empty means no files are written. All return
/// process exit codes (0 ok, 1 verification failure, 2 config error).
int run_rate(const ExperimentConfig& config, std::ostream& out, const std::string& out_dir);
int run_verify(const ExperimentConfig& config, std::ostream& out, const std::string& out_dir,
               bool selftest = false, bool saturation = false);
int run_count(const ExperimentConfig& config, std::ostream& out, const std::string& out_dir);
int run_bound(const ExperimentConfig& config, std::ostream& out, const std::string& out_dir);
int run_oracle(const ExperimentConfig& config, std::ostream& out, const std::string& out_dir);

/// Geometric k-grid between k_min and k_max (inclusive, deduplicated).
std::vector<std::int64_t> k_grid(std::int64_t k_min, std::int64_t k_max, int points);

}  // namespace microwidths
