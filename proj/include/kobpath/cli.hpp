#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace kobpath {

// Exit codes: 0 pass/success, 1 property verdict fail, 2 input error,
// 3 numerical error (non-convergence).
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerdictFail = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitNumericalError = 3;

struct RunConfig {
  std::string command;  // metric | distance | reparam | verify-ag |
                        // verify-ca | corollary-a | corollary-b | royden |
                        // demo
  std::string input_path;
  std::string output_dir = "out";
  std::optional<double> quad_tol;
  std::optional<double> eps_speed;
  std::optional<double> eps_inv;
  std::optional<double> tol;
  std::optional<int> n_grid;
  std::optional<int> n_out;
  std::optional<double> lambda;
  std::optional<double> kappa;
  std::uint64_t seed = 0;
};

/// Executes the requested pipeline, writes report.json (and sigma.csv /
/// slack.csv where applicable) under output_dir, and returns the exit code.
int run(const RunConfig& config);

}  // namespace kobpath
