#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace shiftdet::cli {

enum ExitCode : int { kOk = 0, kToleranceFailure = 1, kConfigError = 2, kNumericFailure = 3 };

struct CommandOptions {
  std::string config_path;
  std::string out_dir = ".";
  bool strict_line = false;
  std::vector<double> x_values;
  std::string which;
  std::string command_line;  // echoed into the manifest
};

// Each command maps ConfigError/invalid input to 2, NumericError to 3,
// a missed tolerance to 1. Diagnostics go to `err`.
int cmd_verify(const CommandOptions& opt, std::ostream& out, std::ostream& err);
int cmd_sweep(const CommandOptions& opt, std::ostream& out, std::ostream& err);
int cmd_det(const CommandOptions& opt, std::ostream& out, std::ostream& err);
int cmd_m_vs_m0(const CommandOptions& opt, std::ostream& out, std::ostream& err);

// Geometric grid of `count` points from x_min to x_max inclusive.
std::vector<double> x_range(double x_min, double x_max, int count);

// Reads SHIFTDET_THREADS and caps the OpenMP team; returns the cap applied (0 if none).
int apply_thread_env();

inline constexpr const char* kArtifactVersion = "0.1.0";

}  // namespace shiftdet::cli
