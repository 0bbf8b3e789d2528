#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "shiftdet/config.h"
#include "shiftdet/determinants.h"
#include "shiftdet/types.h"

namespace shiftdet {

// Fewer usable sweep rows than a slope fit needs.
class InsufficientData : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct IdentityReport {
  DetResult det_V;
  DetResult det_Vtilde;
  DetResult det_W;
  DetResult det_M_loop;
  DetResult det_N_line;
  cplx chi_det_tilde{1.0, 0.0};  // det(I + V~) cached by the chi solve
  double r1 = 0.0;  // |det V - det V~ det W| / |det V|
  double r2 = 0.0;  // |det W - det M| / |det W|
  double r3 = 0.0;  // |det M - det N| / max(|det M|, 1e-30)
  // Residual is meaningful when the deltas it depends on are below 0.1 * its tolerance.
  bool r1_meaningful = false;
  bool r2_meaningful = false;
  bool r3_meaningful = false;
  int n_interval = 0;
  int m_loop = 0;
  int m_line = 0;
  double h = 0.0;
  std::vector<std::string> warnings;
};

// det_J(I+V), det_J(I+V~) det_J(I+W), det_loop(I+M), det_line(I+N) and their residuals.
// Throws ConfigError when the loop leaves the strip |Im z| < min|c_a|/2.
IdentityReport verify_factorization(const ProblemConfig& cfg, ExecPolicy policy = ExecPolicy::Serial);

// det_line(I+N) at a given line size, reusing one chi solve for several sizes.
std::vector<DetResult> line_determinants(const ProblemConfig& cfg, std::span<const int> m_line_sizes,
                                         ExecPolicy policy = ExecPolicy::Serial);

struct SweepRow {
  double x = 0.0;
  cplx ratio{1.0, 0.0};  // det(I+S) / det(I+S~)
  cplx limit{1.0, 0.0};  // det_loop(I+U+) det_loop(I+U-)
  double err = 0.0;      // |ratio / limit - 1|
  double conv_delta = 0.0;  // largest convergence delta among the row's determinants
  bool valid = true;
  int n = 0;
  DetResult det_S;
  DetResult det_S_tilde;
};

struct LimitResult {
  DetResult u_plus;
  DetResult u_minus;
  cplx value{1.0, 0.0};
};

// det_loop(I+U+) det_loop(I+U-); depends on F, [a, b], c and the loop only.
LimitResult asymptotic_limit(const ProblemConfig& cfg, ExecPolicy policy = ExecPolicy::Serial);

// One row per x (ascending), rows computed concurrently under ExecPolicy::Parallel.
// The interval resolution follows interval_nodes_for(x) unless fixed in the config.
std::vector<SweepRow> asymptotic_sweep(const ProblemConfig& cfg, std::span<const double> x_values,
                                       ExecPolicy policy = ExecPolicy::Serial);

// OLS slope of ln err against ln x over valid rows with err > 10 conv_delta.
// Throws InsufficientData with fewer than 4 such rows.
double fit_decay_slope(std::span<const SweepRow> rows);

struct MvsM0Row {
  double x = 0.0;
  DetResult det_M;
  DetResult det_M0;
  double diff = 0.0;  // |det M - det M0|
};

// det_loop(I+M) against det_loop(I+M0) for the two-shift sine-kernel data.
std::vector<MvsM0Row> m_vs_m0(const ProblemConfig& cfg, std::span<const double> x_values,
                              ExecPolicy policy = ExecPolicy::Serial);

// err(x) / err(next x) for consecutive rows with x >= x_min; the next x must be 2x.
std::vector<double> doubling_ratios(std::span<const double> xs, std::span<const double> errs, double x_min);

}  // namespace shiftdet
