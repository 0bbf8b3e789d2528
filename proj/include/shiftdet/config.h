#pragma once

#include <optional>
#include <string>
#include <vector>

#include "shiftdet/functions.h"
#include "shiftdet/quadrature.h"
#include "shiftdet/types.h"

namespace shiftdet {

// Shift table {gamma_a, c_a, v_a}; v holds 0-based component indices.
struct ShiftSpec {
  std::vector<cplx> gamma;
  std::vector<double> c;
  std::vector<int> v;

  std::size_t size() const { return gamma.size(); }
  double min_abs_shift() const;
  bool all_gamma_zero() const;
};

struct Numerics {
  std::optional<int> n_interval;  // unset: scaled with x
  int m_loop = 256;
  int m_line = 400;
  std::optional<double> h;        // unset: min(min|c_a|/2, rho)/2
  std::optional<double> rho;      // analyticity margin of F and p; unset for entire functions
  double map_scale = 1.0;
  LoopShape loop_shape = LoopShape::Ellipse;
  LineKind line_kind = LineKind::Tangent;
};

struct Tolerances {
  double r1 = 1e-8;
  double r2 = 1e-8;
  double r3 = 1e-4;
  bool strict_line = false;
  double slope_min = -1.3;
  double slope_max = -0.7;
  double decay_ratio_min = 1.5;
  double decay_ratio_max = 3.0;
};

struct ProblemConfig {
  double a = -1.0;
  double b = 1.0;
  double x = 50.0;
  double c = 1.0;
  FunctionSpec F = FunctionSpec::constant(0.5);
  FunctionSpec p = FunctionSpec::identity();
  ShiftSpec shift;
  int N = 2;
  Numerics numerics;
  Tolerances tolerances;

  // Gauss-Legendre size on [a, b]: explicit value or max(64, ceil(8 x max p' (b-a) / 2pi)).
  int interval_nodes() const;
  int interval_nodes_for(double x_value) const;
  // Loop distance from [a, b].
  double loop_h() const;
  // |lambda - mu| below which kernels switch to their removable-singularity branch.
  double near_diagonal_threshold() const { return 1e-4 * (b - a); }
  double max_phase_derivative() const;

  QuadratureRule interval_rule() const;
  QuadratureRule loop() const;
  QuadratureRule line() const;
};

// a = -1, b = 1, c = 1, x = 50, F = 0.5, p = identity, two-shift sine-kernel shifts.
ProblemConfig standard_config();

// Throws ConfigError on violated constraints; returns non-fatal warnings.
std::vector<std::string> validate(const ProblemConfig& cfg);

}  // namespace shiftdet
