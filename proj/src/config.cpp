#include "shiftdet/config.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "shiftdet/kernels.h"

namespace shiftdet {

double ShiftSpec::min_abs_shift() const {
  double m = std::numeric_limits<double>::infinity();
  for (double ca : c) m = std::min(m, std::abs(ca));
  return m;
}

bool ShiftSpec::all_gamma_zero() const {
  return std::all_of(gamma.begin(), gamma.end(), [](cplx g) { return g == cplx(0.0); });
}

double ProblemConfig::max_phase_derivative() const {
  double best = 0.0;
  constexpr int kSamples = 201;
  for (int i = 0; i < kSamples; ++i) {
    const double t = a + (b - a) * i / (kSamples - 1);
    best = std::max(best, std::abs(p.derivative(t)));
  }
  return best;
}

int ProblemConfig::interval_nodes_for(double x_value) const {
  if (numerics.n_interval) return *numerics.n_interval;
  const double periods = 8.0 * x_value * max_phase_derivative() * (b - a) / (2.0 * kPi);
  return std::max(64, static_cast<int>(std::ceil(periods - 1e-9)));
}

int ProblemConfig::interval_nodes() const { return interval_nodes_for(x); }

double ProblemConfig::loop_h() const {
  if (numerics.h) return *numerics.h;
  const double strip = 0.5 * shift.min_abs_shift();
  const double margin = numerics.rho ? std::min(strip, *numerics.rho) : strip;
  return 0.5 * margin;
}

QuadratureRule ProblemConfig::interval_rule() const { return gauss_legendre_rule(interval_nodes(), a, b); }

QuadratureRule ProblemConfig::loop() const {
  return loop_rule(a, b, loop_h(), numerics.m_loop, numerics.loop_shape);
}

QuadratureRule ProblemConfig::line() const {
  return numerics.line_kind == LineKind::Tangent ? compactified_line_rule(numerics.m_line, numerics.map_scale)
                                                 : truncated_line_rule(numerics.m_line, numerics.map_scale);
}

ProblemConfig standard_config() {
  ProblemConfig cfg;
  cfg.shift = gsk_shift_spec(cfg.c);
  return cfg;
}

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

}  // namespace

std::vector<std::string> validate(const ProblemConfig& cfg) {
  std::vector<std::string> warnings;
  if (!(cfg.a < cfg.b)) fail("interval: need a < b");
  if (!(cfg.x > 0.0)) fail("x must be positive");
  if (!(cfg.c > 0.0)) fail("c must be positive");
  if (cfg.N != 2) fail("N must be 2 for the sine-kernel vector pair");

  const auto& s = cfg.shift;
  if (s.gamma.size() != static_cast<std::size_t>(cfg.N) || s.c.size() != s.gamma.size() ||
      s.v.size() != s.gamma.size()) {
    fail("shifts: gamma, c and v must all have length N");
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.c[i] == 0.0 || !std::isfinite(s.c[i])) fail("shifts: every c_a must be a nonzero real");
    if (s.v[i] < 0 || s.v[i] >= cfg.N) fail("shifts: every v_a must lie in 1..N");
  }

  const auto& num = cfg.numerics;
  if (num.n_interval && *num.n_interval < 2) fail("numerics.n_interval must be >= 2");
  if (num.m_loop < 8 || num.m_loop % 2 != 0) fail("numerics.m_loop must be even and >= 8");
  if (num.m_line < 16) fail("numerics.m_line must be >= 16");
  if (num.h && !(*num.h > 0.0)) fail("numerics.h must be positive");
  if (num.rho && !(*num.rho > 0.0)) fail("numerics.rho must be positive");
  if (!(num.map_scale > 0.0)) fail("numerics.map_scale must be positive");

  const double h = cfg.loop_h();
  const double strip = 0.5 * s.min_abs_shift();
  if (!(h < strip)) {
    std::ostringstream msg;
    msg << "loop contour violates the strip constraint |Im z| < min|c_a|/2: h = " << h
        << " must be < " << strip;
    fail(msg.str());
  }
  if (num.rho && !(h < *num.rho)) fail("numerics.h must stay inside the analyticity margin rho");

  // |F| < 1 on the closed neighbourhood of radius 2h around [a, b].
  double max_abs_f = 0.0;
  constexpr int kNx = 81, kNy = 21;
  const double r = 2.0 * h;
  for (int i = 0; i < kNx; ++i) {
    for (int j = 0; j < kNy; ++j) {
      const double xr = cfg.a - r + (cfg.b - cfg.a + 2.0 * r) * i / (kNx - 1);
      const double yi = -r + 2.0 * r * j / (kNy - 1);
      const double dx = xr < cfg.a ? cfg.a - xr : (xr > cfg.b ? xr - cfg.b : 0.0);
      if (std::hypot(dx, yi) > r * (1.0 + 1e-12)) continue;
      max_abs_f = std::max(max_abs_f, std::abs(cfg.F.value(cplx(xr, yi))));
    }
  }
  if (!(max_abs_f < 1.0)) {
    std::ostringstream msg;
    msg << "F: |F| must stay below 1 near [a, b]; found " << max_abs_f;
    fail(msg.str());
  }
  if (max_abs_f > 0.9) {
    std::ostringstream msg;
    msg << "F: max |F| = " << max_abs_f << " exceeds 0.9; expect slow convergence";
    warnings.push_back(msg.str());
  }

  constexpr int kSamples = 201;
  for (int i = 0; i < kSamples; ++i) {
    const double t = cfg.a + (cfg.b - cfg.a) * i / (kSamples - 1);
    const cplx dp = cfg.p.derivative(t);
    if (!(dp.real() > 0.0) || std::abs(dp.imag()) > 1e-12 * std::abs(dp.real())) {
      fail("p: p' must be real and positive on [a, b]");
    }
    if (std::abs(cfg.p.value(t).imag()) > 1e-12 * (1.0 + std::abs(cfg.p.value(t)))) {
      fail("p: p must be real on [a, b]");
    }
  }
  return warnings;
}

}  // namespace shiftdet
