// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "shiftdet/determinants.h"
#include "shiftdet/experiments.h"
#include "shiftdet/kernels.h"
#include "shiftdet/operator_kernels.h"
#include "shiftdet/rhp.h"

using namespace shiftdet;

namespace {

// Pinned tolerances
constexpr double kResidualTol = 1e-8;
constexpr double kLineTol = 1e-4;
constexpr double kRoundoffFloor = 1e-12;
constexpr double kFactorizationSeconds = 30.0;
constexpr double kSweepSeconds = 300.0;
constexpr double kSlopeMin = -1.3;
constexpr double kSlopeMax = -0.7;
constexpr double kRatioMin = 1.5;
constexpr double kRatioMax = 3.0;
constexpr double kAlphaTol = 1e-10;
constexpr double kInverseTol = 1e-9;
constexpr double kBoundedSpread = 2.0;
constexpr double kJumpTol = 1e-2;
constexpr double kJumpWrongFraction = 0.1;
constexpr double kTrivialTol = 1e-12;
constexpr double kDeltaTol = 1e-9;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& measured) {
  if (!pass) ++failures;
  std::printf("%s criterion %d: %s [%s]\n", pass ? "PASS" : "FAIL", id, what.c_str(), measured.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

std::string fmt(const char* f, double a, double b, double c) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-30); }

ProblemConfig nonintegrable() {
  ProblemConfig cfg = standard_config();
  cfg.shift.gamma = {0.7, 0.4};
  cfg.shift.c = {-1.0, 1.0};
  cfg.shift.v = {1, 0};
  return cfg;
}

double max_delta(const IdentityReport& r) {
  return std::max({r.det_V.convergence_delta, r.det_Vtilde.convergence_delta, r.det_W.convergence_delta,
                   r.det_M_loop.convergence_delta});
}

}  // namespace

int main() {
  const ProblemConfig cfg = standard_config();

  // 1
  auto t0 = Clock::now();
  const IdentityReport rep = verify_factorization(cfg, ExecPolicy::Serial);
  const double t1 = seconds_since(t0);
  report(1, rep.r1 < kResidualTol && rep.r2 < kResidualTol && t1 < kFactorizationSeconds,
         "factorization identity, r1 and r2 < 1e-8 in < 30 s",
         fmt("r1=%.3e r2=%.3e t=%.2fs", rep.r1, rep.r2, t1));

  // 2
  {
    const int coarse[] = {16, 32};
    const int fine[] = {400, 800};
    const auto lc = line_determinants(cfg, coarse);
    const auto lf = line_determinants(cfg, fine);
    const cplx m = rep.det_M_loop.value;
    const double c16 = rel(lc[0].value, m), c32 = rel(lc[1].value, m);
    const double f400 = rel(lf[0].value, m), f800 = rel(lf[1].value, m);
    const bool fine_ok = f800 < f400 || (f400 < kRoundoffFloor && f800 < kRoundoffFloor);
    report(2, rep.r3 < kLineTol && c32 < c16 && fine_ok,
           "line representation, r3 < 1e-4 at m_line=400 and decreasing under doubling",
           fmt("r3=%.3e; m=16->32: %.3e->", rep.r3, c16) + fmt("%.3e; m=400->800: %.3e->", c32, f400) +
               fmt("%.3e", f800));
  }

  // 3
  const IdentityReport ni = verify_factorization(nonintegrable(), ExecPolicy::Serial);
  report(3, ni.r1 < kResidualTol && ni.r2 < kResidualTol, "non-integrable shifts, r1 and r2 < 1e-8",
         fmt("r1=%.3e r2=%.3e", ni.r1, ni.r2));

  // 4
  const std::vector<double> xs = {25.0, 50.0, 100.0, 200.0, 400.0};
  t0 = Clock::now();
  const auto rows = asymptotic_sweep(cfg, xs, ExecPolicy::Serial);
  const LimitResult lim = asymptotic_limit(cfg, ExecPolicy::Serial);
  const double t4 = seconds_since(t0);
  {
    bool decreasing = true;
    std::string errs;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      errs += fmt(i ? ",%.3e" : "%.3e", rows[i].err);
      if (i > 0 && !(rows[i].err < rows[i - 1].err)) decreasing = false;
    }
    double slope = 0.0;
    bool fitted = true;
    try {
      slope = fit_decay_slope(rows);
    } catch (const InsufficientData&) {
      fitted = false;
    }
    report(4, decreasing && fitted && slope >= kSlopeMin && slope <= kSlopeMax && t4 < kSweepSeconds,
           "large-x rate, err strictly decreasing, slope in [-1.3, -0.7], < 5 min",
           "err=" + errs + fmt(" slope=%.4f t=%.2fs", slope, t4));
  }

  // 5
  {
    const auto mm = m_vs_m0(cfg, xs, ExecPolicy::Serial);
    std::vector<double> diffs;
    bool decreasing = true;
    for (std::size_t i = 0; i < mm.size(); ++i) {
      diffs.push_back(mm[i].diff);
      if (i > 0 && !(mm[i].diff < mm[i - 1].diff)) decreasing = false;
    }
    const auto ratios = doubling_ratios(xs, diffs, 100.0);
    bool in_band = !ratios.empty();
    std::string shown;
    for (double r : ratios) {
      in_band = in_band && r >= kRatioMin && r <= kRatioMax;
      shown += fmt(shown.empty() ? "%.4f" : ",%.4f", r);
    }
    report(5, decreasing && in_band, "|det(I+M) - det(I+M0)| decreasing, ratios in [1.5, 3] for x >= 100",
           "ratios=" + shown);
  }

  // 6
  {
    const AlphaEvaluator alpha = make_alpha(cfg);
    const cplx nu = std::log(1.5) / kTwoPiI;
    double worst = 0.0;
    for (cplx z : cfg.loop().nodes()) {
      const cplx exact = std::exp(nu * std::log((z - cfg.a) / (z - cfg.b)));
      worst = std::max(worst, std::abs(alpha(z) - exact));
    }
    report(6, worst < kAlphaTol, "alpha closed form on all loop nodes to 1e-10", fmt("max err=%.3e", worst));
  }

  // 7
  {
    const ChiSolution chi = solve_chi(cfg, gsk_vector_pair(cfg));
    const Matrix id = Matrix::Identity(2, 2);
    std::mt19937 gen(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double inv = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double t = 2.0 * kPi * u(gen);
      const double r = i < 10 ? 1.0 + 0.5 * u(gen) : 2.0 + 30.0 * u(gen);
      cplx z(r * std::cos(t), r * std::sin(t));
      if (std::abs(z.imag()) < 0.15) z += cplx(0.0, z.imag() >= 0.0 ? 0.15 : -0.15);
      inv = std::max(inv, (chi.chi(z) * chi.chi_inv(z) - id).norm());
    }
    double lo = 1e300, hi = 0.0;
    for (int k = 0; k < 8; ++k) {
      const cplx w = std::polar(1.0, 2.0 * kPi * (k + 0.5) / 8.0);
      for (double R : {1e2, 1e3}) {
        const double s = R * (chi.chi(R * w) - id).norm();
        lo = std::min(lo, s);
        hi = std::max(hi, s);
      }
    }
    double jump = 0.0, ratio = 0.0;
    for (double l0 : {-0.6, 0.0, 0.3, 0.75}) {
      const double right = jump_residual_chi(l0, 1e-3, chi, JumpOrientation::RightLeft);
      const double wrong = jump_residual_chi(l0, 1e-3, chi, JumpOrientation::LeftRight);
      jump = std::max(jump, right);
      ratio = std::max(ratio, right / wrong);
    }
    const bool bounded = std::isfinite(hi) && hi / lo < kBoundedSpread;
    report(7, inv < kInverseTol && bounded && jump < kJumpTol && ratio < kJumpWrongFraction,
           "RHP consistency: inverse, normalization at infinity, jump orientation",
           fmt("inv=%.3e |z||chi-I| in [%.4f,%.4f]", inv, lo, hi) +
               fmt(" jump=%.3e jump/wrong=%.3e", jump, ratio));
  }

  // 8
  {
    ProblemConfig t = standard_config();
    t.F = FunctionSpec::constant(0.0);
    const IdentityReport tr = verify_factorization(t, ExecPolicy::Serial);
    const LimitResult tl = asymptotic_limit(t, ExecPolicy::Serial);
    const std::vector<double> tx = {25.0, 50.0, 100.0, 200.0, 400.0};
    const auto trows = asymptotic_sweep(t, tx, ExecPolicy::Serial);
    const auto tmm = m_vs_m0(t, tx, ExecPolicy::Serial);
    double det_dev = 0.0;
    for (const DetResult* d : {&tr.det_V, &tr.det_Vtilde, &tr.det_W, &tr.det_M_loop, &tr.det_N_line, &tl.u_plus,
                               &tl.u_minus}) {
      det_dev = std::max(det_dev, std::abs(d->value - 1.0));
    }
    for (const auto& r : trows) {
      det_dev = std::max({det_dev, std::abs(r.det_S.value - 1.0), std::abs(r.det_S_tilde.value - 1.0)});
    }
    for (const auto& r : tmm) {
      det_dev = std::max({det_dev, std::abs(r.det_M.value - 1.0), std::abs(r.det_M0.value - 1.0)});
    }
    const ChiSolution chi = solve_chi(t, gsk_vector_pair(t));
    const AlphaEvaluator alpha = make_alpha(t);
    double res = std::max({tr.r1, tr.r2, tr.r3, chi.node_residual_R(), chi.node_residual_L()});
    for (const auto& r : trows) res = std::max(res, r.err);
    for (const auto& r : tmm) res = std::max(res, r.diff);
    for (double l0 : {-0.5, 0.3}) {
      res = std::max({res, jump_residual_chi(l0, 1e-3, chi), jump_residual_alpha(l0, 1e-3, alpha, t.F)});
    }
    report(8, det_dev < kTrivialTol && res < kTrivialTol, "F = 0: determinants equal 1, residuals vanish",
           fmt("max |det-1|=%.3e max residual=%.3e", det_dev, res));
  }

  // 9
  {
    double d = std::max(max_delta(rep), max_delta(ni));
    d = std::max({d, lim.u_plus.convergence_delta, lim.u_minus.convergence_delta});
    for (const auto& r : rows) d = std::max(d, r.conv_delta);
    report(9, d < kDeltaTol, "self-convergence, every convergence_delta < 1e-9 for criteria 1, 3, 4",
           fmt("max delta=%.3e", d));
  }

  return failures == 0 ? 0 : 1;
}
