#include "shiftdet/experiments.h"

#include <algorithm>
#include <cmath>
#include <exception>

#include "shiftdet/kernels.h"
#include "shiftdet/operator_kernels.h"
#include "shiftdet/parallel.h"
#include "shiftdet/rhp.h"

namespace shiftdet {

namespace {

double relative(cplx a, cplx b, double floor = 1e-30) { return std::abs(a - b) / std::max(std::abs(a), floor); }

double worst_delta(std::initializer_list<const DetResult*> results) {
  double worst = 0.0;
  for (const auto* r : results) worst = std::max(worst, r->convergence_delta);
  return worst;
}

void check_x_values(std::span<const double> xs) {
  if (xs.empty()) throw ConfigError("x list is empty");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !std::isfinite(xs[i])) throw ConfigError("x values must be positive");
    if (i > 0 && !(xs[i] > xs[i - 1])) throw ConfigError("x values must be strictly increasing");
  }
}

// Runs independent jobs, collecting the first exception instead of letting it cross the OpenMP region.
template <class Body>
void run_jobs(std::size_t n, ExecPolicy policy, Body&& body) {
  std::vector<std::exception_ptr> errors(n);
  for_each_index(n, policy, [&](std::size_t i) {
    try {
      body(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

ProblemConfig at_x(const ProblemConfig& cfg, double x) {
  ProblemConfig out = cfg;
  out.x = x;
  return out;
}

}  // namespace

IdentityReport verify_factorization(const ProblemConfig& cfg, ExecPolicy policy) {
  IdentityReport rep;
  rep.warnings = validate(cfg);
  const VectorPair pair = gsk_vector_pair(cfg);
  const double thr = cfg.near_diagonal_threshold();
  const QuadratureRule rule = cfg.interval_rule();
  const QuadratureRule loop = cfg.loop();
  const QuadratureRule line = cfg.line();
  rep.n_interval = static_cast<int>(rule.size());
  rep.m_loop = static_cast<int>(loop.size());
  rep.m_line = static_cast<int>(line.size());
  rep.h = cfg.loop_h();

  rep.det_V = nystrom_det(general_kernel_on_nodes(pair, cfg.shift, thr), rule, policy);
  rep.det_Vtilde = nystrom_det(integrable_kernel_on_nodes(pair, thr), rule, policy);
  const ChiSolution chi = solve_chi(cfg, rule, pair, policy);
  rep.chi_det_tilde = chi.det_tilde();
  rep.det_W = nystrom_det(W_on_nodes(chi, cfg.shift), rule, policy);
  rep.det_M_loop = nystrom_det_matrix(M_on_nodes(chi, cfg.shift), loop, cfg.N, policy);
  rep.det_N_line = nystrom_det_matrix(N_on_nodes(chi, cfg.shift, thr), line, cfg.N, policy);

  const cplx product = rep.det_Vtilde.value * rep.det_W.value;
  rep.r1 = relative(rep.det_V.value, product);
  rep.r2 = relative(rep.det_W.value, rep.det_M_loop.value);
  rep.r3 = relative(rep.det_M_loop.value, rep.det_N_line.value);

  const auto& tol = cfg.tolerances;
  rep.r1_meaningful = worst_delta({&rep.det_V, &rep.det_Vtilde, &rep.det_W}) < 0.1 * tol.r1;
  rep.r2_meaningful = worst_delta({&rep.det_W, &rep.det_M_loop}) < 0.1 * tol.r2;
  rep.r3_meaningful = worst_delta({&rep.det_M_loop, &rep.det_N_line}) < 0.1 * tol.r3;
  return rep;
}

std::vector<DetResult> line_determinants(const ProblemConfig& cfg, std::span<const int> m_line_sizes,
                                         ExecPolicy policy) {
  validate(cfg);
  const VectorPair pair = gsk_vector_pair(cfg);
  const ChiSolution chi = solve_chi(cfg, pair, policy);
  const auto factory = N_on_nodes(chi, cfg.shift, cfg.near_diagonal_threshold());
  const QuadratureRule base = cfg.line();
  std::vector<DetResult> out;
  for (int m : m_line_sizes) out.push_back(nystrom_det_matrix(factory, base.resized(m), cfg.N, policy));
  return out;
}

LimitResult asymptotic_limit(const ProblemConfig& cfg, ExecPolicy policy) {
  const AlphaEvaluator alpha = make_alpha(cfg);
  const QuadratureRule loop = cfg.loop();
  LimitResult lim;
  lim.u_plus = nystrom_det(U_plus_on_nodes(alpha, cfg.c), loop, policy);
  lim.u_minus = nystrom_det(U_minus_on_nodes(alpha, cfg.c), loop, policy);
  lim.value = lim.u_plus.value * lim.u_minus.value;
  return lim;
}

std::vector<SweepRow> asymptotic_sweep(const ProblemConfig& cfg, std::span<const double> x_values,
                                       ExecPolicy policy) {
  check_x_values(x_values);
  validate(cfg);
  const LimitResult lim = asymptotic_limit(cfg, ExecPolicy::Serial);
  std::vector<SweepRow> rows(x_values.size());
  run_jobs(x_values.size(), policy, [&](std::size_t i) {
    const ProblemConfig cx = at_x(cfg, x_values[i]);
    const QuadratureRule rule = cx.interval_rule();
    SweepRow& row = rows[i];
    row.x = cx.x;
    row.n = static_cast<int>(rule.size());
    row.det_S = nystrom_det([&cx](cplx l, cplx m) { return shift_kernel(l, m, cx); }, rule);
    row.det_S_tilde = nystrom_det([&cx](cplx l, cplx m) { return gsk_kernel(l, m, cx); }, rule);
    row.ratio = row.det_S.value / row.det_S_tilde.value;
    row.limit = lim.value;
    row.err = std::abs(row.ratio / row.limit - 1.0);
    row.conv_delta = worst_delta({&row.det_S, &row.det_S_tilde, &lim.u_plus, &lim.u_minus});
    row.valid = std::abs(row.det_S_tilde.value) > 1e-12 && row.det_S_tilde.convergence_delta < 1e-6 &&
                std::isfinite(row.err);
  });
  return rows;
}

double fit_decay_slope(std::span<const SweepRow> rows) {
  std::vector<double> lx, le;
  for (const auto& r : rows) {
    if (!r.valid || !(r.err > 0.0) || !(r.err > 10.0 * r.conv_delta)) continue;
    lx.push_back(std::log(r.x));
    le.push_back(std::log(r.err));
  }
  if (lx.size() < 4) throw InsufficientData("insufficient points for slope");
  const double n = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += le[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (le[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (!(sxx > 0.0)) throw InsufficientData("insufficient points for slope");
  return sxy / sxx;
}

std::vector<MvsM0Row> m_vs_m0(const ProblemConfig& cfg, std::span<const double> x_values, ExecPolicy policy) {
  check_x_values(x_values);
  validate(cfg);
  const AlphaEvaluator alpha = make_alpha(cfg);
  const QuadratureRule loop = cfg.loop();
  const DetResult m0 = nystrom_det_matrix(M0_on_nodes(alpha, cfg.c), loop, 2);
  std::vector<MvsM0Row> rows(x_values.size());
  run_jobs(x_values.size(), policy, [&](std::size_t i) {
    const ProblemConfig cx = at_x(cfg, x_values[i]);
    const VectorPair pair = gsk_vector_pair(cx);
    const ChiSolution chi = solve_chi(cx, pair);
    MvsM0Row& row = rows[i];
    row.x = cx.x;
    row.det_M = nystrom_det_matrix(M_on_nodes(chi, cx.shift), loop, cx.N);
    row.det_M0 = m0;
    row.diff = std::abs(row.det_M.value - m0.value);
  });
  return rows;
}

std::vector<double> doubling_ratios(std::span<const double> xs, std::span<const double> errs, double x_min) {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < xs.size() && i + 1 < errs.size(); ++i) {
    if (xs[i] < x_min) continue;
    if (std::abs(xs[i + 1] - 2.0 * xs[i]) > 1e-9 * xs[i]) continue;
    out.push_back(errs[i] / errs[i + 1]);
  }
  return out;
}

}  // namespace shiftdet
