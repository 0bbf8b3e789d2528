#include "shiftdet/cli/commands.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <ostream>

#include "shiftdet/cli/config_io.h"
#include "shiftdet/cli/report.h"
#include "shiftdet/experiments.h"
#include "shiftdet/kernels.h"
#include "shiftdet/operator_kernels.h"
#include "shiftdet/parallel.h"
#include "shiftdet/rhp.h"

namespace shiftdet::cli {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const InsufficientData& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  }
}

std::vector<double> default_x_values() { return {25.0, 50.0, 100.0, 200.0, 400.0}; }

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

std::string prepare_out_dir(const CommandOptions& opt) {
  std::error_code ec;
  fs::create_directories(opt.out_dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + opt.out_dir + "'");
  return opt.out_dir;
}

void write_manifest(const CommandOptions& opt, const LoadedConfig& loaded, const std::string& command,
                    const std::vector<std::string>& outputs, double seconds) {
  Json j;
  j["artifact_version"] = kArtifactVersion;
  j["command"] = command;
  j["command_line"] = opt.command_line;
  j["config_path"] = loaded.path;
  j["config_sha256"] = loaded.sha256;
  Json files = Json::array();
  for (const auto& o : outputs) files.push_back(o);
  files.push_back("manifest.json");
  j["outputs"] = files;
  j["written_utc"] = utc_now();
  j["wall_clock_s"] = seconds;
  j["threads"] = available_threads();
  write_json((fs::path(opt.out_dir) / "manifest.json").string(), j);
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

LoadedConfig load_and_validate(const CommandOptions& opt, std::ostream& err) {
  LoadedConfig loaded = load_config(opt.config_path);
  for (const auto& w : validate(loaded.cfg)) err << "warning: " << w << '\n';
  return loaded;
}

}  // namespace

int apply_thread_env() {
  const char* env = std::getenv("SHIFTDET_THREADS");
  if (!env) return 0;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || v < 1) return 0;
  set_thread_cap(static_cast<int>(v));
  return static_cast<int>(v);
}

std::vector<double> x_range(double x_min, double x_max, int count) {
  if (count < 1 || !(x_min > 0.0) || !(x_max >= x_min)) throw ConfigError("x range: need 0 < x_min <= x_max, count >= 1");
  if (count == 1) return {x_min};
  std::vector<double> xs;
  const double step = std::log(x_max / x_min) / (count - 1);
  for (int i = 0; i < count; ++i) xs.push_back(i + 1 == count ? x_max : x_min * std::exp(step * i));
  return xs;
}

int cmd_verify(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto start = Clock::now();
    const LoadedConfig loaded = load_and_validate(opt, err);
    const ProblemConfig& cfg = loaded.cfg;
    const IdentityReport rep = verify_factorization(cfg, ExecPolicy::Parallel);
    const bool strict = opt.strict_line || cfg.tolerances.strict_line;
    const std::string dir = prepare_out_dir(opt);
    write_json((fs::path(dir) / "identity_report.json").string(), identity_report_json(rep, cfg, strict));
    write_manifest(opt, loaded, "verify", {"identity_report.json"}, seconds_since(start));

    const auto& tol = cfg.tolerances;
    out << "r1 = " << format_real(rep.r1) << (rep.r1 < tol.r1 ? "  ok" : "  FAIL") << '\n';
    out << "r2 = " << format_real(rep.r2) << (rep.r2 < tol.r2 ? "  ok" : "  FAIL") << '\n';
    out << "r3 = " << format_real(rep.r3) << (rep.r3 < tol.r3 ? "  ok" : (strict ? "  FAIL" : "  (advisory)"))
        << '\n';
    const bool pass = rep.r1 < tol.r1 && rep.r2 < tol.r2 && (!strict || rep.r3 < tol.r3);
    return pass ? kOk : kToleranceFailure;
  });
}

int cmd_sweep(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto start = Clock::now();
    const LoadedConfig loaded = load_and_validate(opt, err);
    const ProblemConfig& cfg = loaded.cfg;
    const std::vector<double> xs = opt.x_values.empty() ? default_x_values() : opt.x_values;
    if (xs.size() < 4) throw ConfigError("insufficient points for slope: a sweep needs at least 4 x values");

    const std::vector<SweepRow> rows = asymptotic_sweep(cfg, xs, ExecPolicy::Parallel);
    const std::string dir = prepare_out_dir(opt);
    write_text((fs::path(dir) / "sweep.csv").string(), sweep_csv(rows));

    const auto& tol = cfg.tolerances;
    std::vector<double> errs;
    bool decreasing = true;
    double max_err = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      errs.push_back(rows[i].err);
      max_err = std::max(max_err, rows[i].err);
      if (i > 0 && !(rows[i].err < rows[i - 1].err)) decreasing = false;
    }
    Json summary;
    summary["x_count"] = rows.size();
    summary["limit_re"] = rows.front().limit.real();
    summary["limit_im"] = rows.front().limit.imag();
    summary["slope_min"] = tol.slope_min;
    summary["slope_max"] = tol.slope_max;
    summary["err_strictly_decreasing"] = decreasing;
    Json ratios = Json::array();
    for (double r : doubling_ratios(xs, errs, 100.0)) ratios.push_back(r);
    summary["decay_ratios_x_ge_100"] = ratios;

    int code = kOk;
    if (cfg.F.is_identically_zero() || max_err < 1e-12) {
      summary["slope"] = nullptr;
      summary["slope_pass"] = true;
      summary["status"] = "skipped";
      summary["reason"] = "trivial limit";
      out << "trivial limit: slope test skipped\n";
    } else {
      try {
        const double slope = fit_decay_slope(rows);
        const bool ok = slope >= tol.slope_min && slope <= tol.slope_max;
        summary["slope"] = slope;
        summary["slope_pass"] = ok;
        summary["status"] = ok ? "ok" : "slope out of band";
        summary["reason"] = ok ? "" : "fitted slope outside [slope_min, slope_max]";
        out << "slope = " << format_real(slope) << (ok ? "  ok" : "  FAIL") << '\n';
        code = ok ? kOk : kToleranceFailure;
      } catch (const InsufficientData& e) {
        summary["slope"] = nullptr;
        summary["slope_pass"] = false;
        summary["status"] = "insufficient valid rows";
        summary["reason"] = e.what();
        out << "slope: " << e.what() << '\n';
        code = kToleranceFailure;
      }
    }
    write_json((fs::path(dir) / "sweep_summary.json").string(), summary);
    write_manifest(opt, loaded, "sweep", {"sweep.csv", "sweep_summary.json"}, seconds_since(start));
    return code;
  });
}

int cmd_det(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const LoadedConfig loaded = load_and_validate(opt, err);
    const ProblemConfig& cfg = loaded.cfg;
    const std::string& w = opt.which;
    const auto policy = ExecPolicy::Parallel;
    const double thr = cfg.near_diagonal_threshold();
    DetResult r;
    if (w == "V" || w == "Vtilde" || w == "W" || w == "M" || w == "N") {
      const VectorPair pair = gsk_vector_pair(cfg);
      const QuadratureRule rule = cfg.interval_rule();
      if (w == "V") {
        r = nystrom_det(general_kernel_on_nodes(pair, cfg.shift, thr), rule, policy);
      } else if (w == "Vtilde") {
        r = nystrom_det(integrable_kernel_on_nodes(pair, thr), rule, policy);
      } else {
        const ChiSolution chi = solve_chi(cfg, rule, pair, policy);
        if (w == "W") r = nystrom_det(W_on_nodes(chi, cfg.shift), rule, policy);
        if (w == "M") r = nystrom_det_matrix(M_on_nodes(chi, cfg.shift), cfg.loop(), cfg.N, policy);
        if (w == "N") r = nystrom_det_matrix(N_on_nodes(chi, cfg.shift, thr), cfg.line(), cfg.N, policy);
      }
    } else if (w == "M0" || w == "Uplus" || w == "Uminus") {
      const AlphaEvaluator alpha = make_alpha(cfg);
      const QuadratureRule loop = cfg.loop();
      if (w == "M0") r = nystrom_det_matrix(M0_on_nodes(alpha, cfg.c), loop, 2, policy);
      if (w == "Uplus") r = nystrom_det(U_plus_on_nodes(alpha, cfg.c), loop, policy);
      if (w == "Uminus") r = nystrom_det(U_minus_on_nodes(alpha, cfg.c), loop, policy);
    } else {
      throw ConfigError("--which must be one of V, Vtilde, W, M, N, M0, Uplus, Uminus");
    }
    Json j;
    j["which"] = w;
    const Json body = det_json(r);
    for (const auto& item : body.items()) j[item.key()] = item.value();
    out << j.dump() << '\n';
    return kOk;
  });
}

int cmd_m_vs_m0(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto start = Clock::now();
    const LoadedConfig loaded = load_and_validate(opt, err);
    const ProblemConfig& cfg = loaded.cfg;
    const std::vector<double> xs = opt.x_values.empty() ? default_x_values() : opt.x_values;
    const std::vector<MvsM0Row> rows = m_vs_m0(cfg, xs, ExecPolicy::Parallel);
    const std::string dir = prepare_out_dir(opt);
    write_text((fs::path(dir) / "m_vs_m0.csv").string(), m_vs_m0_csv(rows));

    const auto& tol = cfg.tolerances;
    std::vector<double> diffs;
    double max_diff = 0.0;
    bool decreasing = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      diffs.push_back(rows[i].diff);
      max_diff = std::max(max_diff, rows[i].diff);
      if (i > 0 && !(rows[i].diff < rows[i - 1].diff)) decreasing = false;
    }
    const std::vector<double> ratios = doubling_ratios(xs, diffs, 100.0);
    Json summary;
    summary["x_count"] = rows.size();
    summary["det_M0_re"] = rows.front().det_M0.value.real();
    summary["det_M0_im"] = rows.front().det_M0.value.imag();
    summary["diff_strictly_decreasing"] = decreasing;
    summary["decay_ratio_min"] = tol.decay_ratio_min;
    summary["decay_ratio_max"] = tol.decay_ratio_max;
    summary["decay_ratios_x_ge_100"] = ratios;

    int code = kOk;
    if (cfg.F.is_identically_zero() || max_diff < 1e-12) {
      summary["pass"] = true;
      summary["reason"] = "trivial limit";
      out << "trivial limit: decay-ratio test skipped\n";
    } else {
      if (ratios.empty()) throw ConfigError("insufficient points for decay ratio: need x and 2x with x >= 100");
      bool ok = true;
      for (double r : ratios) ok = ok && r >= tol.decay_ratio_min && r <= tol.decay_ratio_max;
      summary["pass"] = ok;
      summary["reason"] = ok ? "" : "decay ratio outside [decay_ratio_min, decay_ratio_max]";
      for (double r : ratios) out << "ratio = " << format_real(r) << '\n';
      out << (ok ? "ok" : "FAIL") << '\n';
      code = ok ? kOk : kToleranceFailure;
    }
    write_json((fs::path(dir) / "m_vs_m0_summary.json").string(), summary);
    write_manifest(opt, loaded, "m-vs-m0", {"m_vs_m0.csv", "m_vs_m0_summary.json"}, seconds_since(start));
    return code;
  });
}

}  // namespace shiftdet::cli
