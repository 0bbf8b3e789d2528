#include "shiftdet/cli/report.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace shiftdet::cli {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json det_json(const DetResult& r) {
  Json j;
  j["value_re"] = r.value.real();
  j["value_im"] = r.value.imag();
  j["convergence_delta"] = r.convergence_delta;
  j["rule_size"] = r.rule_size;
  return j;
}

Json identity_report_json(const IdentityReport& rep, const ProblemConfig& cfg, bool strict_line) {
  const auto& tol = cfg.tolerances;
  Json j;
  j["config"] = config_to_json(cfg);
  j["det_V"] = det_json(rep.det_V);
  j["det_Vtilde"] = det_json(rep.det_Vtilde);
  j["det_W"] = det_json(rep.det_W);
  j["det_M_loop"] = det_json(rep.det_M_loop);
  j["det_N_line"] = det_json(rep.det_N_line);
  j["chi_det_tilde_re"] = rep.chi_det_tilde.real();
  j["chi_det_tilde_im"] = rep.chi_det_tilde.imag();
  j["r1"] = rep.r1;
  j["r2"] = rep.r2;
  j["r3"] = rep.r3;
  j["r1_meaningful"] = rep.r1_meaningful;
  j["r2_meaningful"] = rep.r2_meaningful;
  j["r3_meaningful"] = rep.r3_meaningful;
  j["r1_pass"] = rep.r1 < tol.r1;
  j["r2_pass"] = rep.r2 < tol.r2;
  j["r3_pass"] = rep.r3 < tol.r3;
  j["r3_gating"] = strict_line;
  j["resolution"] = {{"n_interval", rep.n_interval}, {"m_loop", rep.m_loop}, {"m_line", rep.m_line}, {"h", rep.h}};
  j["warnings"] = rep.warnings;
  return j;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::ostringstream out;
  out << "x,ratio_re,ratio_im,limit_re,limit_im,err,conv_delta\n";
  for (const auto& r : rows) {
    out << format_real(r.x) << ',' << format_real(r.ratio.real()) << ',' << format_real(r.ratio.imag()) << ','
        << format_real(r.limit.real()) << ',' << format_real(r.limit.imag()) << ',' << format_real(r.err) << ','
        << format_real(r.conv_delta) << '\n';
  }
  return out.str();
}

std::string m_vs_m0_csv(std::span<const MvsM0Row> rows) {
  std::ostringstream out;
  out << "x,det_M_re,det_M_im,det_M0_re,det_M0_im,diff,conv_delta\n";
  for (const auto& r : rows) {
    const double delta = std::max(r.det_M.convergence_delta, r.det_M0.convergence_delta);
    out << format_real(r.x) << ',' << format_real(r.det_M.value.real()) << ','
        << format_real(r.det_M.value.imag()) << ',' << format_real(r.det_M0.value.real()) << ','
        << format_real(r.det_M0.value.imag()) << ',' << format_real(r.diff) << ',' << format_real(delta) << '\n';
  }
  return out.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

void write_json(const std::string& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

}  // namespace shiftdet::cli
