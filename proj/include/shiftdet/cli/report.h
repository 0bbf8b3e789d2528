#pragma once

#include <span>
#include <string>
#include <vector>

#include "shiftdet/cli/config_io.h"
#include "shiftdet/experiments.h"

namespace shiftdet::cli {

// %.17g, locale-independent.
std::string format_real(double v);

Json det_json(const DetResult& r);
Json identity_report_json(const IdentityReport& rep, const ProblemConfig& cfg, bool strict_line);

// Header x,ratio_re,ratio_im,limit_re,limit_im,err,conv_delta; rows ascending in x.
std::string sweep_csv(std::span<const SweepRow> rows);
// Header x,det_M_re,det_M_im,det_M0_re,det_M0_im,diff,conv_delta.
std::string m_vs_m0_csv(std::span<const MvsM0Row> rows);

void write_text(const std::string& path, const std::string& text);
void write_json(const std::string& path, const Json& j);

}  // namespace shiftdet::cli
