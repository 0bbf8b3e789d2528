#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "shiftdet/cli/commands.h"

using namespace shiftdet::cli;

int main(int argc, char** argv) {
  CLI::App app{"Fredholm determinants of integrable operators with shifts"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kArtifactVersion));

  CommandOptions opt;
  for (int i = 0; i < argc; ++i) opt.command_line += (i ? " " : "") + std::string(argv[i]);

  double x_min = 0.0, x_max = 0.0;
  int x_count = 0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", opt.config_path, "JSON problem config")->required();
    sub->add_option("--out", opt.out_dir, "output directory");
  };
  auto add_x = [&](CLI::App* sub) {
    sub->add_option("--x", opt.x_values, "comma-separated increasing x values")->delimiter(',');
    sub->add_option("--x-min", x_min, "smallest x of a geometric grid");
    sub->add_option("--x-max", x_max, "largest x of a geometric grid");
    sub->add_option("--x-count", x_count, "number of points of the geometric grid");
  };

  auto* verify = app.add_subcommand("verify", "factorization, loop and line identities");
  add_common(verify);
  verify->add_flag("--strict-line", opt.strict_line, "gate the exit code on r3 as well");

  auto* sweep = app.add_subcommand("sweep", "large-x ratio against the U+/U- limit");
  add_common(sweep);
  add_x(sweep);

  auto* det = app.add_subcommand("det", "one determinant as JSON on stdout");
  add_common(det);
  det->add_option("--which", opt.which, "V, Vtilde, W, M, N, M0, Uplus or Uminus")
      ->required()
      ->check(CLI::IsMember({"V", "Vtilde", "W", "M", "N", "M0", "Uplus", "Uminus"}));

  auto* mm0 = app.add_subcommand("m-vs-m0", "loop determinants of M and M0 against x");
  add_common(mm0);
  add_x(mm0);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  apply_thread_env();
  if (x_count > 0) {
    if (!opt.x_values.empty()) {
      std::cerr << "config error: use either --x or --x-min/--x-max/--x-count\n";
      return kConfigError;
    }
    try {
      opt.x_values = x_range(x_min, x_max, x_count);
    } catch (const std::exception& e) {
      std::cerr << "config error: " << e.what() << '\n';
      return kConfigError;
    }
  }

  if (verify->parsed()) return cmd_verify(opt, std::cout, std::cerr);
  if (sweep->parsed()) return cmd_sweep(opt, std::cout, std::cerr);
  if (det->parsed()) return cmd_det(opt, std::cout, std::cerr);
  return cmd_m_vs_m0(opt, std::cout, std::cerr);
}
