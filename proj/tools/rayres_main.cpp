#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rayres/config.hpp"

namespace {

int apply_overrides(rayres::RunConfig& cfg, const std::vector<std::string>& overrides) {
  for (const auto& kv : overrides) {
    const auto pos = kv.find('=');
    if (pos == std::string::npos) {
      std::cerr << "input error: --tol-override expects K=V, got '" << kv << "'\n";
      return 2;
    }
    const std::string key = kv.substr(0, pos);
    try {
      const double val = std::stod(kv.substr(pos + 1));
      if (!(val > 0.0)) throw std::invalid_argument("tolerance must be positive");
      cfg.tolerances[key] = val;
    } catch (const std::exception&) {
      std::cerr << "input error: bad tolerance override '" << kv << "'\n";
      return 2;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rayleigh half-space spectra: determinants, resonances, growth reports"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON configuration file")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--tol-override", overrides, "tolerance override K=V (repeatable)");
  };

  CLI::App* eval = app.add_subcommand("eval", "evaluate determinants on a point list");
  CLI::App* verify = app.add_subcommand("verify", "run every invariant suite");
  CLI::App* roots = app.add_subcommand("roots", "locate determinant zeros in a region");
  CLI::App* analyze = app.add_subcommand("analyze", "growth, counting and domain reports");
  for (CLI::App* sub : {eval, verify, roots, analyze}) add_common(sub);

  CLI11_PARSE(app, argc, argv);

  rayres::RunConfig cfg;
  try {
    cfg = rayres::load_config(config_path);
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  if (const int rc = apply_overrides(cfg, overrides); rc != 0) return rc;

  try {
    if (eval->parsed()) return rayres::cli::run_eval(cfg);
    if (verify->parsed()) return rayres::cli::run_verify(cfg);
    if (roots->parsed()) return rayres::cli::run_roots(cfg);
    if (analyze->parsed()) return rayres::cli::run_analyze(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
