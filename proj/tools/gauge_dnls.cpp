// gauge-dnls: config-driven experiment runner for the derivative-NLS
// gauge-transformation workbench. Exit codes: 0 all contracts passed,
// 1 contract failure, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <exception>
#include <string>

#include "dnls/acceptance.hpp"
#include "dnls/experiments.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  std::string format;
  uint64_t seed = 0;
  bool has_seed = false;
  bool quiet = false;
};

void attach_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON experiment config");
  cmd->add_option("--out", flags.out_dir, "output directory");
  cmd->add_option("--format", flags.format, "report format: csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--seed", flags.seed, "RNG seed")->each([&](const std::string&) {
    flags.has_seed = true;
  });
  cmd->add_flag("--quiet", flags.quiet, "suppress console output");
}

int run_kind(const std::string& kind, const CommonFlags& flags) {
  dnls::ExperimentConfig cfg;
  if (!flags.config_path.empty()) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(dnls::read_text_file(flags.config_path));
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error: cannot read config %s: %s\n",
                   flags.config_path.c_str(), e.what());
      return 2;
    }
    try {
      cfg = dnls::ExperimentConfig::from_json(j);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error: bad config: %s\n", e.what());
      return 2;
    }
  }
  cfg.kind = kind;
  if (!flags.out_dir.empty()) cfg.output_dir = flags.out_dir;
  if (!flags.format.empty()) cfg.format = flags.format;
  if (flags.has_seed) cfg.seed = flags.seed;
  if (flags.quiet) cfg.quiet = true;

  const auto start = std::chrono::steady_clock::now();
  dnls::Report rep = dnls::run_experiment(cfg);
  rep.wall_seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  const auto files = dnls::write_report(rep, cfg.output_dir, cfg.format);
  if (!cfg.quiet) {
    for (const auto& f : files) std::fprintf(stderr, "wrote %s\n", f.c_str());
    std::fprintf(stderr, "%s: %s (%.2fs)\n", rep.kind.c_str(),
                 rep.passed ? "all contracts passed" : "CONTRACT FAILURE",
                 rep.wall_seconds);
    for (const auto& why : rep.failures) {
      std::fprintf(stderr, "  failure: %s\n", why.c_str());
    }
  }
  return rep.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudo-spectral workbench for the gauged derivative NLS"};
  app.require_subcommand(1);

  const std::vector<std::pair<std::string, std::string>> kinds = {
      {"solve", "run one solver and export the trajectory"},
      {"converge-eps", "epsilon-convergence rate study"},
      {"joint-limit", "joint (eps, eta) -> (0,0) limit table"},
      {"bona-smith", "mollifier rate checks"},
      {"conserve", "conservation-law drift"},
      {"lipschitz", "flow-map Lipschitz ratios"},
      {"envelope", "frequency-envelope diagnostics"},
      {"strichartz", "Strichartz ratio ensemble"},
      {"compare", "direct vs gauged solver comparison"},
  };
  const std::map<std::string, std::string> kind_map = {
      {"solve", "solve"},
      {"converge-eps", "eps_convergence"},
      {"joint-limit", "joint_limit"},
      {"bona-smith", "bona_smith"},
      {"conserve", "conservation"},
      {"lipschitz", "lipschitz_flow"},
      {"envelope", "envelope"},
      {"strichartz", "strichartz"},
      {"compare", "direct_vs_gauged"},
  };

  std::map<std::string, CommonFlags> flags;
  for (const auto& [name, help] : kinds) {
    attach_common(app.add_subcommand(name, help), flags[name]);
  }
  CommonFlags gate_flags;
  attach_common(app.add_subcommand("gate", "run the full acceptance suite"),
                gate_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;  // --help
    std::fprintf(stderr, "%s\n", e.what());
    std::fprintf(stderr, "%s", app.help().c_str());
    return 2;
  }

  try {
    for (const auto& [name, kind] : kind_map) {
      if (app.got_subcommand(name)) return run_kind(kind, flags[name]);
    }
    if (app.got_subcommand("gate")) {
      dnls::AcceptanceOptions opts;
      if (gate_flags.has_seed) opts.seed = gate_flags.seed;
      if (!gate_flags.out_dir.empty()) opts.out_dir = gate_flags.out_dir;
      opts.quiet = gate_flags.quiet;
      const dnls::AcceptanceSummary summary = dnls::run_acceptance(opts);
      return summary.all_passed ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
