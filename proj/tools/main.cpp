// Command-line front end: run experiments from JSON configs or built-in
// presets, validate configs, and list presets.
//
// Exit codes: 0 success, 1 validation/usage failure, 2 numerical-invariant
// violation during a run.

#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "qfisim/experiment.hpp"

namespace {

void print_diagnostics(const std::vector<qfisim::Diagnostic>& diags) {
  for (const auto& d : diags)
    std::fprintf(stderr, "config error: %s: %s\n", d.field.c_str(), d.rule.c_str());
}

std::optional<qfisim::EngineKind> parse_engine(const std::string& s) {
  if (s == "ED") return qfisim::EngineKind::ED;
  if (s == "FREE_FERMION") return qfisim::EngineKind::FREE_FERMION;
  if (s == "BOTH") return qfisim::EngineKind::BOTH;
  return std::nullopt;
}

struct CommonFlags {
  std::string output_dir;
  std::string engine;
  int threads = 0;
  bool quiet = false;
};

int do_run(const qfisim::ExperimentConfig& config, const CommonFlags& flags) {
  qfisim::RunOptions opts;
  opts.threads = flags.threads;
  opts.quiet = flags.quiet;
  if (!flags.output_dir.empty()) opts.output_dir_override = flags.output_dir;
  if (!flags.engine.empty()) {
    const auto ek = parse_engine(flags.engine);
    if (!ek) {
      std::fprintf(stderr, "unknown engine '%s' (ED, FREE_FERMION, BOTH)\n",
                   flags.engine.c_str());
      return 1;
    }
    opts.engine_override = *ek;
  }

  const qfisim::RunResult res = qfisim::run(config, opts);
  print_diagnostics(res.diagnostics);
  if (!res.error.empty() && res.diagnostics.empty())
    std::fprintf(stderr, "run failed: %s\n", res.error.c_str());
  if (!flags.quiet)
    for (const auto& f : res.files) std::printf("%s\n", f.c_str());
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum Fisher information experiments for spin-chain sensing"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string config_path;
  std::string preset_name;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--output-dir", flags.output_dir, "directory for CSV and manifest output");
    cmd->add_option("--threads", flags.threads, "worker threads (0 = hardware default)");
    cmd->add_option("--engine", flags.engine, "engine override: ED, FREE_FERMION, BOTH");
    cmd->add_flag("--quiet", flags.quiet, "suppress the output-file listing");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "run an experiment");
  run_cmd->add_option("config", config_path, "JSON config file");
  run_cmd->add_option("--preset", preset_name, "built-in preset name instead of a config file");
  add_common(run_cmd);

  CLI::App* validate_cmd = app.add_subcommand("validate", "check a config without running it");
  validate_cmd->add_option("config", config_path, "JSON config file")->required();

  CLI::App* presets_cmd = app.add_subcommand("presets", "built-in experiment presets");
  presets_cmd->require_subcommand(1);
  CLI::App* presets_list = presets_cmd->add_subcommand("list", "list preset names");
  std::string show_name;
  CLI::App* presets_show = presets_cmd->add_subcommand("show", "print a preset config as JSON");
  presets_show->add_option("name", show_name, "preset name")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      if (config_path.empty() == preset_name.empty()) {
        std::fprintf(stderr, "run needs exactly one of: a config file, or --preset NAME\n");
        return 1;
      }
      qfisim::ExperimentConfig config;
      if (!preset_name.empty()) {
        const auto pc = qfisim::preset_config(preset_name);
        if (!pc) {
          std::fprintf(stderr, "unknown preset '%s' (try: presets list)\n", preset_name.c_str());
          return 1;
        }
        config = *pc;
      } else {
        const qfisim::ParsedConfig parsed = qfisim::parse_config_file(config_path);
        if (!parsed.diagnostics.empty()) {
          print_diagnostics(parsed.diagnostics);
          return 1;
        }
        config = parsed.config;
      }
      return do_run(config, flags);
    }

    if (validate_cmd->parsed()) {
      const qfisim::ParsedConfig parsed = qfisim::parse_config_file(config_path);
      std::vector<qfisim::Diagnostic> diags = parsed.diagnostics;
      if (diags.empty()) diags = qfisim::validate(parsed.config);
      print_diagnostics(diags);
      if (diags.empty()) std::printf("ok\n");
      return diags.empty() ? 0 : 1;
    }

    if (presets_list->parsed()) {
      for (const auto& p : qfisim::presets())
        std::printf("%-8s %s\n", p.name.c_str(), p.description.c_str());
      return 0;
    }
    if (presets_show->parsed()) {
      const auto pc = qfisim::preset_config(show_name);
      if (!pc) {
        std::fprintf(stderr, "unknown preset '%s' (try: presets list)\n", show_name.c_str());
        return 1;
      }
      std::printf("%s\n", qfisim::config_to_json(*pc).c_str());
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 1;
}
