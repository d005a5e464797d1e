// Command-line driver: pairfluid run|init <config>, pairfluid check, pairfluid version.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "pairfluid/config.hpp"
#include "pairfluid/errors.hpp"
#include "pairfluid/io.hpp"
#include "pairfluid/selfcheck.hpp"
#include "pairfluid/solver.hpp"
#include "pairfluid/version.hpp"

namespace {

enum ExitStatus : int { kOk = 0, kConfig = 1, kBreakdown = 2, kIo = 3 };

pairfluid::RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw pairfluid::IoError("cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return pairfluid::parse_config(buf.str());
}

int execute(pairfluid::RunConfig config, bool initial_only) {
  if (initial_only) config.solver.t_end = 0.0;
  pairfluid::FileObserver files(config.output.dir);
  const pairfluid::RunResult result = pairfluid::run(config, &files);
  const auto outputs = files.finish(config, result);
  std::cerr << "wrote " << outputs.size() << " files to " << config.output.dir << " ("
            << result.steps_taken << " steps, dt = " << pairfluid::format_double(result.dt)
            << ")\n";
  if (result.breakdown) {
    std::cerr << "error: " << *result.breakdown << '\n';
    return kBreakdown;
  }
  return kOk;
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const pairfluid::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const pairfluid::IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const pairfluid::NumericalBreakdown& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBreakdown;
  } catch (const pairfluid::Error& e) {
    // Parameter and charge errors surface while building the initial state.
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIo;
  }
}

int self_check() {
  const auto results = pairfluid::run_self_checks();
  bool all = true;
  for (const auto& r : results) {
    std::printf("%-4s  %-45s  %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str());
    all = all && r.passed;
  }
  return all ? kOk : kBreakdown;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"1D relativistic two-fluid plasma with Schwinger pair creation"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "run a simulation and write its outputs");
  run_cmd->add_option("config", config_path, "config file")->required();
  auto* init_cmd = app.add_subcommand("init", "write only the t = 0 snapshot and series row");
  init_cmd->add_option("config", config_path, "config file")->required();
  auto* check_cmd = app.add_subcommand("check", "run the built-in invariant suite");
  auto* version_cmd = app.add_subcommand("version", "print the program version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  if (version_cmd->parsed()) {
    std::printf("pairfluid %s\n", pairfluid::kVersion);
    return kOk;
  }
  if (check_cmd->parsed()) return self_check();
  const bool initial_only = init_cmd->parsed();
  return guarded([&] { return execute(load_config(config_path), initial_only); });
}
