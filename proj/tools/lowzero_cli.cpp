#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "config.hpp"

using namespace lowzero::app;

int main(int argc, char** argv) {
  CLI::App app{"Low-lying zeros of quadratic Dirichlet L-functions"};
  app.set_version_flag("--version", std::string("lowzero ") + kToolVersion);
  app.require_subcommand(1);

  std::string config_file;
  app.add_option("--config", config_file, "flat key = value file (flags override it)");

  // Every flag lands in a string map so file values are only overridden by flags actually given.
  std::map<std::string, std::string> given;
  std::map<std::string, CLI::Option*> opts;
  std::map<std::string, std::string> raw;
  const std::vector<std::pair<std::string, std::string>> flags = {
      {"X", "upper bound for p"},
      {"v", "residue class of p mod 4 (1 or 3)"},
      {"kernel", "kernel name: gauss or gauss2"},
      {"tf", "test functions, comma separated: fejer, gauss, bump"},
      {"lambda", "Fourier support parameter for fejer and bump"},
      {"T", "zero height"},
      {"cache-dir", "zero cache directory"},
      {"out-dir", "output directory"},
      {"threads", "worker threads (0 = hardware)"},
      {"alpha-grid", "start:stop:step or comma list"},
      {"root-tol", "zero refinement tolerance"},
      {"tol-zero-scale", "multiplier on the central-value threshold"},
      {"ratio-r", "shift r of the log-derivative statistic"},
      {"cache-version", "cache format version to read and write"},
      {"primes", "comma-separated subset of primes for `zeros`"},
  };
  for (const auto& [name, help] : flags) opts[name] = app.add_option("--" + name, raw[name], help);

  const std::vector<std::pair<std::string, std::string>> subs = {
      {"sieve", "write primes.csv for the family"},
      {"zeros", "compute and cache certified zeros"},
      {"formfactor", "form factor against its main terms"},
      {"density", "one-level density, ratios prediction and explicit formula"},
      {"ratios", "ratios-conjecture statistics"},
      {"nonvanish", "central values and the Fejer bound"},
      {"report", "all statistics as one JSON document"},
  };
  for (const auto& [name, help] : subs) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  RunConfig cfg;
  try {
    for (const auto& [name, opt] : opts)
      if (opt->count() > 0) given[name] = raw[name];
    const auto file = config_file.empty() ? std::map<std::string, std::string>{} : read_config_file(config_file);
    cfg = resolve_config(file, given);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return run_command(app.get_subcommands().front()->get_name(), cfg);
}
