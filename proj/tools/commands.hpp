#pragma once

#include <string>

#include "config.hpp"

namespace lowzero::app {

inline constexpr const char* kReportSchemaVersion = "1.0.0";
#ifdef LOWZERO_VERSION
inline constexpr const char* kToolVersion = LOWZERO_VERSION;
#else
inline constexpr const char* kToolVersion = "0.0.0";
#endif

enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitUsage = 2, kExitMissingCache = 3, kExitPartial = 4 };

int cmd_sieve(const RunConfig& cfg);
int cmd_zeros(const RunConfig& cfg);
int cmd_formfactor(const RunConfig& cfg);
int cmd_density(const RunConfig& cfg);
int cmd_ratios(const RunConfig& cfg);
int cmd_nonvanish(const RunConfig& cfg);
int cmd_report(const RunConfig& cfg);

/// Runs one subcommand by name, mapping library exceptions onto exit codes.
int run_command(const std::string& name, const RunConfig& cfg);

}  // namespace lowzero::app
