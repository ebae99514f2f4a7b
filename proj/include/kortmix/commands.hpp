#pragma once

#include <iosfwd>

#include "kortmix/config.hpp"

namespace kortmix {

// Exit-code contract shared by all subcommands.
inline constexpr int kExitPass = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitThermoViolation = 2;
inline constexpr int kExitInstability = 3;

/// Admissibility report as NDJSON to `out` (and the output dir when set).
int cmd_check_params(const RunConfig& cfg, std::ostream& out);

/// Identity audit, flux-locality, multiplier/tau consistency, and
/// concavity-grid checks; one NDJSON record each plus a summary record.
int cmd_audit(const RunConfig& cfg, std::ostream& out);

/// Time integration with NDJSON diagnostics and CSV snapshots in the
/// output dir.
int cmd_simulate(const RunConfig& cfg, std::ostream& out);

}  // namespace kortmix
