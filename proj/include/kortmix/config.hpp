#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "kortmix/audit.hpp"
#include "kortmix/material.hpp"
#include "kortmix/solver1d.hpp"

namespace kortmix {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AuditConfig {
    std::size_t n_samples = 1000;
    std::uint64_t seed = 42;
    AuditRanges ranges;
    AuditTols tols;
    int adm_grid = 512;   // rho-grid for admissibility / concavity scans
    int c_grid = 33;      // c-grid for the concavity scan
    int mult_jets = 100;  // jets for the multiplier finite-difference check
    int tau_grid = 10;    // per-axis grid for the tau identity check
    bool parallel = true;
};

struct OutputConfig {
    std::string dir;  // empty: stdout only
    std::string diagnostics_file = "diagnostics.ndjson";
    std::string audit_file = "audit.ndjson";
    std::string check_file = "check_params.ndjson";
    std::string samples_file = "audit_samples.ndjson";
    std::string snapshot_prefix = "snapshot_";
    bool dump_samples = false;
};

struct RunConfig {
    MaterialParams material;
    AuditConfig audit;
    SolverConfig solver;
    OutputConfig output;
    std::vector<std::string> mutations;  // applied K=V tamper specs
    std::string digest;                  // stable hash of the effective config
};

/// Parses the INI-style run configuration ([material]/[audit]/[solver]/
/// [output] sections, key = value lines, '#' or ';' comments).  Unknown
/// sections or keys and violated constraints raise ConfigError with the
/// offending line.  An empty input yields the documented defaults.
RunConfig parse_config(std::istream& in);
RunConfig parse_config_file(const std::string& path);

/// Post-validation parameter tampering for fault-injection tests.
/// `spec` is KEY=VALUE where KEY is any [material] key or tau0..tau12
/// (stress-coefficient override).  Marks the config tampered.
void apply_mutation(RunConfig& cfg, const std::string& spec);

/// Canonical text form of every effective key (sorted, full precision);
/// the digest recorded in every output record is FNV-1a 64 over it.
std::string canonical_config(const RunConfig& cfg);
std::string config_digest(const RunConfig& cfg);

/// Re-validates the cross-key constraints and recomputes the digest;
/// call after flag overrides are applied.
void finalize_config(RunConfig& cfg);

}  // namespace kortmix
