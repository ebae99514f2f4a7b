#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "kortmix/audit.hpp"
#include "kortmix/jet.hpp"
#include "kortmix/material.hpp"

namespace kortmix {

/// Periodic 1-D fields; x_j = j L / N.
struct Grid1D {
    int N = 0;
    double L = 0;
    std::vector<double> rho, c, v, eps;

    double dx() const { return L / N; }
    double x(int j) const { return j * L / N; }
};

struct SolverConfig {
    int N = 256;
    double L = 10.0;
    double t_end = 1.0;
    int scheme_order = 2;  // 2 or 4
    double safety = 0.25;
    int diag_every = 1;
    int snapshot_every = 0;  // 0 = initial/final only when snapshots enabled
    std::string ic_profile = "density_bump";  // constant|density_bump|rho_sine|c_sine
    double ic_amplitude = 1e-3;
    double ic_width = 0.8;
    double rho0 = 1.0, c0 = 0.5, v0 = 0.0, eps0 = 2.0;
    // coefficients of the three dt bounds (advective, diffusive, dispersive)
    double adv_coeff = 1.0, diff_coeff = 1.0, kort_coeff = 1.0;
    bool parallel = true;
    std::size_t max_steps = 50'000'000;
};

/// Per-emission integral diagnostics on the periodic domain.
struct DiagnosticsRecord {
    double t = 0;
    double M = 0;    // total mass
    double Mc = 0;   // total solute mass
    double P = 0;    // total momentum
    double E = 0;    // total energy (internal + kinetic)
    double S = 0;    // total entropy
    double min_sigma = 0;
    double dt = 0;
};

enum class RunStatus { ok, instability, config_error };

struct RhsArrays {
    std::vector<double> rho_t, c_t, v_t, eps_t;
};

/// Central finite differences (2nd or 4th order) fill each node's jet:
/// rho, c up to third derivative, eps, v up to second; transverse slots
/// stay zero so the 3-D constitutive path is exercised unchanged.
void spatial_jets(const Grid1D& grid, int scheme_order,
                  std::vector<StateJet>& jets);

/// Balance-law right-hand sides per node via time_derivatives on the
/// node jet.  Returns false (instability) on NaN/Inf or invariant
/// violation instead of throwing.
bool rhs(const Grid1D& grid, const MaterialParams& params, int scheme_order,
         bool parallel, RhsArrays& out);

/// Classical four-stage explicit step; false on invariant violation at
/// any stage (caller keeps the last good state).
bool step_rk4(Grid1D& grid, double dt, const MaterialParams& params,
              int scheme_order, bool parallel);

/// Stability-bound step size:
/// dt = safety * min over nodes of
///        min(adv_coeff*dx/W, diff_coeff*dx^2/(2 nu), kort_coeff*dx^3/kappa)
/// with W = |v| + sound speed, nu the largest diffusivity
/// ((tau6+tau12)/rho, -J_c/rho, -q0/rho), and kappa = (|tau4|+|tau5|)/rho
/// the dispersive (third-derivative) coefficient scale.
double stable_dt(const Grid1D& grid, const MaterialParams& params,
                 const SolverConfig& cfg);

DiagnosticsRecord diagnostics(const Grid1D& grid, const MaterialParams& params,
                              int scheme_order = 2, double dt_used = 0.0);

Grid1D make_initial_grid(const SolverConfig& cfg);

struct RunResult {
    RunStatus status = RunStatus::ok;
    std::size_t n_steps = 0;
    double t_final = 0;
    Grid1D grid;       // final (ok) or last good (instability)
    std::vector<DiagnosticsRecord> diags;
    std::vector<std::pair<std::size_t, Grid1D>> snapshots;  // (step, state)
};

/// Integrates to t_end, collecting diagnostics every diag_every steps
/// (plus the initial and final states) and snapshots every
/// snapshot_every steps when enabled.
RunResult run(const SolverConfig& cfg, const MaterialParams& params);

}  // namespace kortmix
