#include "kortmix/solver1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace kortmix {

namespace {

bool grid_valid(const Grid1D& g) {
    for (int j = 0; j < g.N; ++j) {
        if (!std::isfinite(g.rho[j]) || !std::isfinite(g.c[j]) ||
            !std::isfinite(g.v[j]) || !std::isfinite(g.eps[j]))
            return false;
        if (!(g.rho[j] > 0.0) || !(g.eps[j] > 0.0)) return false;
        if (!(g.c[j] >= 0.0 && g.c[j] <= 1.0)) return false;
    }
    return true;
}

}  // namespace

void spatial_jets(const Grid1D& grid, int scheme_order,
                  std::vector<StateJet>& jets) {
    const int N = grid.N;
    const double h = grid.dx();
    jets.assign(N, StateJet{});
    auto at = [N](const std::vector<double>& f, int j) {
        return f[(j % N + N) % N];
    };
    for (int j = 0; j < N; ++j) {
        StateJet& J = jets[j];
        auto d1 = [&](const std::vector<double>& f) {
            if (scheme_order == 2)
                return (at(f, j + 1) - at(f, j - 1)) / (2.0 * h);
            return (-at(f, j + 2) + 8.0 * at(f, j + 1) - 8.0 * at(f, j - 1) +
                    at(f, j - 2)) /
                   (12.0 * h);
        };
        auto d2 = [&](const std::vector<double>& f) {
            if (scheme_order == 2)
                return (at(f, j + 1) - 2.0 * f[j] + at(f, j - 1)) / (h * h);
            return (-at(f, j + 2) + 16.0 * at(f, j + 1) - 30.0 * f[j] +
                    16.0 * at(f, j - 1) - at(f, j - 2)) /
                   (12.0 * h * h);
        };
        auto d3 = [&](const std::vector<double>& f) {
            if (scheme_order == 2)
                return (-at(f, j - 2) + 2.0 * at(f, j - 1) - 2.0 * at(f, j + 1) +
                        at(f, j + 2)) /
                       (2.0 * h * h * h);
            return (at(f, j - 3) - 8.0 * at(f, j - 2) + 13.0 * at(f, j - 1) -
                    13.0 * at(f, j + 1) + 8.0 * at(f, j + 2) - at(f, j + 3)) /
                   (8.0 * h * h * h);
        };
        J.rho = grid.rho[j];
        J.rho_g[0] = d1(grid.rho);
        J.rho_h[sym2_index(0, 0)] = d2(grid.rho);
        J.rho_t3[sym3_index(0, 0, 0)] = d3(grid.rho);
        J.c = grid.c[j];
        J.c_g[0] = d1(grid.c);
        J.c_h[sym2_index(0, 0)] = d2(grid.c);
        J.c_t3[sym3_index(0, 0, 0)] = d3(grid.c);
        J.eps = grid.eps[j];
        J.eps_g[0] = d1(grid.eps);
        J.eps_h[sym2_index(0, 0)] = d2(grid.eps);
        J.v[0] = grid.v[j];
        J.v_g[mat3_index(0, 0)] = d1(grid.v);
        J.v_h[sym2_index(0, 0)] = d2(grid.v);
    }
}

bool rhs(const Grid1D& grid, const MaterialParams& params, int scheme_order,
         bool parallel, RhsArrays& out) {
    const int N = grid.N;
    static thread_local std::vector<StateJet> jets;
    spatial_jets(grid, scheme_order, jets);
    out.rho_t.assign(N, 0.0);
    out.c_t.assign(N, 0.0);
    out.v_t.assign(N, 0.0);
    out.eps_t.assign(N, 0.0);
    static thread_local std::vector<char> bad;
    bad.assign(N, 0);
#pragma omp parallel for schedule(static) if (parallel)
    for (int j = 0; j < N; ++j) {
        try {
            const TimeJet tj = time_derivatives(jets[j], params);
            out.rho_t[j] = tj.rho_t;
            out.c_t[j] = tj.c_t;
            out.v_t[j] = tj.v_t[0];
            out.eps_t[j] = tj.eps_t;
            if (!std::isfinite(tj.rho_t) || !std::isfinite(tj.c_t) ||
                !std::isfinite(tj.v_t[0]) || !std::isfinite(tj.eps_t))
                bad[j] = 1;
        } catch (const std::exception&) {
            bad[j] = 1;
        }
    }
    for (int j = 0; j < N; ++j)
        if (bad[j]) return false;
    return true;
}

bool step_rk4(Grid1D& grid, double dt, const MaterialParams& params,
              int scheme_order, bool parallel) {
    const int N = grid.N;
    if (!grid_valid(grid)) return false;
    static thread_local RhsArrays k1, k2, k3, k4;
    static thread_local Grid1D work;
    auto stage = [&](const RhsArrays& k, double f) {
        work.N = grid.N;
        work.L = grid.L;
        work.rho.resize(N);
        work.c.resize(N);
        work.v.resize(N);
        work.eps.resize(N);
        for (int j = 0; j < N; ++j) {
            work.rho[j] = grid.rho[j] + f * k.rho_t[j];
            work.c[j] = grid.c[j] + f * k.c_t[j];
            work.v[j] = grid.v[j] + f * k.v_t[j];
            work.eps[j] = grid.eps[j] + f * k.eps_t[j];
        }
    };
    if (!rhs(grid, params, scheme_order, parallel, k1)) return false;
    stage(k1, 0.5 * dt);
    if (!grid_valid(work)) return false;
    if (!rhs(work, params, scheme_order, parallel, k2)) return false;
    stage(k2, 0.5 * dt);
    if (!grid_valid(work)) return false;
    if (!rhs(work, params, scheme_order, parallel, k3)) return false;
    stage(k3, dt);
    if (!grid_valid(work)) return false;
    if (!rhs(work, params, scheme_order, parallel, k4)) return false;
    for (int j = 0; j < N; ++j) {
        grid.rho[j] += dt / 6.0 * (k1.rho_t[j] + 2.0 * k2.rho_t[j] +
                                   2.0 * k3.rho_t[j] + k4.rho_t[j]);
        grid.c[j] += dt / 6.0 * (k1.c_t[j] + 2.0 * k2.c_t[j] + 2.0 * k3.c_t[j] +
                                 k4.c_t[j]);
        grid.v[j] += dt / 6.0 * (k1.v_t[j] + 2.0 * k2.v_t[j] + 2.0 * k3.v_t[j] +
                                 k4.v_t[j]);
        grid.eps[j] += dt / 6.0 * (k1.eps_t[j] + 2.0 * k2.eps_t[j] +
                                   2.0 * k3.eps_t[j] + k4.eps_t[j]);
    }
    return grid_valid(grid);
}

double stable_dt(const Grid1D& grid, const MaterialParams& params,
                 const SolverConfig& cfg) {
    const double dx = grid.dx();
    const double inf = std::numeric_limits<double>::infinity();
    double dt = inf;
    for (int j = 0; j < grid.N; ++j) {
        try {
            const double rho = grid.rho[j];
            const MaterialEval m =
                eval_material(rho, grid.c[j], grid.eps[j], params);
            const StressCoeffs tc =
                stress_coefficients(rho, grid.c[j], grid.eps[j], params);
            const StressPartials tp =
                stress_partials(rho, grid.c[j], grid.eps[j], params);
            // acoustic speed of the linearized (mass, momentum, energy) system
            const double cs2 =
                -tp.d_rho[0] + tc.tau[0] * tp.d_eps[0] / (rho * rho);
            const double W = std::abs(grid.v[j]) + std::sqrt(std::max(0.0, cs2));
            const double nu = std::max(
                {(m.tau6 + m.tau12) / rho, -m.Jc / rho, -m.q / rho, 0.0});
            const double kap = (std::abs(tc.tau[4]) + std::abs(tc.tau[5])) / rho;
            double b = inf;
            if (W > 0) b = std::min(b, cfg.adv_coeff * dx / W);
            if (nu > 0) b = std::min(b, cfg.diff_coeff * dx * dx / (2.0 * nu));
            if (kap > 0) b = std::min(b, cfg.kort_coeff * dx * dx * dx / kap);
            dt = std::min(dt, b);
        } catch (const std::exception&) {
            return std::numeric_limits<double>::quiet_NaN();
        }
    }
    return cfg.safety * dt;
}

DiagnosticsRecord diagnostics(const Grid1D& grid, const MaterialParams& params,
                              int scheme_order, double dt_used) {
    static thread_local std::vector<StateJet> jets;
    spatial_jets(grid, scheme_order, jets);
    const double dx = grid.dx();
    DiagnosticsRecord d;
    d.dt = dt_used;
    d.min_sigma = std::numeric_limits<double>::infinity();
    for (int j = 0; j < grid.N; ++j) {
        const double rho = grid.rho[j];
        d.M += rho;
        d.Mc += rho * grid.c[j];
        d.P += rho * grid.v[j];
        d.E += rho * (grid.eps[j] + 0.5 * grid.v[j] * grid.v[j]);
        d.S += rho * specific_entropy(jets[j], params);
        d.min_sigma = std::min(d.min_sigma, sigma_closed(jets[j], params));
    }
    d.M *= dx;
    d.Mc *= dx;
    d.P *= dx;
    d.E *= dx;
    d.S *= dx;
    return d;
}

Grid1D make_initial_grid(const SolverConfig& cfg) {
    Grid1D g;
    g.N = cfg.N;
    g.L = cfg.L;
    g.rho.assign(cfg.N, cfg.rho0);
    g.c.assign(cfg.N, cfg.c0);
    g.v.assign(cfg.N, cfg.v0);
    g.eps.assign(cfg.N, cfg.eps0);
    const double pi = 3.14159265358979323846;
    for (int j = 0; j < cfg.N; ++j) {
        const double x = g.x(j);
        if (cfg.ic_profile == "density_bump") {
            const double z = (x - cfg.L / 2.0) / cfg.ic_width;
            g.rho[j] = cfg.rho0 + cfg.ic_amplitude * std::exp(-z * z);
        } else if (cfg.ic_profile == "rho_sine") {
            g.rho[j] = cfg.rho0 + cfg.ic_amplitude * std::sin(2.0 * pi * x / cfg.L);
        } else if (cfg.ic_profile == "c_sine") {
            g.c[j] = cfg.c0 + cfg.ic_amplitude * std::sin(2.0 * pi * x / cfg.L);
        } else if (cfg.ic_profile != "constant") {
            throw std::invalid_argument("make_initial_grid: unknown ic_profile '" +
                                        cfg.ic_profile + "'");
        }
    }
    return g;
}

RunResult run(const SolverConfig& cfg, const MaterialParams& params) {
    RunResult res;
    res.grid = make_initial_grid(cfg);
    Grid1D& g = res.grid;
    Grid1D last_good = g;
    double t = 0.0;
    std::size_t step = 0;

    auto emit_diag = [&](double dt_used) -> bool {
        try {
            DiagnosticsRecord d = diagnostics(g, params, cfg.scheme_order, dt_used);
            d.t = t;
            res.diags.push_back(d);
            return true;
        } catch (const std::exception&) {
            return false;
        }
    };
    const bool want_snaps = cfg.snapshot_every > 0;

    double dt = stable_dt(g, params, cfg);
    if (!std::isfinite(dt) || dt <= 0.0) {
        res.status = RunStatus::instability;
        return res;
    }
    if (!emit_diag(std::min(dt, cfg.t_end > 0 ? cfg.t_end : dt))) {
        res.status = RunStatus::instability;
        return res;
    }
    if (want_snaps) res.snapshots.emplace_back(step, g);

    const double t_stop = cfg.t_end * (1.0 - 1e-12);
    while (t < t_stop && step < cfg.max_steps) {
        dt = stable_dt(g, params, cfg);
        if (!std::isfinite(dt) || dt <= 0.0) {
            res.status = RunStatus::instability;
            break;
        }
        if (t + dt > cfg.t_end) dt = cfg.t_end - t;
        last_good = g;
        if (!step_rk4(g, dt, params, cfg.scheme_order, cfg.parallel)) {
            g = last_good;
            res.status = RunStatus::instability;
            break;
        }
        ++step;
        t += dt;
        const bool final_now = t >= t_stop || step >= cfg.max_steps;
        if (step % static_cast<std::size_t>(cfg.diag_every) == 0 || final_now) {
            if (!emit_diag(dt)) {
                res.status = RunStatus::instability;
                break;
            }
        }
        if (want_snaps &&
            (step % static_cast<std::size_t>(cfg.snapshot_every) == 0 || final_now))
            res.snapshots.emplace_back(step, g);
    }
    res.n_steps = step;
    res.t_final = t;
    return res;
}

}  // namespace kortmix
