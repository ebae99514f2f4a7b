#include <chrono>
#include <cstdint>
#include <cstdio>
#include <limits>

#include <CLI11.hpp>

#include "kortmix/audit.hpp"
#include "kortmix/solver1d.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace kortmix;

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(
               clock::now().time_since_epoch())
        .count();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs OpenMP timing of the audit sampler and solver RHS"};
    std::size_t samples = 20000;
    int nodes = 4096;
    int reps = 5;
    std::uint64_t seed = 42;
    app.add_option("--samples", samples, "jets per audit run");
    app.add_option("--nodes", nodes, "grid nodes for the RHS benchmark");
    app.add_option("--reps", reps, "repetitions; best time wins");
    app.add_option("--seed", seed, "sampling seed");
    CLI11_PARSE(app, argc, argv);

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("threads available: %d\n\n", threads);

    const MaterialParams p;

    // --- identity audit sampling ---
    double best_s = std::numeric_limits<double>::infinity();
    double best_p = best_s;
    AuditReport rep_s, rep_p;
    for (int r = 0; r < reps; ++r) {
        double t0 = now_ms();
        rep_s = run_identity_audit(p, samples, seed, {}, {}, false);
        best_s = std::min(best_s, now_ms() - t0);
        t0 = now_ms();
        rep_p = run_identity_audit(p, samples, seed, {}, {}, true);
        best_p = std::min(best_p, now_ms() - t0);
    }
    const bool audit_same =
        rep_s.max_identity_err == rep_p.max_identity_err &&
        rep_s.max_resample_err == rep_p.max_resample_err &&
        rep_s.min_sigma == rep_p.min_sigma && rep_s.pass == rep_p.pass;
    std::printf("audit   %8zu jets   serial %9.2f ms   parallel %9.2f ms   "
                "speedup %.2fx   reports identical: %s\n",
                samples, best_s, best_p, best_s / best_p,
                audit_same ? "yes" : "NO");

    // --- solver right-hand side ---
    SolverConfig sc;
    sc.N = nodes;
    sc.ic_profile = "rho_sine";
    sc.ic_amplitude = 1e-3;
    const Grid1D g = make_initial_grid(sc);
    RhsArrays out_s, out_p;
    rhs(g, p, 2, false, out_s);  // warm-up
    const int inner = 20;
    best_s = best_p = std::numeric_limits<double>::infinity();
    for (int r = 0; r < reps; ++r) {
        double t0 = now_ms();
        for (int k = 0; k < inner; ++k) rhs(g, p, 2, false, out_s);
        best_s = std::min(best_s, (now_ms() - t0) / inner);
        t0 = now_ms();
        for (int k = 0; k < inner; ++k) rhs(g, p, 2, true, out_p);
        best_p = std::min(best_p, (now_ms() - t0) / inner);
    }
    const bool rhs_same = out_s.rho_t == out_p.rho_t && out_s.c_t == out_p.c_t &&
                          out_s.v_t == out_p.v_t && out_s.eps_t == out_p.eps_t;
    std::printf("rhs     %8d nodes  serial %9.3f ms   parallel %9.3f ms   "
                "speedup %.2fx   outputs identical: %s\n",
                nodes, best_s, best_p, best_s / best_p,
                rhs_same ? "yes" : "NO");
    return 0;
}
