#include "kortmix/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kortmix/audit.hpp"
#include "kortmix/solver1d.hpp"

namespace kortmix {

namespace {

using ordered_json = nlohmann::ordered_json;

void write_lines(const OutputConfig& out, const std::string& filename,
                 const std::vector<std::string>& lines) {
    if (out.dir.empty()) return;
    std::filesystem::create_directories(out.dir);
    std::ofstream f(std::filesystem::path(out.dir) / filename);
    for (const auto& l : lines) f << l << '\n';
}

ordered_json admissibility_record(const AdmissibilityReport& rep,
                                  const RunConfig& cfg) {
    ordered_json rec;
    rec["check"] = "admissibility";
    rec["pass"] = rep.pass;
    rec["tampered"] = cfg.material.tampered;
    ordered_json conds = ordered_json::array();
    for (const auto& c : rep.conditions) {
        ordered_json jc;
        jc["name"] = c.name;
        jc["pass"] = c.pass;
        jc["worst_value"] = c.worst_value;
        jc["worst_rho"] = c.worst_rho;
        jc["worst_c"] = c.worst_c;
        conds.push_back(jc);
    }
    rec["conditions"] = conds;
    rec["digest"] = cfg.digest;
    return rec;
}

ordered_json consistency_record(const char* name, const ConsistencyReport& rep,
                                const RunConfig& cfg) {
    ordered_json rec;
    rec["check"] = name;
    rec["pass"] = rep.pass;
    rec["max_rel_err"] = rep.max_rel_err;
    ordered_json arr = ordered_json::array();
    for (const auto& c : rep.checks) {
        ordered_json jc;
        jc["name"] = c.name;
        jc["pass"] = c.pass;
        jc["max_rel_err"] = c.max_rel_err;
        arr.push_back(jc);
    }
    rec["checks"] = arr;
    rec["digest"] = cfg.digest;
    return rec;
}

ordered_json sample_record(const SampleRecord& r, const std::string& digest) {
    ordered_json rec;
    rec["index"] = r.index;
    rec["sigma_direct"] = r.sig_direct;
    rec["sigma_closed"] = r.sig_closed;
    rec["identity_err"] = r.identity_err;
    rec["resample_err"] = r.resample_err;
    rec["eval_error"] = r.eval_error;
    if (r.eval_error) rec["what"] = r.what;
    rec["jet"] = to_flat(r.jet);
    rec["digest"] = digest;
    return rec;
}

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_snapshot_csv(const std::filesystem::path& path, const Grid1D& g,
                        const MaterialParams& params, int scheme_order) {
    std::vector<StateJet> jets;
    spatial_jets(g, scheme_order, jets);
    std::ofstream f(path);
    f << "x,rho,c,v,eps,theta,sigma\n";
    for (int j = 0; j < g.N; ++j) {
        double theta = std::numeric_limits<double>::quiet_NaN();
        double sigma = std::numeric_limits<double>::quiet_NaN();
        try {
            theta = temperature(g.eps[j], params);
            sigma = sigma_closed(jets[j], params);
        } catch (const std::exception&) {
        }
        f << g17(g.x(j)) << ',' << g17(g.rho[j]) << ',' << g17(g.c[j]) << ','
          << g17(g.v[j]) << ',' << g17(g.eps[j]) << ',' << g17(theta) << ','
          << g17(sigma) << '\n';
    }
}

}  // namespace

int cmd_check_params(const RunConfig& cfg, std::ostream& out) {
    const AdmissibilityReport rep =
        check_admissibility(cfg.material, cfg.audit.adm_grid);
    const std::string line = admissibility_record(rep, cfg).dump();
    out << line << '\n';
    write_lines(cfg.output, cfg.output.check_file, {line});
    return rep.pass ? kExitPass : kExitThermoViolation;
}

int cmd_audit(const RunConfig& cfg, std::ostream& out) {
    const MaterialParams& p = cfg.material;
    std::vector<std::string> lines;
    auto emit = [&](const ordered_json& rec) {
        lines.push_back(rec.dump());
        out << lines.back() << '\n';
    };
    bool violation = false;

    const AdmissibilityReport adm = check_admissibility(p, cfg.audit.adm_grid);
    emit(admissibility_record(adm, cfg));
    if (!adm.pass) violation = true;
    if (!adm.pass && !p.tampered) {
        // declared parameters are inadmissible; the numerics would dereference
        // singular denominators, so stop here
        ordered_json sum;
        sum["check"] = "summary";
        sum["pass"] = false;
        sum["n_violations"] = 1;
        sum["digest"] = cfg.digest;
        emit(sum);
        write_lines(cfg.output, cfg.output.audit_file, lines);
        return kExitThermoViolation;
    }

    std::vector<SampleRecord> dump;
    std::vector<SampleRecord>* dp = cfg.output.dump_samples ? &dump : nullptr;
    const AuditReport rep =
        run_identity_audit(p, cfg.audit.n_samples, cfg.audit.seed,
                           cfg.audit.ranges, cfg.audit.tols, cfg.audit.parallel, dp);
    {
        ordered_json rec;
        rec["check"] = "identity_audit";
        rec["pass"] = rep.pass;
        rec["n_samples"] = rep.n_samples;
        rec["seed"] = rep.seed;
        rec["max_identity_err"] = rep.max_identity_err;
        rec["max_resample_err"] = rep.max_resample_err;
        rec["min_sigma"] = rep.min_sigma;
        rec["n_identity_failures"] = rep.n_identity_failures;
        rec["n_resample_failures"] = rep.n_resample_failures;
        rec["n_sigma_violations"] = rep.n_sigma_violations;
        rec["n_eval_errors"] = rep.n_eval_errors;
        if (!rep.failures.empty()) {
            ordered_json arr = ordered_json::array();
            for (const auto& r : rep.failures)
                arr.push_back(sample_record(r, cfg.digest));
            rec["failures"] = arr;
        }
        rec["digest"] = cfg.digest;
        emit(rec);
        violation |= !rep.pass;
    }

    {
        const std::size_t n_loc = std::min<std::size_t>(cfg.audit.n_samples, 200);
        const FluxLocalityReport fl =
            check_flux_locality(p, n_loc, cfg.audit.seed);
        ordered_json rec;
        rec["check"] = "flux_locality";
        rec["pass"] = fl.pass;
        rec["n_samples"] = n_loc;
        rec["max_dJm_vgrad"] = fl.max_dJm_vgrad;
        rec["max_dJm_epsgrad"] = fl.max_dJm_epsgrad;
        rec["max_dJm_rhohess"] = fl.max_dJm_rhohess;
        rec["max_dJm_chess"] = fl.max_dJm_chess;
        rec["digest"] = cfg.digest;
        emit(rec);
        violation |= !fl.pass;
    }

    {
        const ConsistencyReport mc = check_multiplier_consistency(
            p, static_cast<std::size_t>(cfg.audit.mult_jets), cfg.audit.seed,
            cfg.audit.ranges);
        emit(consistency_record("multiplier_consistency", mc, cfg));
        violation |= !mc.pass;
    }

    {
        const ConsistencyReport ti =
            check_tau_identities(p, cfg.audit.tau_grid, cfg.audit.ranges);
        emit(consistency_record("tau_identities", ti, cfg));
        violation |= !ti.pass;
    }

    {
        // gradient-entropy quadratic form over the whole admissible strip
        const double eps_mid =
            0.5 * (cfg.audit.ranges.eps_lo + cfg.audit.ranges.eps_hi);
        double ev_max = -std::numeric_limits<double>::infinity();
        double ev_min = std::numeric_limits<double>::infinity();
        double worst_rho = 0, worst_c = 0;
        bool pass = true, eval_ok = true;
        const int nr = cfg.audit.adm_grid, nc = cfg.audit.c_grid;
        for (int ir = 0; ir < nr; ++ir)
            for (int ic = 0; ic < nc; ++ic) {
                const double rho =
                    p.rho_min + (p.rho_max - p.rho_min) * ir / (nr - 1);
                const double c = static_cast<double>(ic) / (nc - 1);
                try {
                    const ConcavityReport cr =
                        check_entropy_concavity(rho, c, eps_mid, p);
                    if (cr.ev_max > ev_max) {
                        ev_max = cr.ev_max;
                        worst_rho = rho;
                        worst_c = c;
                    }
                    ev_min = std::min(ev_min, cr.ev_min);
                    if (!cr.pass) pass = false;
                } catch (const std::exception&) {
                    eval_ok = false;
                    pass = false;
                }
            }
        ordered_json rec;
        rec["check"] = "entropy_concavity";
        rec["pass"] = pass;
        rec["eval_ok"] = eval_ok;
        rec["max_eigenvalue"] = ev_max;
        rec["min_eigenvalue"] = ev_min;
        rec["worst_rho"] = worst_rho;
        rec["worst_c"] = worst_c;
        rec["digest"] = cfg.digest;
        emit(rec);
        violation |= !pass;
    }

    {
        ordered_json sum;
        sum["check"] = "summary";
        sum["pass"] = !violation;
        sum["digest"] = cfg.digest;
        emit(sum);
    }

    write_lines(cfg.output, cfg.output.audit_file, lines);
    if (dp) {
        std::vector<std::string> slines;
        slines.reserve(dump.size());
        for (const auto& r : dump) slines.push_back(sample_record(r, cfg.digest).dump());
        if (!cfg.output.dir.empty())
            write_lines(cfg.output, cfg.output.samples_file, slines);
        else
            for (const auto& l : slines) out << l << '\n';
    }
    return violation ? kExitThermoViolation : kExitPass;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
    const AdmissibilityReport adm =
        check_admissibility(cfg.material, cfg.audit.adm_grid);
    if (!adm.pass && !cfg.material.tampered) {
        ordered_json rec;
        rec["check"] = "simulate";
        rec["status"] = "inadmissible_parameters";
        rec["digest"] = cfg.digest;
        out << rec.dump() << '\n';
        return kExitThermoViolation;
    }

    const RunResult res = run(cfg.solver, cfg.material);
    const bool ok = res.status == RunStatus::ok;

    std::vector<std::string> lines;
    lines.reserve(res.diags.size());
    for (const auto& d : res.diags) {
        ordered_json rec;
        rec["t"] = d.t;
        rec["M"] = d.M;
        rec["Mc"] = d.Mc;
        rec["P"] = d.P;
        rec["E"] = d.E;
        rec["S"] = d.S;
        rec["min_sigma"] = d.min_sigma;
        rec["dt"] = d.dt;
        rec["digest"] = cfg.digest;
        lines.push_back(rec.dump());
    }

    const bool have_dir = !cfg.output.dir.empty();
    if (have_dir) {
        write_lines(cfg.output, cfg.output.diagnostics_file, lines);
        const std::filesystem::path dir(cfg.output.dir);
        for (const auto& [step, g] : res.snapshots) {
            char name[64];
            std::snprintf(name, sizeof(name), "%s%08zu.csv",
                          cfg.output.snapshot_prefix.c_str(), step);
            write_snapshot_csv(dir / name, g, cfg.material, cfg.solver.scheme_order);
        }
        write_snapshot_csv(
            dir / (cfg.output.snapshot_prefix + (ok ? "final.csv" : "last_good.csv")),
            res.grid, cfg.material, cfg.solver.scheme_order);
    } else {
        for (const auto& l : lines) out << l << '\n';
    }

    ordered_json sum;
    sum["check"] = "simulate";
    sum["status"] = ok ? "ok" : "instability";
    sum["n_steps"] = res.n_steps;
    sum["t_final"] = res.t_final;
    sum["digest"] = cfg.digest;
    out << sum.dump() << '\n';
    return ok ? kExitPass : kExitInstability;
}

}  // namespace kortmix
