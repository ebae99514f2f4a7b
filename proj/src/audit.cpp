#include "kortmix/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace kortmix {

namespace {

// contractions of the jet used by div T, div Js and the balance laws
struct Geom {
    double gr2 = 0, grgc = 0, gc2 = 0, ge2 = 0;
    double lap_r = 0, lap_c = 0, lap_e = 0, G = 0;
    double D = 0;    // div Jm = Jr lap(rho) + Jc lap(c)
    double Jm2 = 0;  // |Jm|^2
    Vec3 Jm{};
    Vec3 Dk{};    // grad(div Jm)
    Vec3 Gk{};    // grad(div v)
    Vec3 lapv{};  // lap(v_i)
};

Geom make_geom(const StateJet& j, double Jr, double Jc, double k1) {
    Geom g;
    for (int k = 0; k < 3; ++k) {
        g.gr2 += j.rho_g[k] * j.rho_g[k];
        g.grgc += j.rho_g[k] * j.c_g[k];
        g.gc2 += j.c_g[k] * j.c_g[k];
        g.ge2 += j.eps_g[k] * j.eps_g[k];
        g.lap_r += j.rho_hess(k, k);
        g.lap_c += j.c_hess(k, k);
        g.lap_e += j.eps_hess(k, k);
        g.G += j.v_grad(k, k);
    }
    g.D = Jr * g.lap_r + Jc * g.lap_c;
    for (int k = 0; k < 3; ++k) {
        g.Jm[k] = Jr * j.rho_g[k] + Jc * j.c_g[k];
        g.Jm2 += g.Jm[k] * g.Jm[k];
        double r3 = 0, c3 = 0, vtrace = 0, vlap = 0;
        for (int m = 0; m < 3; ++m) {
            r3 += j.rho_third(k, m, m);
            c3 += j.c_third(k, m, m);
            vtrace += j.v_hess(m, m, k);
            vlap += j.v_hess(k, m, m);
        }
        g.Dk[k] = k1 * j.c_g[k] * g.lap_r + Jr * r3 - k1 * j.rho_g[k] * g.lap_c +
                  Jc * c3;
        g.Gk[k] = vtrace;
        g.lapv[k] = vlap;
    }
    return g;
}

double rel_err(double a, double b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

TimeJet time_derivatives(const StateJet& jet, const MaterialParams& params) {
    const MaterialEval m = eval_material(jet.rho, jet.c, jet.eps, params);
    const StressCoeffs tc = stress_coefficients(jet.rho, jet.c, jet.eps, params);
    const StressPartials tp = stress_partials(jet.rho, jet.c, jet.eps, params);
    const Geom g = make_geom(jet, m.Jr, m.Jc, params.kappa1);
    const auto& t = tc.tau;
    const double rho = jet.rho;

    auto gtau = [&](int k, int j) {
        return tp.d_rho[k] * jet.rho_g[j] + tp.d_c[k] * jet.c_g[j] +
               tp.d_eps[k] * jet.eps_g[j];
    };

    Vec3 divT{};
    for (int i = 0; i < 3; ++i) {
        double rR = 0, Rc_rC = 0, cC = 0, R3kk = 0, C3kk = 0;
        double Rr = 0, Rc = 0, rC = 0, Cc = 0, R3i = 0, C3i = 0;
        for (int k = 0; k < 3; ++k) {
            rR += jet.rho_g[k] * jet.rho_hess(k, i);
            Rc_rC += jet.rho_hess(k, i) * jet.c_g[k] + jet.rho_g[k] * jet.c_hess(k, i);
            cC += jet.c_g[k] * jet.c_hess(k, i);
            R3kk += jet.rho_third(k, k, i);
            C3kk += jet.c_third(k, k, i);
            Rr += jet.rho_hess(i, k) * jet.rho_g[k];
            Rc += jet.rho_hess(i, k) * jet.c_g[k];
            rC += jet.rho_g[k] * jet.c_hess(i, k);
            Cc += jet.c_hess(i, k) * jet.c_g[k];
            R3i += jet.rho_third(i, k, k);
            C3i += jet.c_third(i, k, k);
        }
        // gradient of the isotropic part A = tau0 + tau1 gr2 + ... + tau6 G
        const double gA = gtau(0, i) + gtau(1, i) * g.gr2 + 2.0 * t[1] * rR +
                          gtau(2, i) * g.grgc + t[2] * Rc_rC + gtau(3, i) * g.gc2 +
                          2.0 * t[3] * cC + gtau(4, i) * g.lap_r + t[4] * R3kk +
                          gtau(5, i) * g.lap_c + t[5] * C3kk + t[6] * g.Gk[i];
        // divergence of the rank-one / symmetric tail
        double dev = 0;
        for (int j = 0; j < 3; ++j) {
            dev += gtau(7, j) * jet.rho_g[i] * jet.rho_g[j];
            dev += gtau(8, j) * 0.5 *
                   (jet.rho_g[i] * jet.c_g[j] + jet.rho_g[j] * jet.c_g[i]);
            dev += gtau(9, j) * jet.c_g[i] * jet.c_g[j];
        }
        dev += t[7] * (g.lap_r * jet.rho_g[i] + Rr);
        dev += 0.5 * t[8] * (Rc + jet.rho_g[i] * g.lap_c + g.lap_r * jet.c_g[i] + rC);
        dev += t[9] * (Cc + jet.c_g[i] * g.lap_c);
        dev += t[10] * R3i + t[11] * C3i;
        dev += 0.5 * t[12] * (g.lapv[i] + g.Gk[i]);
        divT[i] = gA + dev;
    }

    const Mat3 T = stress(jet, params);
    double TdotV = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            TdotV += T[mat3_index(i, j)] * jet.v_grad(i, j);

    TimeJet tj;
    double rv = 0, vc = 0, ve = 0;
    for (int j = 0; j < 3; ++j) {
        rv += jet.rho_g[j] * jet.v[j];
        vc += jet.v[j] * jet.c_g[j];
        ve += jet.v[j] * jet.eps_g[j];
    }
    tj.rho_t = -(rv + rho * g.G);
    tj.c_t = -(vc + g.D / rho);
    tj.eps_t = -ve + (TdotV - m.q * g.lap_e) / rho;
    for (int i = 0; i < 3; ++i) {
        double adv = 0;
        for (int j = 0; j < 3; ++j) adv += jet.v[j] * jet.v_grad(i, j);
        tj.v_t[i] = -adv + divT[i] / rho;
    }
    for (int k = 0; k < 3; ++k) {
        double a = 0, b = 0;
        for (int j = 0; j < 3; ++j) {
            a += jet.rho_hess(j, k) * jet.v[j] + jet.rho_g[j] * jet.v_grad(j, k);
            b += jet.v_grad(j, k) * jet.c_g[j] + jet.v[j] * jet.c_hess(j, k);
        }
        tj.rho_gt[k] = -(a + jet.rho_g[k] * g.G + rho * g.Gk[k]);
        tj.c_gt[k] = -(b + g.Dk[k] / rho - g.D * jet.rho_g[k] / (rho * rho));
    }
    return tj;
}

double sigma_direct(const StateJet& jet, const MaterialParams& params) {
    const MaterialEval m = eval_material(jet.rho, jet.c, jet.eps, params);
    const EntropyCoeffs ec = entropy_coefficients(jet.rho, jet.c, jet.eps, params);
    const EntropyPartials sp = entropy_partials(jet.rho, jet.c, jet.eps, params);
    const Geom g = make_geom(jet, m.Jr, m.Jc, params.kappa1);
    const TimeJet tj = time_derivatives(jet, params);
    const double rho = jet.rho;

    const double ds_dr = sp.dsh0_dr + sp.dsh1_dr * g.gr2 + sp.dsh2_dr * g.grgc +
                         sp.dsh3_dr * g.gc2;
    const double ds_dc = sp.dsh0_dc + sp.dsh1_dc * g.gr2 + sp.dsh2_dc * g.grgc +
                         sp.dsh3_dc * g.gc2;
    const double ds_de = sp.dsh0_de;
    Vec3 ds_drg{}, ds_dcg{};
    for (int k = 0; k < 3; ++k) {
        ds_drg[k] = 2.0 * ec.s_hat1 * jet.rho_g[k] + ec.s_hat2 * jet.c_g[k];
        ds_dcg[k] = ec.s_hat2 * jet.rho_g[k] + 2.0 * ec.s_hat3 * jet.c_g[k];
    }

    double s_t = ds_dr * tj.rho_t + ds_dc * tj.c_t + ds_de * tj.eps_t;
    for (int k = 0; k < 3; ++k)
        s_t += ds_drg[k] * tj.rho_gt[k] + ds_dcg[k] * tj.c_gt[k];

    double conv = 0;
    for (int j = 0; j < 3; ++j) {
        double gs = ds_dr * jet.rho_g[j] + ds_dc * jet.c_g[j] + ds_de * jet.eps_g[j];
        for (int k = 0; k < 3; ++k)
            gs += ds_drg[k] * jet.rho_hess(k, j) + ds_dcg[k] * jet.c_hess(k, j);
        conv += jet.v[j] * gs;
    }

    const double F1 = ec.s_hat2 * g.D + 2.0 * rho * rho * ec.s_hat1 * g.G;
    const double F2 = 2.0 * ec.s_hat3 * g.D + rho * rho * ec.s_hat2 * g.G;
    double divJs = m.q * (m.s01p * g.lap_e + m.s01pp * g.ge2) +
                   params.kappa1 * params.kappa1 * m.s02pp * g.Jm2 / (m.Jc * m.Jc) +
                   params.kappa1 * m.s02p * g.D + F1 * g.lap_r + F2 * g.lap_c;
    for (int j = 0; j < 3; ++j) {
        const double gF1 =
            (sp.dsh2_dr * jet.rho_g[j] + sp.dsh2_dc * jet.c_g[j]) * g.D +
            ec.s_hat2 * g.Dk[j] +
            2.0 *
                ((2.0 * rho * ec.s_hat1 + rho * rho * sp.dsh1_dr) * jet.rho_g[j] +
                 rho * rho * sp.dsh1_dc * jet.c_g[j]) *
                g.G +
            2.0 * rho * rho * ec.s_hat1 * g.Gk[j];
        const double gF2 =
            2.0 * sp.dsh3_dr * jet.rho_g[j] * g.D + 2.0 * ec.s_hat3 * g.Dk[j] +
            ((2.0 * rho * ec.s_hat2 + rho * rho * sp.dsh2_dr) * jet.rho_g[j] +
             rho * rho * sp.dsh2_dc * jet.c_g[j]) *
                g.G +
            rho * rho * ec.s_hat2 * g.Gk[j];
        divJs += gF1 * jet.rho_g[j] + gF2 * jet.c_g[j];
    }

    return rho * (s_t + conv) + divJs;
}

double sigma_closed(const StateJet& jet, const MaterialParams& params) {
    const MaterialEval m = eval_material(jet.rho, jet.c, jet.eps, params);
    const EntropyCoeffs ec = entropy_coefficients(jet.rho, jet.c, jet.eps, params);
    const EntropyPartials sp = entropy_partials(jet.rho, jet.c, jet.eps, params);
    const Geom g = make_geom(jet, m.Jr, m.Jc, params.kappa1);
    double LL = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double l = jet.L(i, j);
            LL += l * l;
        }
    return m.q * m.s01pp * g.ge2 + (m.tau6 * g.G * g.G + m.tau12 * LL) * m.s01p +
           2.0 * ec.s_hat3 * g.D * g.D / m.Jc + m.Jr * sp.d2sh0_drdc * g.gr2 +
           2.0 * m.Jr * sp.d2sh0_dc2 * g.grgc + m.Jc * sp.d2sh0_dc2 * g.gc2;
}

StateJet random_jet(SplitMix64& rng, const AuditRanges& ranges) {
    StateJet j;
    j.rho = rng.uniform(ranges.rho_lo, ranges.rho_hi);
    j.c = rng.uniform(ranges.c_lo, ranges.c_hi);
    j.eps = rng.uniform(ranges.eps_lo, ranges.eps_hi);
    auto slot = [&] { return rng.uniform(ranges.slot_lo, ranges.slot_hi); };
    for (auto& a : j.rho_g) a = slot();
    for (auto& a : j.rho_h) a = slot();
    for (auto& a : j.rho_t3) a = slot();
    for (auto& a : j.c_g) a = slot();
    for (auto& a : j.c_h) a = slot();
    for (auto& a : j.c_t3) a = slot();
    for (auto& a : j.eps_g) a = slot();
    for (auto& a : j.eps_h) a = slot();
    for (auto& a : j.v) a = slot();
    for (auto& a : j.v_g) a = slot();
    for (auto& a : j.v_h) a = slot();
    return j;
}

AuditReport run_identity_audit(const MaterialParams& params,
                               std::size_t n_samples, std::uint64_t seed,
                               const AuditRanges& ranges, const AuditTols& tols,
                               bool parallel, std::vector<SampleRecord>* dump) {
    const std::size_t n = n_samples;
    std::vector<double> sig_d(n, 0.0), sig_c(n, 0.0), id_err(n, 0.0),
        rs_err(n, 0.0);
    std::vector<char> evl(n, 0);
    std::vector<std::string> what(n);

    auto evaluate = [&](std::size_t i) {
        auto rng = sample_stream(seed, i);
        const StateJet jet = random_jet(rng, ranges);
        try {
            const double sd = sigma_direct(jet, params);
            const double sc = sigma_closed(project_to_state_space(jet), params);
            // redraw every slot sigma may not depend on
            auto rng2 = sample_stream(seed, i, 1);
            auto slot = [&] {
                return rng2.uniform(ranges.slot_lo, ranges.slot_hi);
            };
            StateJet jet2 = jet;
            for (auto& a : jet2.rho_t3) a = slot();
            for (auto& a : jet2.c_t3) a = slot();
            for (auto& a : jet2.eps_h) a = slot();
            for (auto& a : jet2.v_h) a = slot();
            const double sd2 = sigma_direct(jet2, params);
            sig_d[i] = sd;
            sig_c[i] = sc;
            id_err[i] = std::abs(sd - sc) / std::max(1.0, std::abs(sc));
            rs_err[i] = std::abs(sd2 - sd) / std::max(1.0, std::abs(sd));
            if (!std::isfinite(sd) || !std::isfinite(sc) || !std::isfinite(sd2)) {
                evl[i] = 1;
                what[i] = "non-finite sigma";
            }
        } catch (const std::exception& ex) {
            evl[i] = 1;
            what[i] = ex.what();
        }
    };

    const long long nn = static_cast<long long>(n);
#pragma omp parallel for schedule(static) if (parallel)
    for (long long i = 0; i < nn; ++i) evaluate(static_cast<std::size_t>(i));

    AuditReport rep;
    rep.n_samples = n;
    rep.seed = seed;
    rep.min_sigma = std::numeric_limits<double>::infinity();
    std::size_t n_valid = 0;
    constexpr std::size_t kMaxFailures = 8;

    auto make_record = [&](std::size_t i) {
        SampleRecord r;
        r.index = i;
        auto rng = sample_stream(seed, i);
        r.jet = random_jet(rng, ranges);
        r.sig_direct = sig_d[i];
        r.sig_closed = sig_c[i];
        r.identity_err = id_err[i];
        r.resample_err = rs_err[i];
        r.eval_error = evl[i] != 0;
        r.what = what[i];
        return r;
    };

    for (std::size_t i = 0; i < n; ++i) {
        bool fail = false;
        if (evl[i]) {
            ++rep.n_eval_errors;
            fail = true;
        } else {
            ++n_valid;
            rep.max_identity_err = std::max(rep.max_identity_err, id_err[i]);
            rep.max_resample_err = std::max(rep.max_resample_err, rs_err[i]);
            rep.min_sigma = std::min(rep.min_sigma, sig_c[i]);
            if (id_err[i] > tols.rel_tol) {
                ++rep.n_identity_failures;
                fail = true;
            }
            if (rs_err[i] > tols.rel_tol) {
                ++rep.n_resample_failures;
                fail = true;
            }
            if (sig_c[i] < -tols.sigma_tol) {
                ++rep.n_sigma_violations;
                fail = true;
            }
        }
        if (fail && rep.failures.size() < kMaxFailures)
            rep.failures.push_back(make_record(i));
        if (dump) dump->push_back(make_record(i));
    }
    if (n_valid == 0) rep.min_sigma = 0.0;
    rep.pass = rep.n_identity_failures == 0 && rep.n_resample_failures == 0 &&
               rep.n_sigma_violations == 0 && rep.n_eval_errors == 0;
    return rep;
}

FluxLocalityReport check_flux_locality(const MaterialParams& params,
                                       std::size_t n_samples,
                                       std::uint64_t seed, const FluxFn& flux) {
    const FluxFn f =
        flux ? flux : FluxFn([](const StateJet& j, const MaterialParams& p) {
            return fluxes(j, p);
        });
    FluxLocalityReport rep;
    const AuditRanges R;
    for (std::size_t i = 0; i < n_samples; ++i) {
        auto rng = sample_stream(seed, i, 2);
        const StateJet jet = random_jet(rng, R);
        auto slot = [&] { return rng.uniform(R.slot_lo, R.slot_hi); };
        Vec3 base{};
        try {
            base = f(jet, params).first;
        } catch (const std::exception&) {
            rep.pass = false;
            continue;
        }
        auto delta = [&](const StateJet& pert) {
            double d = 0;
            try {
                const Vec3 J = f(pert, params).first;
                for (int k = 0; k < 3; ++k) d = std::max(d, std::abs(J[k] - base[k]));
            } catch (const std::exception&) {
                d = std::numeric_limits<double>::infinity();
            }
            return d;
        };
        StateJet a = jet;
        for (auto& s : a.v_g) s = slot();
        rep.max_dJm_vgrad = std::max(rep.max_dJm_vgrad, delta(a));
        StateJet b = jet;
        for (auto& s : b.eps_g) s = slot();
        rep.max_dJm_epsgrad = std::max(rep.max_dJm_epsgrad, delta(b));
        StateJet c = jet;
        for (auto& s : c.rho_h) s = slot();
        rep.max_dJm_rhohess = std::max(rep.max_dJm_rhohess, delta(c));
        StateJet d = jet;
        for (auto& s : d.c_h) s = slot();
        rep.max_dJm_chess = std::max(rep.max_dJm_chess, delta(d));
    }
    if (rep.max_dJm_vgrad > 0 || rep.max_dJm_epsgrad > 0 ||
        rep.max_dJm_rhohess > 0 || rep.max_dJm_chess > 0)
        rep.pass = false;
    return rep;
}

ConcavityReport check_entropy_concavity(double rho, double c, double eps,
                                        const MaterialParams& params) {
    const EntropyCoeffs ec = entropy_coefficients(rho, c, eps, params);
    const double a = ec.s_hat1, d = ec.s_hat3, b = 0.5 * ec.s_hat2;
    const double mean = 0.5 * (a + d);
    const double disc = std::sqrt(0.25 * (a - d) * (a - d) + b * b);
    ConcavityReport rep;
    rep.ev_min = mean - disc;
    rep.ev_max = mean + disc;
    rep.pass = rep.ev_max <= 1e-12;
    return rep;
}

ConsistencyReport check_multiplier_consistency(const MaterialParams& params,
                                               std::size_t n_jets,
                                               std::uint64_t seed,
                                               const AuditRanges& ranges,
                                               double rel_tol, double step) {
    ConsistencyReport rep;
    auto add = [&rep](const std::string& name) {
        rep.checks.push_back({name, 0.0, true});
        return rep.checks.size() - 1;
    };
    const std::size_t i_lam1 = add("lam1_mass");
    const std::size_t i_lam2 = add("lam2_concentration");
    const std::size_t i_lam3 = add("lam3_momentum");
    const std::size_t i_lam4 = add("lam4_energy");
    const std::size_t i_Lam1 = add("Lam1_mass_gradient");
    const std::size_t i_Lam2 = add("Lam2_concentration_gradient");
    const std::size_t i_Lam3 = add("Lam3_velocity_gradient");
    const std::size_t i_Lam4 = add("Lam4_energy_gradient");
    const std::size_t i_Th1 = add("Th1_mass_hessian");
    const std::size_t i_Th2 = add("Th2_concentration_hessian");

    auto push = [&rep](std::size_t idx, double err) {
        rep.checks[idx].max_rel_err = std::max(rep.checks[idx].max_rel_err, err);
    };

    for (std::size_t n = 0; n < n_jets; ++n) {
        auto rng = sample_stream(seed, n, 3);
        const StateJet jet = random_jet(rng, ranges);
        Multipliers mu;
        try {
            mu = lagrange_multipliers(jet, params);
        } catch (const std::exception&) {
            rep.pass = false;
            continue;
        }
        auto fd = [&](auto&& bump) {
            StateJet jp = jet, jm = jet;
            bump(jp, +step);
            bump(jm, -step);
            return (specific_entropy(jp, params) - specific_entropy(jm, params)) /
                   (2.0 * step);
        };
        const double rho = jet.rho;
        const double fd_r = fd([](StateJet& j, double d) { j.rho += d; });
        const double fd_c = fd([](StateJet& j, double d) { j.c += d; });
        const double fd_e = fd([](StateJet& j, double d) { j.eps += d; });
        Vec3 fd_rg{}, fd_cg{}, fd_eg{};
        for (int k = 0; k < 3; ++k) {
            fd_rg[k] = fd([k](StateJet& j, double d) { j.rho_g[k] += d; });
            fd_cg[k] = fd([k](StateJet& j, double d) { j.c_g[k] += d; });
            fd_eg[k] = fd([k](StateJet& j, double d) { j.eps_g[k] += d; });
        }
        Mat3 fd_vg{};
        Mat3 fd_rh{}, fd_ch{};  // logical (i,k) entries of packed slots
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) {
                fd_vg[mat3_index(i, k)] =
                    fd([i, k](StateJet& j, double d) { j.v_g[mat3_index(i, k)] += d; });
                fd_rh[mat3_index(i, k)] = fd(
                    [i, k](StateJet& j, double d) { j.rho_h[sym2_index(i, k)] += d; });
                fd_ch[mat3_index(i, k)] = fd(
                    [i, k](StateJet& j, double d) { j.c_h[sym2_index(i, k)] += d; });
            }

        push(i_lam1, rel_err(mu.lam1, rho * fd_r));
        double lam2_ref = fd_c;
        for (int k = 0; k < 3; ++k) {
            double inner = fd_cg[k];
            for (int i = 0; i < 3; ++i)
                inner -= 2.0 * jet.rho_g[i] / rho * fd_ch[mat3_index(i, k)];
            lam2_ref -= jet.rho_g[k] / rho * inner;
            for (int i = 0; i < 3; ++i)
                lam2_ref -= jet.rho_hess(i, k) / rho * fd_ch[mat3_index(i, k)];
        }
        push(i_lam2, rel_err(mu.lam2, lam2_ref));
        for (int i = 0; i < 3; ++i) {
            double lam3_ref = 0;
            for (int k = 0; k < 3; ++k)
                lam3_ref -= jet.rho_g[k] / rho * fd_vg[mat3_index(i, k)];
            push(i_lam3, rel_err(mu.lam3[i], lam3_ref));
        }
        double lam4_ref = fd_e;
        for (int k = 0; k < 3; ++k) lam4_ref -= jet.rho_g[k] / rho * fd_eg[k];
        push(i_lam4, rel_err(mu.lam4, lam4_ref));
        for (int k = 0; k < 3; ++k) {
            push(i_Lam1, rel_err(mu.Lam1[k], rho * fd_rg[k]));
            double Lam2_ref = fd_cg[k];
            for (int i = 0; i < 3; ++i)
                Lam2_ref -= 2.0 * jet.rho_g[i] / rho * fd_ch[mat3_index(i, k)];
            push(i_Lam2, rel_err(mu.Lam2[k], Lam2_ref));
            push(i_Lam4, rel_err(mu.Lam4[k], fd_eg[k]));
        }
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) {
                push(i_Lam3, rel_err(mu.Lam3[mat3_index(i, k)], fd_vg[mat3_index(i, k)]));
                push(i_Th1, rel_err(mu.Th1[mat3_index(i, k)], rho * fd_rh[mat3_index(i, k)]));
                push(i_Th2, rel_err(mu.Th2[mat3_index(i, k)], fd_ch[mat3_index(i, k)]));
            }
    }

    for (auto& c : rep.checks) {
        c.pass = c.max_rel_err <= rel_tol;
        rep.max_rel_err = std::max(rep.max_rel_err, c.max_rel_err);
        if (!c.pass) rep.pass = false;
    }
    return rep;
}

ConsistencyReport check_tau_identities(const MaterialParams& params, int grid_n,
                                       const AuditRanges& ranges, double rel_tol,
                                       double step) {
    ConsistencyReport rep;
    for (int k : {0, 1, 2, 3, 4, 5, 7, 8, 9})
        rep.checks.push_back({"tau" + std::to_string(k), 0.0, true});
    auto lerp = [](double lo, double hi, int i, int n) {
        return n <= 1 ? lo : lo + (hi - lo) * i / (n - 1);
    };
    const double h = step;
    for (int ir = 0; ir < grid_n; ++ir)
        for (int ic = 0; ic < grid_n; ++ic)
            for (int ie = 0; ie < grid_n; ++ie) {
                const double rho = lerp(ranges.rho_lo, ranges.rho_hi, ir, grid_n);
                const double c = lerp(ranges.c_lo, ranges.c_hi, ic, grid_n);
                const double eps = lerp(ranges.eps_lo, ranges.eps_hi, ie, grid_n);
                MaterialEval m{};
                StressCoeffs tc{};
                EntropyCoeffs e0{}, erp{}, erm{}, ecp{}, ecm{};
                try {
                    m = eval_material(rho, c, eps, params);
                    tc = stress_coefficients(rho, c, eps, params);
                    e0 = entropy_coefficients(rho, c, eps, params);
                    erp = entropy_coefficients(rho + h, c, eps, params);
                    erm = entropy_coefficients(rho - h, c, eps, params);
                    ecp = entropy_coefficients(rho, c + h, eps, params);
                    ecm = entropy_coefficients(rho, c - h, eps, params);
                } catch (const std::exception&) {
                    rep.pass = false;
                    continue;
                }
                const double theta = 1.0 / m.s01p;
                const double fd_sh0_r = (erp.s_hat0 - erm.s_hat0) / (2.0 * h);
                const double fd_r2sh1 = ((rho + h) * (rho + h) * erp.s_hat1 -
                                         (rho - h) * (rho - h) * erm.s_hat1) /
                                        (2.0 * h);
                const double fd_r2sh2 = ((rho + h) * (rho + h) * erp.s_hat2 -
                                         (rho - h) * (rho - h) * erm.s_hat2) /
                                        (2.0 * h);
                const double fd_sh1_c = (ecp.s_hat1 - ecm.s_hat1) / (2.0 * h);
                const double fd_sh2_c = (ecp.s_hat2 - ecm.s_hat2) / (2.0 * h);
                const double ref[9] = {
                    rho * rho * fd_sh0_r * theta,
                    -fd_r2sh1 * theta,
                    -(fd_r2sh2 + rho * rho * fd_sh1_c) * theta,
                    -rho * (rho * fd_sh2_c + e0.s_hat3) * theta,
                    -2.0 * rho * rho * e0.s_hat1 * theta,
                    -rho * rho * e0.s_hat2 * theta,
                    2.0 * rho * e0.s_hat1 * theta,
                    2.0 * rho * e0.s_hat2 * theta,
                    2.0 * rho * e0.s_hat3 * theta,
                };
                const int tau_idx[9] = {0, 1, 2, 3, 4, 5, 7, 8, 9};
                for (int q = 0; q < 9; ++q) {
                    const double err = rel_err(tc.tau[tau_idx[q]], ref[q]);
                    rep.checks[q].max_rel_err =
                        std::max(rep.checks[q].max_rel_err, err);
                }
            }
    for (auto& c : rep.checks) {
        c.pass = c.max_rel_err <= rel_tol;
        rep.max_rel_err = std::max(rep.max_rel_err, c.max_rel_err);
        if (!c.pass) rep.pass = false;
    }
    return rep;
}

}  // namespace kortmix
