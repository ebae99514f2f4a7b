#include "kortmix/constitutive.hpp"

#include <cmath>
#include <stdexcept>

namespace kortmix {

namespace {

struct GradSquares {
    double gr2, grgc, gc2;
};

GradSquares grad_squares(const StateJet& j) {
    GradSquares g{0, 0, 0};
    for (int k = 0; k < 3; ++k) {
        g.gr2 += j.rho_g[k] * j.rho_g[k];
        g.grgc += j.rho_g[k] * j.c_g[k];
        g.gc2 += j.c_g[k] * j.c_g[k];
    }
    return g;
}

}  // namespace

EntropyCoeffs entropy_coefficients(double rho, double c, double eps,
                                   const MaterialParams& p) {
    const MaterialEval m = eval_material(rho, c, eps, p);
    EntropyCoeffs ec;
    ec.J_rho = m.Jr;
    ec.J_c = m.Jc;
    ec.s_hat3 = p.s3 / rho;
    ec.s_hat2 = 2.0 * m.x * ec.s_hat3;
    const double u = m.Jr * m.Jr - p.kappa2 * p.kappa2;
    ec.s_hat1 = u / (m.Jc * m.Jc) * ec.s_hat3 + m.phip / rho;
    ec.s_hat0 = m.s01 + m.Jc * m.s02 + m.s03;
    return ec;
}

EntropyPartials entropy_partials(double rho, double c, double eps,
                                 const MaterialParams& p) {
    const MaterialEval m = eval_material(rho, c, eps, p);
    const double k1 = p.kappa1;
    const double s3 = p.s3;
    const double Jr = m.Jr, Jc = m.Jc;
    const double Jc2 = Jc * Jc, Jc3 = Jc2 * Jc;
    const double u = Jr * Jr - p.kappa2 * p.kappa2;
    EntropyPartials sp;
    sp.dsh0_dr = -k1 * (m.s02 - m.x * m.s02p) + m.s03p;
    sp.dsh0_dc = k1 * m.s02p;
    sp.dsh0_de = m.s01p;
    sp.dsh1_dr = u * s3 * (2.0 * k1 / (Jc3 * rho) - 1.0 / (Jc2 * rho * rho)) +
                 m.phipp / rho - m.phip / (rho * rho);
    sp.dsh1_dc = 2.0 * Jr * k1 * s3 / (Jc2 * rho);
    sp.dsh2_dr = 2.0 * s3 * (k1 * Jr / (Jc2 * rho) - m.x / (rho * rho));
    sp.dsh2_dc = 2.0 * s3 * k1 / (Jc * rho);
    sp.dsh3_dr = -s3 / (rho * rho);
    sp.dsh3_dc = 0.0;
    sp.d2sh0_dr2 = k1 * k1 * Jr * Jr * m.s02pp / Jc3 + m.s03pp;
    sp.d2sh0_drdc = k1 * k1 * Jr * m.s02pp / Jc2;
    sp.d2sh0_dc2 = k1 * k1 * m.s02pp / Jc;
    return sp;
}

double specific_entropy(const StateJet& jet, const MaterialParams& p) {
    const EntropyCoeffs ec = entropy_coefficients(jet.rho, jet.c, jet.eps, p);
    const GradSquares g = grad_squares(jet);
    return ec.s_hat0 + ec.s_hat1 * g.gr2 + ec.s_hat2 * g.grgc + ec.s_hat3 * g.gc2;
}

double temperature(double eps, const MaterialParams& p) {
    if (!(eps > 0.0))
        throw std::domain_error("temperature: eps must be positive");
    const double s01p = p.cv / eps;
    return 1.0 / s01p;
}

std::pair<Vec3, Vec3> fluxes(const StateJet& jet, const MaterialParams& p) {
    const MaterialEval m = eval_material(jet.rho, jet.c, jet.eps, p);
    Vec3 Jm{}, q{};
    for (int k = 0; k < 3; ++k) {
        Jm[k] = m.Jr * jet.rho_g[k] + m.Jc * jet.c_g[k];
        q[k] = m.q * jet.eps_g[k];
    }
    return {Jm, q};
}

double fourier_conductivity(double eps, const MaterialParams& p) {
    if (!(eps > 0.0))
        throw std::domain_error("fourier_conductivity: eps must be positive");
    const double s01p = p.cv / eps;
    const double s01pp = -p.cv / (eps * eps);
    return p.q0 * s01p * s01p / s01pp;
}

StressCoeffs stress_coefficients(double rho, double c, double eps,
                                 const MaterialParams& p) {
    const MaterialEval m = eval_material(rho, c, eps, p);
    const double theta = 1.0 / m.s01p;
    const double k1 = p.kappa1;
    const double s3 = p.s3;
    const double Jr = m.Jr, Jc = m.Jc;
    const double Jc2 = Jc * Jc, Jc3 = Jc2 * Jc;
    const double u = Jr * Jr - p.kappa2 * p.kappa2;
    const double w = Jc + 2.0 * k1 * rho;
    StressCoeffs tc;
    auto& t = tc.tau;
    t[0] = rho * rho * theta * (-k1 * (m.s02 - m.x * m.s02p) + m.s03p);
    t[1] = -theta * (u * w * s3 / Jc3 + m.rphip_d);
    t[2] = -2.0 * theta * Jr * w * s3 / Jc2;
    t[3] = -theta * w * s3 / Jc;
    t[4] = -2.0 * rho * theta * (u * s3 / Jc2 + m.phip);
    t[5] = -2.0 * rho * theta * Jr * s3 / Jc;
    t[6] = m.tau6;
    t[7] = 2.0 * theta * (u * s3 / Jc2 + m.phip);
    t[8] = 4.0 * theta * Jr * s3 / Jc;
    t[9] = 2.0 * theta * s3;
    t[10] = 0.0;
    t[11] = 0.0;
    t[12] = m.tau12;
    for (int k = 0; k < 13; ++k)
        if (p.tau_override_on[k]) t[k] = p.tau_override[k];
    return tc;
}

StressPartials stress_partials(double rho, double c, double eps,
                               const MaterialParams& p) {
    const MaterialEval m = eval_material(rho, c, eps, p);
    const EntropyPartials sp = entropy_partials(rho, c, eps, p);
    const double theta = 1.0 / m.s01p;
    const double theta_e = -m.s01pp / (m.s01p * m.s01p);
    const double k1 = p.kappa1;
    const double s3 = p.s3;
    const double Jr = m.Jr, Jc = m.Jc;
    const double Jc2 = Jc * Jc, Jc3 = Jc2 * Jc, Jc4 = Jc3 * Jc;
    const double u = Jr * Jr - p.kappa2 * p.kappa2;
    const double w = Jc + 2.0 * k1 * rho;

    StressPartials out;
    out.d_rho[0] = theta * (2.0 * rho * sp.dsh0_dr + rho * rho * sp.d2sh0_dr2);
    out.d_c[0] = rho * rho * theta * k1 * k1 * Jr * m.s02pp / Jc2;
    out.d_rho[1] = -theta * (u * k1 * (Jc + 3.0 * w) * s3 / Jc4 + m.rphip_dd);
    out.d_c[1] = -2.0 * theta * k1 * Jr * w * s3 / Jc3;
    out.d_rho[2] = -2.0 * theta * s3 * Jr * k1 * (Jc + 2.0 * w) / Jc3;
    out.d_c[2] = -2.0 * theta * s3 * k1 * w / Jc2;
    out.d_rho[3] = -theta * s3 * k1 * (Jc + w) / Jc2;
    out.d_c[3] = 0.0;
    out.d_rho[4] = -2.0 * theta * ((u * s3 / Jc2 + m.phip) +
                                   rho * (2.0 * k1 * u * s3 / Jc3 + m.phipp));
    out.d_c[4] = -4.0 * rho * theta * k1 * Jr * s3 / Jc2;
    out.d_rho[5] = -2.0 * theta * s3 * Jr * (Jc + k1 * rho) / Jc2;
    out.d_c[5] = -2.0 * rho * theta * k1 * s3 / Jc;
    out.d_rho[7] = 2.0 * theta * (2.0 * k1 * u * s3 / Jc3 + m.phipp);
    out.d_c[7] = 4.0 * theta * k1 * Jr * s3 / Jc2;
    out.d_rho[8] = 4.0 * theta * Jr * s3 * k1 / Jc2;
    out.d_c[8] = 4.0 * theta * k1 * s3 / Jc;
    out.d_rho[9] = 0.0;
    out.d_c[9] = 0.0;

    // eps-dependence enters every computed coefficient only through theta
    const StressCoeffs tc = stress_coefficients(rho, c, eps, p);
    for (int k : {0, 1, 2, 3, 4, 5, 7, 8, 9})
        out.d_eps[k] = tc.tau[k] / theta * theta_e;

    for (int k = 0; k < 13; ++k)
        if (p.tau_override_on[k]) {
            out.d_rho[k] = 0.0;
            out.d_c[k] = 0.0;
            out.d_eps[k] = 0.0;
        }
    return out;
}

Mat3 stress(const StateJet& jet, const MaterialParams& p) {
    const StressCoeffs tc = stress_coefficients(jet.rho, jet.c, jet.eps, p);
    const auto& t = tc.tau;
    const GradSquares g = grad_squares(jet);
    double lap_r = 0, lap_c = 0, G = 0;
    for (int k = 0; k < 3; ++k) {
        lap_r += jet.rho_hess(k, k);
        lap_c += jet.c_hess(k, k);
        G += jet.v_grad(k, k);
    }
    const double A = t[0] + t[1] * g.gr2 + t[2] * g.grgc + t[3] * g.gc2 +
                     t[4] * lap_r + t[5] * lap_c + t[6] * G;
    Mat3 T{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double val = t[7] * jet.rho_g[i] * jet.rho_g[j] +
                         0.5 * t[8] * (jet.rho_g[i] * jet.c_g[j] +
                                       jet.rho_g[j] * jet.c_g[i]) +
                         t[9] * jet.c_g[i] * jet.c_g[j] +
                         t[10] * jet.rho_hess(i, j) + t[11] * jet.c_hess(i, j) +
                         t[12] * jet.L(i, j);
            if (i == j) val += A;
            T[mat3_index(i, j)] = val;
        }
    return T;
}

Vec3 entropy_flux(const StateJet& jet, const MaterialParams& p) {
    const MaterialEval m = eval_material(jet.rho, jet.c, jet.eps, p);
    const EntropyCoeffs ec = entropy_coefficients(jet.rho, jet.c, jet.eps, p);
    const double rho = jet.rho;
    double lap_r = 0, lap_c = 0, G = 0;
    for (int k = 0; k < 3; ++k) {
        lap_r += jet.rho_hess(k, k);
        lap_c += jet.c_hess(k, k);
        G += jet.v_grad(k, k);
    }
    const double D = m.Jr * lap_r + m.Jc * lap_c;
    const double dsh0_dc = p.kappa1 * m.s02p;
    const double F1 = ec.s_hat2 * D + 2.0 * rho * rho * ec.s_hat1 * G;
    const double F2 = 2.0 * ec.s_hat3 * D + rho * rho * ec.s_hat2 * G;
    Vec3 Js{};
    for (int k = 0; k < 3; ++k) {
        const double Jm_k = m.Jr * jet.rho_g[k] + m.Jc * jet.c_g[k];
        Js[k] = m.q * jet.eps_g[k] * m.s01p + dsh0_dc * Jm_k +
                F1 * jet.rho_g[k] + F2 * jet.c_g[k];
    }
    return Js;
}

FluxSet flux_set(const StateJet& jet, const MaterialParams& p) {
    FluxSet fs;
    auto [Jm, q] = fluxes(jet, p);
    fs.Jm = Jm;
    fs.q = q;
    fs.T = stress(jet, p);
    fs.Js = entropy_flux(jet, p);
    return fs;
}

Multipliers lagrange_multipliers(const StateJet& jet, const MaterialParams& p) {
    const EntropyCoeffs ec = entropy_coefficients(jet.rho, jet.c, jet.eps, p);
    const EntropyPartials sp = entropy_partials(jet.rho, jet.c, jet.eps, p);
    const GradSquares g = grad_squares(jet);
    const double rho = jet.rho;

    const double ds_dr = sp.dsh0_dr + sp.dsh1_dr * g.gr2 +
                         sp.dsh2_dr * g.grgc + sp.dsh3_dr * g.gc2;
    const double ds_dc = sp.dsh0_dc + sp.dsh1_dc * g.gr2 +
                         sp.dsh2_dc * g.grgc + sp.dsh3_dc * g.gc2;
    const double ds_de = sp.dsh0_de;
    Vec3 ds_drg{}, ds_dcg{};
    for (int k = 0; k < 3; ++k) {
        ds_drg[k] = 2.0 * ec.s_hat1 * jet.rho_g[k] + ec.s_hat2 * jet.c_g[k];
        ds_dcg[k] = ec.s_hat2 * jet.rho_g[k] + 2.0 * ec.s_hat3 * jet.c_g[k];
    }
    // the entropy ansatz carries no L_ij, grad eps, or Hessian dependence
    auto ds_dvg = [](int, int) { return 0.0; };
    auto ds_deg = [](int) { return 0.0; };
    auto ds_drh = [](int, int) { return 0.0; };
    auto ds_dch = [](int, int) { return 0.0; };

    Multipliers mu;
    mu.lam1 = rho * ds_dr;
    mu.lam2 = ds_dc;
    for (int k = 0; k < 3; ++k) {
        double inner = ds_dcg[k];
        for (int i = 0; i < 3; ++i)
            inner -= 2.0 * jet.rho_g[i] / rho * ds_dch(i, k);
        mu.lam2 -= jet.rho_g[k] / rho * inner;
        for (int i = 0; i < 3; ++i)
            mu.lam2 -= jet.rho_hess(i, k) / rho * ds_dch(i, k);
    }
    for (int i = 0; i < 3; ++i) {
        mu.lam3[i] = 0.0;
        for (int k = 0; k < 3; ++k)
            mu.lam3[i] -= jet.rho_g[k] / rho * ds_dvg(i, k);
    }
    mu.lam4 = ds_de;
    for (int k = 0; k < 3; ++k) mu.lam4 -= jet.rho_g[k] / rho * ds_deg(k);
    for (int k = 0; k < 3; ++k) {
        mu.Lam1[k] = rho * ds_drg[k];
        mu.Lam2[k] = ds_dcg[k];
        for (int i = 0; i < 3; ++i)
            mu.Lam2[k] -= 2.0 * jet.rho_g[i] / rho * ds_dch(i, k);
        mu.Lam4[k] = ds_deg(k);
    }
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) {
            mu.Lam3[mat3_index(i, k)] = ds_dvg(i, k);
            mu.Th1[mat3_index(i, k)] = rho * ds_drh(i, k);
            mu.Th2[mat3_index(i, k)] = ds_dch(i, k);
        }
    return mu;
}

KortewegCoeffs korteweg_reduction(double rho, double eps,
                                  const MaterialParams& p, double c_uniform) {
    const StressCoeffs tc = stress_coefficients(rho, c_uniform, eps, p);
    KortewegCoeffs kc;
    kc.alpha1 = tc.tau[1];
    kc.alpha2 = tc.tau[4];
    kc.alpha3 = tc.tau[7];
    kc.alpha4 = tc.tau[10];
    kc.p = -tc.tau[0];
    return kc;
}

}  // namespace kortmix
