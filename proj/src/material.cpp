#include "kortmix/material.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace kortmix {

MaterialEval eval_material(double rho, double c, double eps,
                           const MaterialParams& p) {
    if (!(eps > 0.0))
        throw std::domain_error("eval_material: eps must be positive");
    const double Jc = -p.kappa1 * rho + p.kappa3;
    if (!(Jc < 0.0))
        throw std::domain_error("eval_material: J_c >= 0 (singular flux denominator)");

    MaterialEval m;
    m.Jr = p.kappa1 * c + p.kappa2;
    m.Jc = Jc;
    m.x = m.Jr / m.Jc;

    m.s01 = p.cv * std::log(eps / p.eps_ref);
    m.s01p = p.cv / eps;
    m.s01pp = -p.cv / (eps * eps);

    m.s02 = p.a0 * m.x + 0.5 * p.a2 * m.x * m.x;
    m.s02p = p.a0 + p.a2 * m.x;
    m.s02pp = p.a2;

    m.s03 = -p.R * std::log(rho / p.rho_ref);
    m.s03p = -p.R / rho;
    m.s03pp = p.R / (rho * rho);

    m.phi = -p.K * rho;
    m.phip = -p.K;
    m.phipp = 0.0;
    m.rphip_d = -p.K;   // d(rho*phi')/drho for constant phi'
    m.rphip_dd = 0.0;

    m.tau6 = p.effective_tau6();
    m.tau12 = p.effective_tau12();
    m.q = p.q0;
    return m;
}

AdmissibilityReport check_admissibility(const MaterialParams& p, int grid_n) {
    AdmissibilityReport rep;
    if (grid_n < 2) grid_n = 2;
    const double t6 = p.effective_tau6();
    const double t12 = p.effective_tau12();

    AdmissibilityCondition s3_sign{"s3_nonpositive"};
    s3_sign.pass = p.s3 <= 0.0;
    s3_sign.worst_value = p.s3;
    rep.conditions.push_back(s3_sign);

    // (i) kappa2^2*s3/J_c^2 - phi' >= 0, worst over the rho grid
    AdmissibilityCondition maxent{"max_entropy"};
    maxent.worst_value = std::numeric_limits<double>::infinity();
    // (ii) J_c < 0 strictly
    AdmissibilityCondition jc_neg{"Jc_negative"};
    jc_neg.worst_value = -std::numeric_limits<double>::infinity();

    for (int i = 0; i < grid_n; ++i) {
        const double rho = p.rho_min +
            (p.rho_max - p.rho_min) * static_cast<double>(i) / (grid_n - 1);
        const double Jc = -p.kappa1 * rho + p.kappa3;
        if (Jc > jc_neg.worst_value) {
            jc_neg.worst_value = Jc;
            jc_neg.worst_rho = rho;
        }
        const double margin = (Jc != 0.0)
            ? p.kappa2 * p.kappa2 * p.s3 / (Jc * Jc) - (-p.K)
            : -std::numeric_limits<double>::infinity();
        if (margin < maxent.worst_value) {
            maxent.worst_value = margin;
            maxent.worst_rho = rho;
        }
    }
    maxent.pass = maxent.worst_value >= 0.0;
    jc_neg.pass = jc_neg.worst_value < 0.0;
    rep.conditions.push_back(maxent);
    rep.conditions.push_back(jc_neg);

    AdmissibilityCondition q_sign{"q_nonpositive"};
    q_sign.pass = p.q0 <= 0.0;
    q_sign.worst_value = p.q0;
    rep.conditions.push_back(q_sign);

    // s02'' over the reachable x-range: scan (rho, c) in
    // [rho_min, rho_max] x [0, 1]
    AdmissibilityCondition s02_convex{"s02_convex"};
    s02_convex.worst_value = std::numeric_limits<double>::infinity();
    const int c_n = 33;
    for (int i = 0; i < grid_n; ++i) {
        const double rho = p.rho_min +
            (p.rho_max - p.rho_min) * static_cast<double>(i) / (grid_n - 1);
        const double Jc = -p.kappa1 * rho + p.kappa3;
        if (Jc == 0.0) continue;
        for (int k = 0; k < c_n; ++k) {
            const double c = static_cast<double>(k) / (c_n - 1);
            const double s02pp = p.a2;  // constant for the default quadratic law
            (void)c;
            if (s02pp < s02_convex.worst_value) {
                s02_convex.worst_value = s02pp;
                s02_convex.worst_rho = rho;
                s02_convex.worst_c = c;
            }
        }
    }
    s02_convex.pass = s02_convex.worst_value >= 0.0;
    rep.conditions.push_back(s02_convex);

    AdmissibilityCondition tau6_sign{"tau6_nonnegative"};
    tau6_sign.pass = t6 >= 0.0;
    tau6_sign.worst_value = t6;
    rep.conditions.push_back(tau6_sign);

    AdmissibilityCondition tau12_sign{"tau12_nonnegative"};
    tau12_sign.pass = t12 >= 0.0;
    tau12_sign.worst_value = t12;
    rep.conditions.push_back(tau12_sign);

    rep.pass = true;
    for (const auto& cnd : rep.conditions) rep.pass = rep.pass && cnd.pass;
    return rep;
}

}  // namespace kortmix
