#pragma once

#include <array>
#include <string>
#include <vector>

namespace kortmix {

/// Free material content of the model: the constants of the diffusional
/// flux coefficients J_rho = kappa1*c + kappa2 and J_c = -kappa1*rho + kappa3,
/// the gradient-entropy constant s3, the scalar laws
///   s01(eps) = cv*ln(eps/eps_ref)       (thermal entropy, theta = eps/cv)
///   s02(x)   = a0*x + a2*x^2/2          (x = J_rho/J_c)
///   s03(rho) = -R*ln(rho/rho_ref)
///   phi'(rho) = -K
/// plus the viscosities tau6/tau12, the heat-flux coefficient q0, and the
/// working density interval where J_c must stay negative.
struct MaterialParams {
    double kappa1 = 1.0;
    double kappa2 = 0.2;
    double kappa3 = -0.5;
    double s3 = -0.1;
    double cv = 1.0;
    double eps_ref = 1.0;
    double rho_ref = 1.0;
    double a0 = 0.3;
    double a2 = 0.5;
    double R = 1.0;
    double K = 0.01;
    double tau6 = 0.1;
    double tau12 = 0.2;
    double q0 = -0.5;
    double rho_min = 0.5;
    double rho_max = 2.0;

    // Fault-injection overrides for the computed stress coefficients,
    // settable only through --mutate; an overridden coefficient is held
    // constant (zero derivatives).
    std::array<double, 13> tau_override{};
    std::array<bool, 13> tau_override_on{};
    bool tampered = false;

    double effective_tau6() const { return tau_override_on[6] ? tau_override[6] : tau6; }
    double effective_tau12() const { return tau_override_on[12] ? tau_override[12] : tau12; }
};

/// Scalar-law values and derivatives at a point (rho, c, eps).
struct MaterialEval {
    double s01, s01p, s01pp;
    double Jr, Jc, x;           // J_rho, J_c, x = J_rho/J_c
    double s02, s02p, s02pp;
    double s03, s03p, s03pp;
    double phi, phip, phipp;    // phi and its rho-derivatives
    double rphip_d;             // d(rho*phi')/drho
    double rphip_dd;            // d2(rho*phi')/drho2
    double tau6, tau12, q;
};

/// Evaluates all scalar laws; throws std::domain_error if J_c >= 0 at the
/// given rho (singular denominator) or eps <= 0 (log domain).
MaterialEval eval_material(double rho, double c, double eps,
                           const MaterialParams& params);

struct AdmissibilityCondition {
    std::string name;
    bool pass = true;
    double worst_value = 0.0;  // signed margin; violating sign fails
    double worst_rho = 0.0;
    double worst_c = 0.0;      // only meaningful for the s02 convexity scan
};

struct AdmissibilityReport {
    bool pass = true;
    std::vector<AdmissibilityCondition> conditions;
};

/// Verifies, over a grid of rho in [rho_min, rho_max] (and c in [0,1]
/// where the reachable x-range matters):
///   (i)  kappa2^2*s3/J_c^2 - phi' >= 0 and s3 <= 0  (entropy maximal at
///        equilibrium),
///   (ii) J_c < 0 strictly,
///   (iii) q <= 0, s02'' >= 0 over the reachable x-range, tau6 >= 0,
///        tau12 >= 0.
/// Reports pass/fail per condition with the worst-case grid point.
AdmissibilityReport check_admissibility(const MaterialParams& params,
                                        int grid_n = 512);

}  // namespace kortmix
