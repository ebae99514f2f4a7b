#pragma once

#include <utility>

#include "kortmix/jet.hpp"
#include "kortmix/material.hpp"

namespace kortmix {

/// Coefficients of the specific-entropy expansion
///   s = s_hat0 + s_hat1 |grad rho|^2 + s_hat2 grad rho . grad c
///     + s_hat3 |grad c|^2
/// together with the diffusional flux coefficients.
struct EntropyCoeffs {
    double s_hat0, s_hat1, s_hat2, s_hat3;
    double J_rho, J_c;
};

/// Analytic partials of the entropy coefficients, hand-derived from the
/// solved forms (cross-checked against finite differences in the tests).
struct EntropyPartials {
    double dsh0_dr, dsh0_dc, dsh0_de;
    double dsh1_dr, dsh1_dc;
    double dsh2_dr, dsh2_dc;
    double dsh3_dr, dsh3_dc;
    double d2sh0_dr2, d2sh0_drdc, d2sh0_dc2;
};

/// The thirteen scalar coefficients of the stress ansatz
///   T_ij = (tau0 + tau1|grad rho|^2 + tau2 grad rho.grad c
///           + tau3|grad c|^2 + tau4 lap rho + tau5 lap c
///           + tau6 div v) delta_ij
///        + tau7 rho_,i rho_,j + tau8 (rho_,i c_,j + rho_,j c_,i)/2
///        + tau9 c_,i c_,j + tau10 rho_,ij + tau11 c_,ij + tau12 L_ij.
struct StressCoeffs {
    std::array<double, 13> tau{};
};

/// Gradients of the stress coefficients with respect to (rho, c, eps);
/// tau6/tau10/tau11/tau12 are constants with zero derivatives.
struct StressPartials {
    std::array<double, 13> d_rho{};
    std::array<double, 13> d_c{};
    std::array<double, 13> d_eps{};
};

/// All four constitutive fluxes at a point.
struct FluxSet {
    Vec3 Jm{};  // diffusional mass flux
    Vec3 q{};   // heat flux
    Mat3 T{};   // Cauchy stress (symmetric)
    Vec3 Js{};  // entropy flux
};

/// The ten Lagrange-multiplier families attached to the balance laws,
/// their gradients, and their second gradients.
struct Multipliers {
    double lam1 = 0, lam2 = 0, lam4 = 0;
    Vec3 lam3{};
    Vec3 Lam1{}, Lam2{}, Lam4{};
    Mat3 Lam3{}, Th1{}, Th2{};
};

/// Coefficients of the single-constituent capillarity stress
///   T = (-p + alpha1 |grad rho|^2 + alpha2 lap rho) I
///     + alpha3 grad rho (x) grad rho + alpha4 hess rho.
struct KortewegCoeffs {
    double alpha1, alpha2, alpha3, alpha4;
    double p;
};

/// Solved entropy coefficients:
///   s_hat0 = s01(eps) + J_c s02(x) + s03(rho),  x = J_rho/J_c,
///   s_hat1 = ((J_rho^2 - kappa2^2)/J_c^2) s3/rho + phi'/rho,
///   s_hat2 = 2 x s3/rho,  s_hat3 = s3/rho.
EntropyCoeffs entropy_coefficients(double rho, double c, double eps,
                                   const MaterialParams& params);

EntropyPartials entropy_partials(double rho, double c, double eps,
                                 const MaterialParams& params);

/// s = s_hat0 + s_hat1 |grad rho|^2 + s_hat2 grad rho.grad c + s_hat3 |grad c|^2.
double specific_entropy(const StateJet& jet, const MaterialParams& params);

/// theta = 1/s01'(eps); eps/cv for the default thermal law.
double temperature(double eps, const MaterialParams& params);

/// J^(m)_j = J_rho rho_,j + J_c c_,j  and  q_j = q0 eps_,j.
std::pair<Vec3, Vec3> fluxes(const StateJet& jet, const MaterialParams& params);

/// Conductivity k >= 0 of the equivalent Fourier form q_j = -k theta_,j;
/// k = q0 s01'^2/s01'' (= -q0 cv for the default law).
double fourier_conductivity(double eps, const MaterialParams& params);

StressCoeffs stress_coefficients(double rho, double c, double eps,
                                 const MaterialParams& params);

StressPartials stress_partials(double rho, double c, double eps,
                               const MaterialParams& params);

/// Assembles the stress ansatz from stress_coefficients and the jet slots.
Mat3 stress(const StateJet& jet, const MaterialParams& params);

/// J^(s)_j = q_j/theta + (ds_hat0/dc) J^(m)_j
///         + (s_hat2 D + 2 rho^2 s_hat1 div v) rho_,j
///         + (2 s_hat3 D + rho^2 s_hat2 div v) c_,j,
/// with D = J_rho lap rho + J_c lap c and ds_hat0/dc = kappa1 s02'(x).
Vec3 entropy_flux(const StateJet& jet, const MaterialParams& params);

FluxSet flux_set(const StateJet& jet, const MaterialParams& params);

/// Multipliers evaluated under the entropy ansatz.  The general
/// expressions contain partials with respect to L_ij, grad eps, and the
/// rho/c Hessians; those vanish identically here, so lam3, Lam3, Lam4,
/// Th1, Th2 are all zero and lam4 = ds/deps = s01'.
Multipliers lagrange_multipliers(const StateJet& jet, const MaterialParams& params);

/// Single-constituent (uniform-c) reduction of the stress:
/// (alpha1, alpha2, alpha3, alpha4, p) = (tau1, tau4, tau7, 0, -tau0)
/// evaluated at concentration `c_uniform` (default 0).
KortewegCoeffs korteweg_reduction(double rho, double eps,
                                  const MaterialParams& params,
                                  double c_uniform = 0.0);

}  // namespace kortmix
