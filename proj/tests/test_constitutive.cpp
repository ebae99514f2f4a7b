#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kortmix/audit.hpp"
#include "kortmix/constitutive.hpp"
#include "kortmix/jet.hpp"
#include "kortmix/rng.hpp"

using namespace kortmix;

namespace {

double rel_err(double a, double b) {
    return std::fabs(a - b) / std::max({1.0, std::fabs(a), std::fabs(b)});
}

StateJet sample_jet(std::uint64_t seed) {
    SplitMix64 rng(seed);
    return random_jet(rng, AuditRanges{});
}

// independent transcription of the documented stress ansatz
Mat3 assemble_stress(const StateJet& j, const MaterialParams& p) {
    const StressCoeffs tc = stress_coefficients(j.rho, j.c, j.eps, p);
    double gr2 = 0, grgc = 0, gc2 = 0, lap_r = 0, lap_c = 0, G = 0;
    for (int k = 0; k < 3; ++k) {
        gr2 += j.rho_g[k] * j.rho_g[k];
        grgc += j.rho_g[k] * j.c_g[k];
        gc2 += j.c_g[k] * j.c_g[k];
        lap_r += j.rho_hess(k, k);
        lap_c += j.c_hess(k, k);
        G += j.v_grad(k, k);
    }
    const double A = tc.tau[0] + tc.tau[1] * gr2 + tc.tau[2] * grgc +
                     tc.tau[3] * gc2 + tc.tau[4] * lap_r + tc.tau[5] * lap_c +
                     tc.tau[6] * G;
    Mat3 T{};
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) {
            double t = (i == k) ? A : 0.0;
            t += tc.tau[7] * j.rho_g[i] * j.rho_g[k];
            t += tc.tau[8] * 0.5 * (j.rho_g[i] * j.c_g[k] + j.rho_g[k] * j.c_g[i]);
            t += tc.tau[9] * j.c_g[i] * j.c_g[k];
            t += tc.tau[10] * j.rho_hess(i, k);
            t += tc.tau[11] * j.c_hess(i, k);
            t += tc.tau[12] * j.L(i, k);
            T[mat3_index(i, k)] = t;
        }
    return T;
}

using Rot = std::array<std::array<double, 3>, 3>;

Rot rotation_zyx(double a, double b, double g) {
    const double ca = std::cos(a), sa = std::sin(a);
    const double cb = std::cos(b), sb = std::sin(b);
    const double cg = std::cos(g), sg = std::sin(g);
    const Rot Rz{{{ca, -sa, 0}, {sa, ca, 0}, {0, 0, 1}}};
    const Rot Ry{{{cb, 0, sb}, {0, 1, 0}, {-sb, 0, cb}}};
    const Rot Rx{{{1, 0, 0}, {0, cg, -sg}, {0, sg, cg}}};
    auto mul = [](const Rot& A, const Rot& B) {
        Rot C{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) C[i][j] += A[i][k] * B[k][j];
        return C;
    };
    return mul(Rz, mul(Ry, Rx));
}

StateJet rotate_jet(const StateJet& j, const Rot& R) {
    DenseJet d;
    d.rho = j.rho;
    d.c = j.c;
    d.eps = j.eps;
    for (int a = 0; a < 3; ++a)
        for (int i = 0; i < 3; ++i) {
            d.rho_g[a] += R[a][i] * j.rho_g[i];
            d.c_g[a] += R[a][i] * j.c_g[i];
            d.eps_g[a] += R[a][i] * j.eps_g[i];
            d.v[a] += R[a][i] * j.v[i];
        }
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int i = 0; i < 3; ++i)
                for (int k = 0; k < 3; ++k) {
                    const double w = R[a][i] * R[b][k];
                    d.rho_h[a][b] += w * j.rho_hess(i, k);
                    d.c_h[a][b] += w * j.c_hess(i, k);
                    d.eps_h[a][b] += w * j.eps_hess(i, k);
                    d.v_g[a][b] += w * j.v_grad(i, k);
                }
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int e = 0; e < 3; ++e)
                for (int i = 0; i < 3; ++i)
                    for (int k = 0; k < 3; ++k)
                        for (int m = 0; m < 3; ++m) {
                            const double w = R[a][i] * R[b][k] * R[e][m];
                            d.rho_t3[a][b][e] += w * j.rho_third(i, k, m);
                            d.c_t3[a][b][e] += w * j.c_third(i, k, m);
                            d.v_h[a][b][e] += w * j.v_hess(i, k, m);
                        }
    return pack_jet(d);
}

}  // namespace

TEST_CASE("entropy coefficients at the reference point") {
    const MaterialParams p;
    const EntropyCoeffs e = entropy_coefficients(1.0, 0.5, 2.0, p);
    CHECK(e.J_rho == doctest::Approx(0.7));
    CHECK(e.J_c == doctest::Approx(-1.5));
    CHECK(e.s_hat3 == doctest::Approx(-0.1));
    CHECK(e.s_hat2 == doctest::Approx(2.0 * (0.7 / -1.5) * (-0.1)));
    const double u = 0.7 * 0.7 - 0.2 * 0.2;
    CHECK(e.s_hat1 == doctest::Approx(u / (1.5 * 1.5) * (-0.1) + (-0.01)));
    const double x = 0.7 / -1.5;
    const double s02 = 0.3 * x + 0.5 * x * x / 2.0;
    CHECK(e.s_hat0 == doctest::Approx(std::log(2.0) + (-1.5) * s02));
}

TEST_CASE("vanishing gradient entropy when s3 = 0 and K = 0") {
    MaterialParams p;
    p.s3 = 0.0;
    p.K = 0.0;
    const EntropyCoeffs e = entropy_coefficients(1.2, 0.3, 1.5, p);
    CHECK(e.s_hat1 == 0.0);
    CHECK(e.s_hat2 == 0.0);
    CHECK(e.s_hat3 == 0.0);
}

TEST_CASE("kappa2 enters the gradient coefficient only through its square") {
    MaterialParams p;
    p.kappa1 = 0.0;  // J_rho = kappa2, so J_rho^2 - kappa2^2 = 0 for both signs
    const EntropyCoeffs plus = entropy_coefficients(1.0, 0.5, 2.0, p);
    p.kappa2 = -p.kappa2;
    const EntropyCoeffs minus = entropy_coefficients(1.0, 0.5, 2.0, p);
    CHECK(plus.s_hat1 == minus.s_hat1);
    CHECK(plus.s_hat3 == minus.s_hat3);
}

TEST_CASE("entropy coefficient partials match central differences") {
    const MaterialParams p;
    const double h = 1e-5;
    for (auto [rho, c, eps] : {std::array<double, 3>{1.0, 0.5, 2.0},
                               std::array<double, 3>{0.8, 0.2, 1.2},
                               std::array<double, 3>{1.6, 0.7, 2.6}}) {
        const EntropyPartials d = entropy_partials(rho, c, eps, p);
        const EntropyCoeffs rp = entropy_coefficients(rho + h, c, eps, p);
        const EntropyCoeffs rm = entropy_coefficients(rho - h, c, eps, p);
        const EntropyCoeffs cp = entropy_coefficients(rho, c + h, eps, p);
        const EntropyCoeffs cm = entropy_coefficients(rho, c - h, eps, p);
        const EntropyCoeffs ep = entropy_coefficients(rho, c, eps + h, p);
        const EntropyCoeffs em = entropy_coefficients(rho, c, eps - h, p);
        CHECK(rel_err(d.dsh0_dr, (rp.s_hat0 - rm.s_hat0) / (2 * h)) < 1e-6);
        CHECK(rel_err(d.dsh0_dc, (cp.s_hat0 - cm.s_hat0) / (2 * h)) < 1e-6);
        CHECK(rel_err(d.dsh0_de, (ep.s_hat0 - em.s_hat0) / (2 * h)) < 1e-6);
        CHECK(rel_err(d.dsh1_dr, (rp.s_hat1 - rm.s_hat1) / (2 * h)) < 1e-6);
        CHECK(rel_err(d.dsh1_dc, (cp.s_hat1 - cm.s_hat1) / (2 * h)) < 1e-6);
        CHECK(rel_err(d.dsh2_dr, (rp.s_hat2 - rm.s_hat2) / (2 * h)) < 1e-6);
        CHECK(rel_err(d.dsh2_dc, (cp.s_hat2 - cm.s_hat2) / (2 * h)) < 1e-6);
        CHECK(rel_err(d.dsh3_dr, (rp.s_hat3 - rm.s_hat3) / (2 * h)) < 1e-6);
        CHECK(rel_err(d.dsh3_dc, (cp.s_hat3 - cm.s_hat3) / (2 * h)) < 1e-6);

        const EntropyPartials drp = entropy_partials(rho + h, c, eps, p);
        const EntropyPartials drm = entropy_partials(rho - h, c, eps, p);
        const EntropyPartials dcp = entropy_partials(rho, c + h, eps, p);
        const EntropyPartials dcm = entropy_partials(rho, c - h, eps, p);
        CHECK(rel_err(d.d2sh0_dr2, (drp.dsh0_dr - drm.dsh0_dr) / (2 * h)) < 1e-6);
        CHECK(rel_err(d.d2sh0_drdc, (dcp.dsh0_dr - dcm.dsh0_dr) / (2 * h)) < 1e-6);
        CHECK(rel_err(d.d2sh0_dc2, (dcp.dsh0_dc - dcm.dsh0_dc) / (2 * h)) < 1e-6);
    }
}

TEST_CASE("specific entropy is the gradient quadratic form") {
    const MaterialParams p;
    StateJet j;
    j.rho = 1.0;
    j.c = 0.5;
    j.eps = 2.0;
    CHECK(specific_entropy(j, p) ==
          doctest::Approx(entropy_coefficients(1.0, 0.5, 2.0, p).s_hat0));

    j.rho_g = {0.3, -0.1, 0.2};
    j.c_g = {-0.4, 0.5, 0.1};
    const EntropyCoeffs e = entropy_coefficients(1.0, 0.5, 2.0, p);
    double gr2 = 0, grgc = 0, gc2 = 0;
    for (int k = 0; k < 3; ++k) {
        gr2 += j.rho_g[k] * j.rho_g[k];
        grgc += j.rho_g[k] * j.c_g[k];
        gc2 += j.c_g[k] * j.c_g[k];
    }
    CHECK(specific_entropy(j, p) ==
          doctest::Approx(e.s_hat0 + e.s_hat1 * gr2 + e.s_hat2 * grgc +
                          e.s_hat3 * gc2));
}

TEST_CASE("gradient part of the entropy scales quadratically") {
    const MaterialParams p;
    StateJet j = sample_jet(3);
    const double s0 =
        entropy_coefficients(j.rho, j.c, j.eps, p).s_hat0;
    const double base = specific_entropy(j, p) - s0;
    for (int k = 0; k < 3; ++k) {
        j.rho_g[k] *= 2.0;
        j.c_g[k] *= 2.0;
    }
    CHECK(specific_entropy(j, p) - s0 == doctest::Approx(4.0 * base).epsilon(1e-12));
}

TEST_CASE("temperature follows the thermal entropy law") {
    MaterialParams p;
    CHECK(temperature(2.0, p) == doctest::Approx(2.0));
    p.cv = 2.0;
    CHECK(temperature(1.0, p) == doctest::Approx(0.5));
    p = MaterialParams{};
    SplitMix64 rng(5);
    for (int i = 0; i < 10; ++i) {
        const double eps = rng.uniform(0.5, 3.0);
        const MaterialEval m = eval_material(1.0, 0.5, eps, p);
        CHECK(temperature(eps, p) * m.s01p == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(temperature(0.0, p), std::domain_error);
}

TEST_CASE("diffusional mass flux and heat flux by direct substitution") {
    const MaterialParams p;
    StateJet j;
    j.rho = 1.0;
    j.c = 0.5;
    j.eps = 2.0;
    auto [Jm0, q0] = fluxes(j, p);
    for (int k = 0; k < 3; ++k) {
        CHECK(Jm0[k] == 0.0);
        CHECK(q0[k] == 0.0);
    }
    j.c_g = {1.0, 0.0, 0.0};
    auto [Jm1, q1] = fluxes(j, p);
    CHECK(Jm1[0] == doctest::Approx(-1.5));
    CHECK(Jm1[1] == 0.0);
    CHECK(Jm1[2] == 0.0);
    (void)q1;
    j.c_g = {0.0, 0.0, 0.0};
    j.eps_g = {0.0, 2.0, 0.0};
    auto [Jm2, q2] = fluxes(j, p);
    CHECK(q2[1] == doctest::Approx(-1.0));
    CHECK(Jm2[0] == 0.0);
    j.rho_g = {0.2, -0.3, 0.1};
    j.c_g = {-0.1, 0.4, 0.6};
    auto [Jm3, q3] = fluxes(j, p);
    (void)q3;
    for (int k = 0; k < 3; ++k)
        CHECK(Jm3[k] == doctest::Approx(0.7 * j.rho_g[k] - 1.5 * j.c_g[k]));
}

TEST_CASE("heat flux is a Fourier law with nonnegative conductivity") {
    const MaterialParams p;
    for (double eps : {0.5, 1.0, 2.0, 2.9}) {
        const double k = fourier_conductivity(eps, p);
        CHECK(k == doctest::Approx(0.5));  // -q0 cv for the default law
        CHECK(k >= 0.0);
        // q = q0 grad eps must equal -k grad theta with theta = eps/cv
        const double dtheta_deps = 1.0 / p.cv;
        CHECK(-k * dtheta_deps == doctest::Approx(p.q0));
    }
}

TEST_CASE("second-gradient stress coefficients vanish per the coefficient table") {
    const MaterialParams p;
    SplitMix64 rng(11);
    for (int i = 0; i < 20; ++i) {
        const double rho = rng.uniform(0.6, 1.8);
        const double c = rng.uniform(0.1, 0.9);
        const double eps = rng.uniform(0.5, 3.0);
        const StressCoeffs tc = stress_coefficients(rho, c, eps, p);
        CHECK(tc.tau[10] == 0.0);
        CHECK(tc.tau[11] == 0.0);
        CHECK(tc.tau[6] == doctest::Approx(p.tau6));
        CHECK(tc.tau[12] == doctest::Approx(p.tau12));
        CHECK(rel_err(tc.tau[4], -rho * tc.tau[7]) < 1e-12);
    }
}

TEST_CASE("pure pressure fluid when the gradient entropy is switched off") {
    MaterialParams p;
    p.s3 = 0.0;
    p.K = 0.0;
    p.kappa1 = 0.0;
    const double rho = 1.3, c = 0.4, eps = 1.8;
    const StressCoeffs tc = stress_coefficients(rho, c, eps, p);
    const double theta = temperature(eps, p);
    CHECK(tc.tau[0] == doctest::Approx(-rho * p.R * theta));
    for (int k : {1, 2, 3, 4, 5, 7, 8, 9}) {
        INFO("tau", k);
        CHECK(tc.tau[k] == doctest::Approx(0.0));
    }
}

TEST_CASE("stress coefficient partials match central differences") {
    const MaterialParams p;
    const double h = 1e-5;
    for (auto [rho, c, eps] : {std::array<double, 3>{1.0, 0.5, 2.0},
                               std::array<double, 3>{1.4, 0.8, 0.9}}) {
        const StressPartials d = stress_partials(rho, c, eps, p);
        const StressCoeffs rp = stress_coefficients(rho + h, c, eps, p);
        const StressCoeffs rm = stress_coefficients(rho - h, c, eps, p);
        const StressCoeffs cp = stress_coefficients(rho, c + h, eps, p);
        const StressCoeffs cm = stress_coefficients(rho, c - h, eps, p);
        const StressCoeffs ep = stress_coefficients(rho, c, eps + h, p);
        const StressCoeffs em = stress_coefficients(rho, c, eps - h, p);
        for (int k = 0; k < 13; ++k) {
            INFO("tau", k);
            CHECK(rel_err(d.d_rho[k], (rp.tau[k] - rm.tau[k]) / (2 * h)) < 1e-6);
            CHECK(rel_err(d.d_c[k], (cp.tau[k] - cm.tau[k]) / (2 * h)) < 1e-6);
            CHECK(rel_err(d.d_eps[k], (ep.tau[k] - em.tau[k]) / (2 * h)) < 1e-6);
        }
    }
}

TEST_CASE("equilibrium stress is an isotropic pressure state") {
    const MaterialParams p;
    StateJet j;
    j.rho = 1.0;
    j.c = 0.5;
    j.eps = 2.0;
    const Mat3 T = stress(j, p);
    const double tau0 = stress_coefficients(1.0, 0.5, 2.0, p).tau[0];
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            CHECK(T[mat3_index(i, k)] == doctest::Approx(i == k ? tau0 : 0.0));
}

TEST_CASE("assembled stress is symmetric and matches the ansatz term by term") {
    const MaterialParams p;
    for (std::uint64_t s : {10u, 11u, 12u, 13u}) {
        const StateJet j = sample_jet(s);
        const Mat3 T = stress(j, p);
        const Mat3 ref = assemble_stress(j, p);
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) {
                CHECK(T[mat3_index(i, k)] == doctest::Approx(T[mat3_index(k, i)]));
                CHECK(rel_err(T[mat3_index(i, k)], ref[mat3_index(i, k)]) < 1e-13);
            }
    }
}

TEST_CASE("uniform concentration reduces the stress to the capillarity form") {
    const MaterialParams p;
    SplitMix64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        StateJet j;
        j.rho = rng.uniform(0.6, 1.8);
        j.c = 0.3;
        j.eps = rng.uniform(0.5, 3.0);
        for (int k = 0; k < 3; ++k) {
            j.rho_g[k] = rng.uniform(-1, 1);
            j.v[k] = rng.uniform(-1, 1);
        }
        for (int k = 0; k < 6; ++k) j.rho_h[k] = rng.uniform(-1, 1);
        for (int k = 0; k < 9; ++k) j.v_g[k] = rng.uniform(-1, 1);

        const KortewegCoeffs kc = korteweg_reduction(j.rho, j.eps, p, j.c);
        const StressCoeffs tc = stress_coefficients(j.rho, j.c, j.eps, p);
        CHECK(kc.alpha1 == doctest::Approx(tc.tau[1]));
        CHECK(kc.alpha2 == doctest::Approx(tc.tau[4]));
        CHECK(kc.alpha3 == doctest::Approx(tc.tau[7]));
        CHECK(kc.alpha4 == 0.0);
        CHECK(kc.p == doctest::Approx(-tc.tau[0]));
        CHECK(rel_err(kc.alpha2, -j.rho * kc.alpha3) < 1e-12);

        double gr2 = 0, lap_r = 0, G = 0;
        for (int k = 0; k < 3; ++k) {
            gr2 += j.rho_g[k] * j.rho_g[k];
            lap_r += j.rho_hess(k, k);
            G += j.v_grad(k, k);
        }
        const Mat3 T = stress(j, p);
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) {
                double ref = kc.alpha3 * j.rho_g[i] * j.rho_g[k] +
                             kc.alpha4 * j.rho_hess(i, k) +
                             tc.tau[12] * j.L(i, k);
                if (i == k)
                    ref += -kc.p + kc.alpha1 * gr2 + kc.alpha2 * lap_r +
                           tc.tau[6] * G;
                CHECK(rel_err(T[mat3_index(i, k)], ref) < 1e-12);
            }
    }
}

TEST_CASE("pure pressure limit of the capillarity reduction") {
    MaterialParams p;
    p.s3 = 0.0;
    p.K = 0.0;
    p.kappa1 = 0.0;
    const KortewegCoeffs kc = korteweg_reduction(1.3, 1.8, p);
    CHECK(kc.alpha1 == doctest::Approx(0.0));
    CHECK(kc.alpha2 == doctest::Approx(0.0));
    CHECK(kc.alpha3 == doctest::Approx(0.0));
    CHECK(kc.alpha4 == 0.0);
    CHECK(kc.p == doctest::Approx(1.3 * p.R * temperature(1.8, p)));
}

TEST_CASE("entropy flux vanishes at equilibrium and reduces to q/theta") {
    const MaterialParams p;
    StateJet j;
    j.rho = 1.0;
    j.c = 0.5;
    j.eps = 2.0;
    Vec3 Js = entropy_flux(j, p);
    for (int k = 0; k < 3; ++k) CHECK(Js[k] == 0.0);

    j.eps_g = {0.4, -0.2, 0.9};
    Js = entropy_flux(j, p);
    const double theta = temperature(2.0, p);
    for (int k = 0; k < 3; ++k)
        CHECK(Js[k] == doctest::Approx(p.q0 * j.eps_g[k] / theta));
}

TEST_CASE("entropy flux without gradient entropy keeps only classical terms") {
    MaterialParams p;
    p.s3 = 0.0;
    p.K = 0.0;
    const StateJet j = sample_jet(19);
    const auto [Jm, q] = fluxes(j, p);
    const MaterialEval m = eval_material(j.rho, j.c, j.eps, p);
    const double theta = temperature(j.eps, p);
    const double dsh0_dc = p.kappa1 * m.s02p;
    const Vec3 Js = entropy_flux(j, p);
    for (int k = 0; k < 3; ++k)
        CHECK(rel_err(Js[k], q[k] / theta + dsh0_dc * Jm[k]) < 1e-13);
}

TEST_CASE("entropy flux matches an independent assembly on random jets") {
    const MaterialParams p;
    for (std::uint64_t s : {23u, 24u, 25u}) {
        const StateJet j = sample_jet(s);
        const EntropyCoeffs e = entropy_coefficients(j.rho, j.c, j.eps, p);
        const MaterialEval m = eval_material(j.rho, j.c, j.eps, p);
        const auto [Jm, q] = fluxes(j, p);
        double lap_r = 0, lap_c = 0, G = 0;
        for (int k = 0; k < 3; ++k) {
            lap_r += j.rho_hess(k, k);
            lap_c += j.c_hess(k, k);
            G += j.v_grad(k, k);
        }
        const double D = e.J_rho * lap_r + e.J_c * lap_c;
        const double theta = temperature(j.eps, p);
        const Vec3 Js = entropy_flux(j, p);
        for (int k = 0; k < 3; ++k) {
            const double ref =
                q[k] / theta + p.kappa1 * m.s02p * Jm[k] +
                (e.s_hat2 * D + 2.0 * j.rho * j.rho * e.s_hat1 * G) * j.rho_g[k] +
                (2.0 * e.s_hat3 * D + j.rho * j.rho * e.s_hat2 * G) * j.c_g[k];
            CHECK(rel_err(Js[k], ref) < 1e-13);
        }
    }
}

TEST_CASE("flux bundle agrees with the individual evaluations") {
    const MaterialParams p;
    const StateJet j = sample_jet(29);
    const FluxSet fs = flux_set(j, p);
    const auto [Jm, q] = fluxes(j, p);
    const Mat3 T = stress(j, p);
    const Vec3 Js = entropy_flux(j, p);
    for (int k = 0; k < 3; ++k) {
        CHECK(fs.Jm[k] == Jm[k]);
        CHECK(fs.q[k] == q[k]);
        CHECK(fs.Js[k] == Js[k]);
    }
    for (int k = 0; k < 9; ++k) CHECK(fs.T[k] == T[k]);
}

TEST_CASE("multiplier families forced to zero by the entropy ansatz") {
    const MaterialParams p;
    const StateJet j = sample_jet(31);
    const Multipliers mult = lagrange_multipliers(j, p);
    for (int k = 0; k < 3; ++k) {
        CHECK(mult.lam3[k] == 0.0);
        CHECK(mult.Lam4[k] == 0.0);
    }
    for (int k = 0; k < 9; ++k) {
        CHECK(mult.Lam3[k] == 0.0);
        CHECK(mult.Th1[k] == 0.0);
        CHECK(mult.Th2[k] == 0.0);
    }
    const MaterialEval m = eval_material(j.rho, j.c, j.eps, p);
    CHECK(mult.lam4 == doctest::Approx(m.s01p));
    CHECK(mult.lam4 == doctest::Approx(1.0 / temperature(j.eps, p)));
}

TEST_CASE("equilibrium multipliers reduce to the local entropy derivatives") {
    const MaterialParams p;
    StateJet j;
    j.rho = 1.1;
    j.c = 0.4;
    j.eps = 1.6;
    const Multipliers mult = lagrange_multipliers(j, p);
    const EntropyPartials d = entropy_partials(1.1, 0.4, 1.6, p);
    CHECK(mult.lam1 == doctest::Approx(1.1 * d.dsh0_dr));
    for (int k = 0; k < 3; ++k) CHECK(mult.Lam1[k] == doctest::Approx(0.0));
}

TEST_CASE("constitutive outputs transform correctly under rigid rotation") {
    const MaterialParams p;
    const Rot R = rotation_zyx(0.7, -0.4, 0.3);
    for (std::uint64_t s : {41u, 42u}) {
        const StateJet j = sample_jet(s);
        const StateJet rj = rotate_jet(j, R);

        CHECK(std::fabs(specific_entropy(rj, p) - specific_entropy(j, p)) < 1e-10);

        const auto [Jm, q] = fluxes(j, p);
        const auto [rJm, rq] = fluxes(rj, p);
        const Vec3 Js = entropy_flux(j, p);
        const Vec3 rJs = entropy_flux(rj, p);
        for (int a = 0; a < 3; ++a) {
            double eJm = 0, eq = 0, eJs = 0;
            for (int i = 0; i < 3; ++i) {
                eJm += R[a][i] * Jm[i];
                eq += R[a][i] * q[i];
                eJs += R[a][i] * Js[i];
            }
            CHECK(std::fabs(rJm[a] - eJm) < 1e-10);
            CHECK(std::fabs(rq[a] - eq) < 1e-10);
            CHECK(std::fabs(rJs[a] - eJs) < 1e-10);
        }

        const Mat3 T = stress(j, p);
        const Mat3 rT = stress(rj, p);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                double expect = 0;
                for (int i = 0; i < 3; ++i)
                    for (int k = 0; k < 3; ++k)
                        expect += R[a][i] * R[b][k] * T[mat3_index(i, k)];
                CHECK(std::fabs(rT[mat3_index(a, b)] - expect) < 1e-10);
            }
    }
}
