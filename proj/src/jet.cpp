#include "kortmix/jet.hpp"

#include <cmath>
#include <cstdio>

namespace kortmix {

namespace {

void require_finite(const double* data, std::size_t n, const char* slot,
                    ValidationReport& rep) {
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(data[i])) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "%s[%zu] is not finite", slot, i);
            rep.violations.emplace_back(buf);
            rep.pass = false;
            return;
        }
    }
}

void check_scalar_invariants(double rho, double c, double eps,
                             ValidationReport& rep) {
    if (!(rho > 0.0)) {
        rep.violations.push_back("rho must be positive");
        rep.pass = false;
    }
    if (!(c >= 0.0 && c <= 1.0)) {
        rep.violations.push_back("c out of [0,1]");
        rep.pass = false;
    }
    if (!(eps > 0.0)) {
        rep.violations.push_back("eps must be positive");
        rep.pass = false;
    }
}

void check_sym2(const std::array<std::array<double, 3>, 3>& h,
                const char* slot, ValidationReport& rep) {
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (!(std::fabs(h[i][j] - h[j][i]) <= kSymmetryTol)) {
                char buf[96];
                std::snprintf(buf, sizeof buf, "%s asymmetry at (%d,%d)", slot, i, j);
                rep.violations.emplace_back(buf);
                rep.pass = false;
            }
}

void check_sym3(const std::array<std::array<std::array<double, 3>, 3>, 3>& t,
                const char* slot, ValidationReport& rep) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                const double ref = t[i][j][k];
                if (!(std::fabs(t[i][k][j] - ref) <= kSymmetryTol) ||
                    !(std::fabs(t[j][i][k] - ref) <= kSymmetryTol) ||
                    !(std::fabs(t[j][k][i] - ref) <= kSymmetryTol) ||
                    !(std::fabs(t[k][i][j] - ref) <= kSymmetryTol) ||
                    !(std::fabs(t[k][j][i] - ref) <= kSymmetryTol)) {
                    char buf[96];
                    std::snprintf(buf, sizeof buf, "%s asymmetry at (%d,%d,%d)",
                                  slot, i, j, k);
                    rep.violations.emplace_back(buf);
                    rep.pass = false;
                    return;
                }
            }
}

}  // namespace

ValidationReport validate_jet(const StateJet& jet) {
    ValidationReport rep;
    check_scalar_invariants(jet.rho, jet.c, jet.eps, rep);
    const auto flat = to_flat(jet);
    require_finite(flat.data(), flat.size(), "flat", rep);
    return rep;
}

ValidationReport validate_jet(const DenseJet& jet) {
    ValidationReport rep;
    check_scalar_invariants(jet.rho, jet.c, jet.eps, rep);
    check_sym2(jet.rho_h, "rho_h", rep);
    check_sym2(jet.c_h, "c_h", rep);
    check_sym2(jet.eps_h, "eps_h", rep);
    check_sym3(jet.rho_t3, "rho_t3", rep);
    check_sym3(jet.c_t3, "c_t3", rep);
    for (int i = 0; i < 3; ++i)
        check_sym2(jet.v_h[i], "v_h", rep);
    const StateJet packed = pack_jet(jet);
    const auto flat = to_flat(packed);
    require_finite(flat.data(), flat.size(), "flat", rep);
    return rep;
}

StateJet pack_jet(const DenseJet& d) {
    StateJet j;
    j.rho = d.rho;
    j.c = d.c;
    j.eps = d.eps;
    j.rho_g = d.rho_g;
    j.c_g = d.c_g;
    j.eps_g = d.eps_g;
    j.v = d.v;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            j.v_g[mat3_index(a, b)] = d.v_g[a][b];
    for (int a = 0; a < 3; ++a)
        for (int b = a; b < 3; ++b) {
            j.rho_h[sym2_index(a, b)] = 0.5 * (d.rho_h[a][b] + d.rho_h[b][a]);
            j.c_h[sym2_index(a, b)] = 0.5 * (d.c_h[a][b] + d.c_h[b][a]);
            j.eps_h[sym2_index(a, b)] = 0.5 * (d.eps_h[a][b] + d.eps_h[b][a]);
            for (int i = 0; i < 3; ++i)
                j.v_h[6 * i + sym2_index(a, b)] =
                    0.5 * (d.v_h[i][a][b] + d.v_h[i][b][a]);
        }
    for (int a = 0; a < 3; ++a)
        for (int b = a; b < 3; ++b)
            for (int e = b; e < 3; ++e) {
                const double avg = (d.rho_t3[a][b][e] + d.rho_t3[a][e][b] +
                                    d.rho_t3[b][a][e] + d.rho_t3[b][e][a] +
                                    d.rho_t3[e][a][b] + d.rho_t3[e][b][a]) / 6.0;
                j.rho_t3[sym3_index(a, b, e)] = avg;
                const double avgc = (d.c_t3[a][b][e] + d.c_t3[a][e][b] +
                                     d.c_t3[b][a][e] + d.c_t3[b][e][a] +
                                     d.c_t3[e][a][b] + d.c_t3[e][b][a]) / 6.0;
                j.c_t3[sym3_index(a, b, e)] = avgc;
            }
    return j;
}

StateJet project_to_state_space(const StateJet& jet) {
    StateJet out = jet;
    out.rho_t3.fill(0.0);
    out.c_t3.fill(0.0);
    out.eps_h.fill(0.0);
    out.v_h.fill(0.0);
    return out;
}

std::array<double, kJetFlatSize> to_flat(const StateJet& j) {
    std::array<double, kJetFlatSize> r{};
    std::size_t p = 0;
    r[p++] = j.rho;
    for (double a : j.rho_g) r[p++] = a;
    for (double a : j.rho_h) r[p++] = a;
    for (double a : j.rho_t3) r[p++] = a;
    r[p++] = j.c;
    for (double a : j.c_g) r[p++] = a;
    for (double a : j.c_h) r[p++] = a;
    for (double a : j.c_t3) r[p++] = a;
    r[p++] = j.eps;
    for (double a : j.eps_g) r[p++] = a;
    for (double a : j.eps_h) r[p++] = a;
    for (double a : j.v) r[p++] = a;
    for (double a : j.v_g) r[p++] = a;
    for (double a : j.v_h) r[p++] = a;
    return r;
}

StateJet from_flat(const std::array<double, kJetFlatSize>& r) {
    StateJet j;
    std::size_t p = 0;
    j.rho = r[p++];
    for (double& a : j.rho_g) a = r[p++];
    for (double& a : j.rho_h) a = r[p++];
    for (double& a : j.rho_t3) a = r[p++];
    j.c = r[p++];
    for (double& a : j.c_g) a = r[p++];
    for (double& a : j.c_h) a = r[p++];
    for (double& a : j.c_t3) a = r[p++];
    j.eps = r[p++];
    for (double& a : j.eps_g) a = r[p++];
    for (double& a : j.eps_h) a = r[p++];
    for (double& a : j.v) a = r[p++];
    for (double& a : j.v_g) a = r[p++];
    for (double& a : j.v_h) a = r[p++];
    return j;
}

}  // namespace kortmix
