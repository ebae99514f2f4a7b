#pragma once

#include <string>
#include <vector>

#include "kortmix/tensor.hpp"

namespace kortmix {

/// Pointwise field values plus the spatial-derivative slots every
/// constitutive and audit operation acts on.  Density and concentration
/// carry derivatives up to third order, internal energy and velocity up
/// to second order.  Symmetric tensors are stored packed (upper
/// triangular); accessors expand indices, so redundant-slot
/// inconsistency is impossible by construction.
struct StateJet {
    double rho = 1.0;
    Vec3 rho_g{};
    Sym2 rho_h{};
    Sym3 rho_t3{};

    double c = 0.5;
    Vec3 c_g{};
    Sym2 c_h{};
    Sym3 c_t3{};

    double eps = 1.0;
    Vec3 eps_g{};
    Sym2 eps_h{};

    Vec3 v{};
    Mat3 v_g{};                    // full gradient v_{i,j}, row-major
    std::array<double, 18> v_h{};  // v_{i,jk}: i-major, (j,k) packed

    double rho_hess(int i, int j) const { return rho_h[sym2_index(i, j)]; }
    double c_hess(int i, int j) const { return c_h[sym2_index(i, j)]; }
    double eps_hess(int i, int j) const { return eps_h[sym2_index(i, j)]; }
    double rho_third(int i, int j, int k) const { return rho_t3[sym3_index(i, j, k)]; }
    double c_third(int i, int j, int k) const { return c_t3[sym3_index(i, j, k)]; }
    double v_grad(int i, int j) const { return v_g[mat3_index(i, j)]; }
    double v_hess(int i, int j, int k) const { return v_h[6 * i + sym2_index(j, k)]; }

    /// Symmetric velocity gradient L_{ij} = (v_{i,j} + v_{j,i})/2 — derived,
    /// never stored.
    double L(int i, int j) const { return 0.5 * (v_grad(i, j) + v_grad(j, i)); }
};

/// Fully expanded jet for ingestion and symmetry validation; convert to
/// StateJet with pack_jet once validated.
struct DenseJet {
    double rho = 1.0;
    std::array<double, 3> rho_g{};
    std::array<std::array<double, 3>, 3> rho_h{};
    std::array<std::array<std::array<double, 3>, 3>, 3> rho_t3{};

    double c = 0.5;
    std::array<double, 3> c_g{};
    std::array<std::array<double, 3>, 3> c_h{};
    std::array<std::array<std::array<double, 3>, 3>, 3> c_t3{};

    double eps = 1.0;
    std::array<double, 3> eps_g{};
    std::array<std::array<double, 3>, 3> eps_h{};

    std::array<double, 3> v{};
    std::array<std::array<double, 3>, 3> v_g{};
    std::array<std::array<std::array<double, 3>, 3>, 3> v_h{};  // v_{i,jk}
};

struct ValidationReport {
    bool pass = true;
    std::vector<std::string> violations;
};

/// Absolute tolerance for symmetry checks on dense jets.
inline constexpr double kSymmetryTol = 1e-12;

/// Checks positivity, concentration range, and finiteness of all slots.
ValidationReport validate_jet(const StateJet& jet);

/// Same checks plus symmetry of all Hessian/third-order slots within
/// kSymmetryTol.
ValidationReport validate_jet(const DenseJet& jet);

/// Packs a validated dense jet; symmetric slots are averaged over index
/// permutations.
StateJet pack_jet(const DenseJet& jet);

/// Copy with third-order slots, eps_h, and v_h zeroed: the projection
/// onto the constitutive state space (fields, gradients, rho/c Hessians,
/// velocity gradient).
StateJet project_to_state_space(const StateJet& jet);

/// Flat numeric record, documented field order:
/// rho, rho_g[3], rho_h[6], rho_t3[10], c, c_g[3], c_h[6], c_t3[10],
/// eps, eps_g[3], eps_h[6], v[3], v_g[9] (row-major), v_h[18]
/// (i-major, (j,k) packed).
inline constexpr std::size_t kJetFlatSize = 80;

std::array<double, kJetFlatSize> to_flat(const StateJet& jet);
StateJet from_flat(const std::array<double, kJetFlatSize>& rec);

}  // namespace kortmix
