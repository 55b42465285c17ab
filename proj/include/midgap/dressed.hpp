#pragma once

#include <vector>

#include <Eigen/Dense>

#include "midgap/errors.hpp"
#include "midgap/perturbative.hpp"
#include "midgap/scenario.hpp"

// High atom-number treatment of two-photon absorption. The doubly occupied
// state of an adjacent mode and the shared first-level excitation form a
// 2x2 block coupled by sqrt(2) * sqrt(n_atoms) * m1; once that collective
// coupling is comparable to the block detunings the perturbative chain
// stops growing with n_atoms and the rate saturates.
namespace midgap {

// Symmetric 2x2 block [[a, c], [c, b]], energies measured from twice the
// pair midpoint. theta is the mixing angle in [-pi/4, pi/4] of the first
// basis state (the photon pair) into the eigenvectors: v_pair adiabatically
// connects to (1, 0) as c -> 0. Eigenvalues ordered so lambda_plus >=
// lambda_minus; scaling (a, b, c) scales them and leaves theta fixed.
struct DressedBasis {
    double a = 0.0, b = 0.0, c = 0.0;  // block entries, rad/s
    double lambda_plus = 0.0;          // rad/s
    double lambda_minus = 0.0;         // rad/s
    double theta = 0.0;                // rad
    Eigen::Vector2d v_plus{1.0, 0.0};
    Eigen::Vector2d v_minus{0.0, 1.0};
};

DressedBasis diagonalize_pair_block(double a, double b, double c);

// Block for the doubly occupied mode at ladder index u (u = +1 is the mode
// just above the pair midpoint) with collective coupling from n_eff atoms:
//   a = 2 * e_u,  b = e_u + delta1,  c = sqrt(2 * n_eff) * m1.
DressedBasis dressed_pair_block(const Scenario& s, int u, double n_eff);

// Adjacent upper-mode block at the scenario's own atom number.
DressedBasis build_effective_two_level(const Scenario& s);

// Atom number at which the collective coupling matches the geometric mean
// of the two block detunings seen by the photon pair, minimized over the
// two adjacent modes: n* = min_u |(2d - 2e_u)(2d - e_u - delta1)| / (2 m1^2).
// Above n* the perturbative chain through that block stops growing.
// Returns +inf when m1 = 0.
double saturation_atom_number(const Scenario& s);

struct DressedRateResult {
    double rate = 0.0;          // s^-1
    double n_eff = 0.0;         // atom number the rate was evaluated at
    double n_star = 0.0;        // saturation atom number (min over u = +-1)
    double n_star_upper = 0.0;  // per-mode values behind the min
    double n_star_lower = 0.0;
    bool capped = false;        // n_atoms exceeded n_star
    diagnostics diag;
};

// Two-photon rate with the collective cap: the full ladder rate evaluated
// at n_eff = min(n_atoms, n*). Linear in n_atoms below n*, constant above,
// continuous at the join. Throws pole_error when a dressed level of either
// adjacent block at n_eff is resonant with the photon pair.
DressedRateResult two_photon_rate_dressed_info(const Scenario& s, int window = 50);
double two_photon_rate_dressed(const Scenario& s, int window = 50);

struct SaturationRow {
    double rho_cm3 = 0.0;   // atoms per cm^3
    double n_atoms = 0.0;   // rho * mode volume
    double rate = 0.0;      // s^-1, capped
    double rate_uncapped = 0.0;  // s^-1, linear extrapolation
    double n_eff = 0.0;
    bool capped = false;
};

// Rate versus density at fixed mode volume. Densities must be strictly
// increasing; rows come back in input order.
std::vector<SaturationRow> saturation_curve(const Scenario& s,
                                            const std::vector<double>& rho_cm3,
                                            double mode_volume_m3, int window = 50);

}  // namespace midgap
