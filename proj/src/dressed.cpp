#include "midgap/dressed.hpp"

#include <cmath>
#include <limits>

#include "midgap/ladder.hpp"
#include "midgap/units.hpp"

namespace midgap {

DressedBasis diagonalize_pair_block(double a, double b, double c) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c))
        throw invalid_input("pair block entries must be finite");
    DressedBasis d;
    d.a = a;
    d.b = b;
    d.c = c;

    double mid = 0.5 * (a + b);
    double half_gap = std::hypot(0.5 * (a - b), c);
    if (half_gap == 0.0) {
        d.lambda_plus = d.lambda_minus = mid;
    } else {
        // The root on mid's side is computed by addition; the other through
        // the determinant so near-cancellation of mid and half_gap is safe.
        double big = mid + std::copysign(half_gap, mid == 0.0 ? 1.0 : mid);
        double small = (big != 0.0) ? (a * b - c * c) / big : mid - half_gap;
        d.lambda_plus = std::max(big, small);
        d.lambda_minus = std::min(big, small);
    }

    if (a == b)
        d.theta = (c == 0.0) ? 0.0 : std::copysign(0.25 * pi, c);
    else
        d.theta = 0.5 * std::atan(2.0 * c / (a - b));
    Eigen::Vector2d v_pair{std::cos(d.theta), std::sin(d.theta)};
    Eigen::Vector2d v_excited{-v_pair.y(), v_pair.x()};
    // v_pair's rayleigh quotient is mid + sign(a - b) * half_gap.
    if (a >= b) {
        d.v_plus = v_pair;
        d.v_minus = v_excited;
    } else {
        d.v_plus = v_excited;
        d.v_minus = v_pair;
    }
    return d;
}

DressedBasis dressed_pair_block(const Scenario& s, int u, double n_eff) {
    validate_scenario(s);
    if (!(n_eff >= 0.0))
        throw invalid_input("effective atom number must be nonnegative");
    double e = mode_offset(u, s.omega0);
    return diagonalize_pair_block(2.0 * e, e + s.delta1, std::sqrt(2.0 * n_eff) * s.m1);
}

DressedBasis build_effective_two_level(const Scenario& s) {
    return dressed_pair_block(s, 1, s.n_atoms);
}

namespace {

// Signed block product (2d - 2e_u)(2d - e_u - delta1); its magnitude over
// 2 m1^2 is the per-mode saturation atom number, and when the sign is
// positive a dressed level crosses the pair energy exactly there.
double block_product(const Scenario& s, int u) {
    double e = mode_offset(u, s.omega0);
    return (2.0 * s.delta - 2.0 * e) * (2.0 * s.delta - e - s.delta1);
}

double per_mode_saturation(const Scenario& s, int u) {
    if (s.m1 == 0.0) return std::numeric_limits<double>::infinity();
    return std::abs(block_product(s, u)) / (2.0 * s.m1 * s.m1);
}

}  // namespace

double saturation_atom_number(const Scenario& s) {
    validate_scenario(s);
    return std::min(per_mode_saturation(s, 1), per_mode_saturation(s, -1));
}

DressedRateResult two_photon_rate_dressed_info(const Scenario& s, int window) {
    validate_scenario(s);
    DressedRateResult r;
    r.n_star_upper = per_mode_saturation(s, 1);
    r.n_star_lower = per_mode_saturation(s, -1);
    r.n_star = std::min(r.n_star_upper, r.n_star_lower);
    r.capped = s.n_atoms > r.n_star;
    r.n_eff = r.capped ? r.n_star : s.n_atoms;

    if (!r.capped) {
        // Below the cap the perturbative chain is still the real story, so a
        // dressed level of either adjacent block sitting on the pair energy
        // is a genuine resonance. At and above the cap the block coupling
        // has absorbed those denominators and the plateau value is the
        // regularization, so no check applies there.
        double guard = pole_guard_frac * s.omega0;
        for (int u : {1, -1}) {
            DressedBasis block = dressed_pair_block(s, u, r.n_eff);
            for (double lambda : {block.lambda_plus, block.lambda_minus}) {
                if (std::abs(2.0 * s.delta - lambda) < guard)
                    throw pole_error("dressed level of mode " + std::to_string(u) +
                                     " is resonant with the photon pair");
            }
        }
    } else {
        r.diag.warn("collective coupling saturates the absorption chain; "
                    "rate capped at n_eff = " + std::to_string(r.n_star) + " atoms");
    }

    Scenario capped = s;
    capped.n_atoms = r.n_eff;
    FullRateResult full = two_photon_rate_full(capped, window);
    r.rate = full.rate;
    r.diag.merge(full.diag);
    return r;
}

double two_photon_rate_dressed(const Scenario& s, int window) {
    return two_photon_rate_dressed_info(s, window).rate;
}

std::vector<SaturationRow> saturation_curve(const Scenario& s,
                                            const std::vector<double>& rho_cm3,
                                            double mode_volume_m3, int window) {
    if (rho_cm3.empty()) throw invalid_input("density list is empty");
    for (std::size_t i = 1; i < rho_cm3.size(); ++i)
        if (!(rho_cm3[i] > rho_cm3[i - 1]))
            throw invalid_input("densities must be strictly increasing");

    std::vector<SaturationRow> rows;
    rows.reserve(rho_cm3.size());
    for (double rho : rho_cm3) {
        Scenario sc = s;
        sc.n_atoms = atoms_in_mode_volume(per_m3_from_per_cm3(rho), mode_volume_m3);
        DressedRateResult info = two_photon_rate_dressed_info(sc, window);
        SaturationRow row;
        row.rho_cm3 = rho;
        row.n_atoms = sc.n_atoms;
        row.rate = info.rate;
        row.rate_uncapped = two_photon_rate_full(sc, window).rate;
        row.n_eff = info.n_eff;
        row.capped = info.capped;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace midgap
