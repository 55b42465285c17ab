#include "midgap/scenario.hpp"

#include <cmath>

namespace midgap {

void validate_scenario(const Scenario& s) {
    if (!(s.omega0 > 0.0)) throw invalid_input("scenario: omega0 must be positive");
    if (!(s.gamma1 >= 0.0)) throw invalid_input("scenario: gamma1 must be nonnegative");
    if (!(s.gamma2 >= 0.0)) throw invalid_input("scenario: gamma2 must be nonnegative");
    if (!(s.n_atoms >= 0.0)) throw invalid_input("scenario: n_atoms must be nonnegative");
    if (!std::isfinite(s.delta) || !std::isfinite(s.delta1) || !std::isfinite(s.delta2) ||
        !std::isfinite(s.m1) || !std::isfinite(s.m2) || !std::isfinite(s.mw) ||
        !std::isfinite(s.ebar))
        throw invalid_input("scenario: non-finite field");
}

void validate_geometry(const ResonatorGeometry& g, diagnostics* diag) {
    if (!(g.fiber_diameter > 0.0)) throw invalid_input("geometry: fiber_diameter must be positive");
    if (!(g.ring_diameter > 0.0)) throw invalid_input("geometry: ring_diameter must be positive");
    if (!(g.mode_volume > 0.0)) throw invalid_input("geometry: mode_volume must be positive");
    if (!(g.probe_wavelength > 0.0))
        throw invalid_input("geometry: probe_wavelength must be positive");
    if (diag && g.ring_diameter < 10.0 * g.fiber_diameter)
        diag->warn("geometry: ring diameter is not large against the fiber diameter; "
                   "the straight-fiber field model degrades");
}

double atoms_in_mode_volume(double rho_m3, double mode_volume_m3) {
    if (rho_m3 < 0.0) throw invalid_input("atoms_in_mode_volume: negative density");
    if (!(mode_volume_m3 > 0.0))
        throw invalid_input("atoms_in_mode_volume: mode volume must be positive");
    return rho_m3 * mode_volume_m3;
}

double detuning_from_wavelengths(double lambda_m, double delta_lambda_m) {
    if (!(lambda_m > 0.0))
        throw invalid_input("detuning_from_wavelengths: wavelength must be positive");
    return two_pi * c_light * delta_lambda_m / (lambda_m * lambda_m);
}

double vacuum_field_amplitude(double omega, double mode_volume_m3) {
    if (!(omega > 0.0)) throw invalid_input("vacuum_field_amplitude: omega must be positive");
    if (!(mode_volume_m3 > 0.0))
        throw invalid_input("vacuum_field_amplitude: mode volume must be positive");
    return std::sqrt(hbar * omega / (2.0 * eps0 * mode_volume_m3));
}

double matrix_element(double dipole_cm, double field_v_per_m) {
    return dipole_cm * field_v_per_m / hbar;
}

long bracketing_mode_index(double omega_probe, double omega0) {
    if (!(omega0 > 0.0)) throw invalid_input("bracketing_mode_index: omega0 must be positive");
    if (!(omega_probe > 0.0))
        throw invalid_input("bracketing_mode_index: probe frequency must be positive");
    return static_cast<long>(std::floor(omega_probe / omega0));
}

double pair_midpoint(double omega_probe, double omega0) {
    const long l = bracketing_mode_index(omega_probe, omega0);
    return (static_cast<double>(l) + 0.5) * omega0;
}

Scenario rubidium_default_scenario(const DipoleEstimates& d) {
    const double omega0 = angular_from_hz(1.8e12);
    const double mode_volume = 7.6e-17;
    const double lambda = 778e-9;
    const double omega_probe = angular_from_wavelength(lambda);

    Scenario s;
    s.omega0 = omega0;
    s.delta = 0.0;
    s.ebar = pair_midpoint(omega_probe, omega0);
    const double e_vac = vacuum_field_amplitude(s.ebar, mode_volume);
    s.delta1 = detuning_from_wavelengths(lambda, 2.1e-9);
    s.delta2 = 0.0;
    s.gamma1 = pi * 1e8;
    s.gamma2 = pi * 1e8;
    s.m1 = matrix_element(d.d1, e_vac);
    s.m2 = matrix_element(d.d2, e_vac);
    s.mw = omega0 / 3.0;
    s.n_atoms = atoms_in_mode_volume(per_m3_from_per_cm3(1e13), mode_volume);
    return s;
}

ResonatorGeometry rubidium_default_geometry() {
    ResonatorGeometry g;
    g.fiber_diameter = 0.35e-6;
    g.ring_diameter = 50e-6;
    g.mode_volume = 7.6e-17;
    g.probe_wavelength = 778e-9;
    return g;
}

}  // namespace midgap
