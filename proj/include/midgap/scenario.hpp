#pragma once

#include <string>

#include "midgap/errors.hpp"
#include "midgap/units.hpp"

namespace midgap {

// Ring resonator mode ladder probed midway between two adjacent modes.
// All members are angular frequencies (rad/s) except n_atoms.
// delta is the probe offset from the midpoint ebar of the bracketing mode
// pair; |delta| < omega0/2 is a precondition of the rate formulas, not of
// the struct itself.
struct Scenario {
    double omega0 = 0.0;    // free spectral range
    double delta = 0.0;     // probe detuning from the midpoint
    double ebar = 0.0;      // midpoint of the bracketing mode pair (absolute)
    double delta1 = 0.0;    // first atomic level offset from ebar
    double delta2 = 0.0;    // second atomic level offset from 2*ebar
    double gamma1 = 0.0;    // amplitude half width of the first atomic level
    double gamma2 = 0.0;    // amplitude half width of the second atomic level
    double m1 = 0.0;        // mode to first-level coupling
    double m2 = 0.0;        // mode to second-level coupling
    double mw = 0.0;        // waveguide to mode coupling
    double n_atoms = 0.0;   // atoms in the mode volume (may be fractional)
};

// Physical dimensions of the tapered-fiber ring resonator, SI units.
struct ResonatorGeometry {
    double fiber_diameter = 0.0;     // m
    double ring_diameter = 0.0;      // m
    double mode_volume = 0.0;        // m^3
    double probe_wavelength = 0.0;   // m
};

// Throws invalid_input on violated invariants (omega0, gamma1, gamma2 > 0,
// n_atoms >= 0).
void validate_scenario(const Scenario& s);

// Throws invalid_input unless every length is positive; warns (does not
// fail) when the ring diameter is not large against the fiber diameter,
// where the straight-fiber mode picture degrades.
void validate_geometry(const ResonatorGeometry& g, diagnostics* diag = nullptr);

// rho in atoms/m^3, mode volume in m^3. Negative inputs are rejected.
double atoms_in_mode_volume(double rho_m3, double mode_volume_m3);

// Angular frequency separation of two lines at lambda and lambda +
// delta_lambda, to first order in delta_lambda/lambda. Antisymmetric in
// delta_lambda.
double detuning_from_wavelengths(double lambda_m, double delta_lambda_m);

// Root mean square vacuum field of a mode at angular frequency omega
// confined to mode_volume, V/m.
double vacuum_field_amplitude(double omega, double mode_volume_m3);

// Coupling (rad/s) of a dipole d (C m) to a field amplitude e (V/m).
double matrix_element(double dipole_cm, double field_v_per_m);

// Index of the ladder mode just below the probe and the midpoint of the
// bracketing pair, given the probe's absolute angular frequency.
long bracketing_mode_index(double omega_probe, double omega0);
double pair_midpoint(double omega_probe, double omega0);

struct DipoleEstimates {
    double d1 = 3.584e-29;  // C m, strong D-line scale estimate
    double d2 = 1.70e-29;   // C m, excited-to-upper-level scale estimate
};

// Rubidium-flavored defaults: 1.8 THz free spectral range, 778 nm probe,
// 7.6e-17 m^3 mode volume, pi*1e8 /s half widths, mw = omega0/3, couplings
// from the dipole estimates above and the vacuum field of the mode volume,
// 760 atoms (1e13 /cm^3 times the mode volume).
Scenario rubidium_default_scenario(const DipoleEstimates& d = {});
ResonatorGeometry rubidium_default_geometry();

}  // namespace midgap
