#pragma once

#include <span>
#include <string>
#include <vector>

#include "midgap/errors.hpp"
#include "midgap/ladder.hpp"
#include "midgap/scenario.hpp"

// Perturbative scattering and absorption rates for a probe tuned near the
// midpoint between two adjacent resonator modes. Denominators are written
// as (initial energy) minus (running state energy), with the initial state
// holding the probe photons; intermediate-state energies are measured in
// the same frame. The shared atomic-excitation step uses the constant
// offset delta1 of the first level from the pair midpoint, which is the
// regime where the probe and mode offsets are small against delta1.
namespace midgap {

// Relative scale of the resonance guard: a denominator is treated as a pole
// when its magnitude drops below pole_guard_frac * omega0.
inline constexpr double pole_guard_frac = 1e-9;

// Second order effective coupling of the waveguide photon to the first
// atomic level through the bracketing mode pair:
//   m1 * mw * (1/(delta - omega0/2) + 1/(delta + omega0/2))
// evaluated in fused form, exactly zero (and odd) at delta = 0.
// Throws pole_error at |delta| -> omega0/2.
double effective_matrix_element(const Scenario& s);

// Photon scattering rate through the pair interference channel:
//   2 * n_atoms * gamma1 / (delta1^2 + gamma1^2) * M_eff^2.
// Warns through diag when |delta| > 0.1*|delta1|, where dropping the probe
// offset against delta1 starts to bite.
double single_photon_rate(const Scenario& s, diagnostics* diag = nullptr);

// Same golden rule rate with the interference factor summed over an explicit
// set of mode offsets instead of the adjacent pair. Used to compare against
// truncated-ladder evolutions, whose windows see exactly these modes.
double single_photon_rate_windowed(const Scenario& s, std::span<const double> offsets);

// Fourth order two-photon amplitudes through the two adjacent modes, kept
// separately for the upper (offset +omega0/2) and lower (-omega0/2) mode.
struct TwoPathAmplitudes {
    double upper = 0.0;
    double lower = 0.0;
};
TwoPathAmplitudes two_photon_amplitudes(const Scenario& s);

// Closed form two-photon absorption rate built from the adjacent-pair
// amplitudes, with the final-state Lorentzian taken at delta2 = 0:
//   8 * n_atoms * m1^2 m2^2 mw^4 * gamma2 / (delta1^2 ((2 delta)^2 + gamma2^2))
//     * [ 1/((2d-w0)(d-w0/2)) + 1/((2d+w0)(d+w0/2)) ]^2
// Warns when delta2 != 0 (the general closure lives in two_photon_rate_full).
double two_photon_rate_two_path(const Scenario& s, diagnostics* diag = nullptr);

// One fourth order absorption chain through a doubly occupied ladder mode:
//   both probe photons -> mode u -> shared first-level excitation -> final
// state_chain labels the three intermediate states; denominators holds one
// entry per state after the initial one (three intermediates, then the
// final detuning 2*delta - delta2), so value is dimensionless and
// recomputable as numerator / product(denominators).
struct PathAmplitude {
    int mode = 0;                            // ladder index u of the doubly occupied mode
    std::vector<std::string> state_chain;    // three intermediate states
    double numerator = 0.0;                  // couplings and Bose factors
    std::vector<double> denominators;        // size 4
    double value = 0.0;
};

// All chains through doubly occupied ladder modes u = -window..+window.
// Chains through two singly occupied modes are excluded: summed coherently
// over their orderings they carry the same pairwise cancellation as the
// single-photon channel, and their grouped amplitude is reported by
// two_photon_rate_full instead of being mixed into the sum here.
// Throws pole_error when any denominator (final detuning included) falls
// inside the resonance guard, naming the resonant state.
std::vector<PathAmplitude> enumerate_paths(const Scenario& s, int window);

// Golden rule closure of an explicit path list: coherent signed sum of
// numerator/(D1*D2*D3) per path, then
//   2 * n_atoms * gamma2 * T^2 / ((2 delta - delta2)^2 + gamma2^2).
double two_photon_rate_from_paths(const Scenario& s, const std::vector<PathAmplitude>& paths);

struct FullRateResult {
    double rate = 0.0;                  // s^-1
    int window = 0;                     // ladder pairs included
    int n_paths = 0;                    // 2 * window
    double rel_change_from_prev = 0.0;  // |rate(L) - rate(L-1)| / rate(L)
    bool tail_corrected = false;
    double tail_fraction = 0.0;         // analytic tail share of the reduced amplitude
    double excluded_pair_ratio = 0.0;   // grouped singly-occupied-pair amplitude over the included one
    diagnostics diag;
};

// Windowed ladder sum of the doubly-occupied-mode chains with golden rule
// closure. With tail_correction the window sum is completed by the analytic
// whole-ladder remainder, making the result window independent to floating
// point accuracy; the raw windowed value converges like 1/window.
// At window = 1 and delta2 = 0 this reduces exactly to
// two_photon_rate_two_path.
FullRateResult two_photon_rate_full(const Scenario& s, int window = 50,
                                    bool tail_correction = true);

}  // namespace midgap
