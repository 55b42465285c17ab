#include "midgap/perturbative.hpp"

#include <cmath>
#include <cstdlib>

#include "midgap/units.hpp"

namespace midgap {

namespace {

std::string mode_name(int u) {
    return u > 0 ? "mode +" + std::to_string(u) : "mode " + std::to_string(u);
}

// |delta| must stay clear of omega0/2, else the probe sits on a mode.
void require_between_modes(const Scenario& s) {
    double guard = pole_guard_frac * s.omega0;
    if (std::abs(std::abs(s.delta) - 0.5 * s.omega0) < guard || std::abs(s.delta) > 0.5 * s.omega0)
        throw pole_error("probe offset " + std::to_string(s.delta) +
                         " rad/s is not inside the mode pair (|delta| < omega0/2)");
}

void require_offset_first_level(const Scenario& s) {
    if (std::abs(s.delta1) < pole_guard_frac * s.omega0)
        throw pole_error("first atomic level is degenerate with the pair midpoint (delta1 = 0)");
}

double lorentzian_weight(double detuning, double width) {
    double denom = detuning * detuning + width * width;
    if (denom == 0.0)
        throw pole_error("zero-width resonance: detuning and linewidth both vanish");
    return width / denom;
}

}  // namespace

double effective_matrix_element(const Scenario& s) {
    validate_scenario(s);
    require_between_modes(s);
    return s.m1 * s.mw * interference_sum(s.delta, s.omega0, 1);
}

double single_photon_rate(const Scenario& s, diagnostics* diag) {
    double m_eff = effective_matrix_element(s);
    if (diag && std::abs(s.delta) > 0.1 * std::abs(s.delta1))
        diag->warn("probe offset exceeds 0.1*|delta1|; constant-delta1 bookkeeping drifts");
    return 2.0 * s.n_atoms * lorentzian_weight(s.delta1, s.gamma1) * m_eff * m_eff;
}

double single_photon_rate_windowed(const Scenario& s, std::span<const double> offsets) {
    validate_scenario(s);
    double m_eff = s.m1 * s.mw * interference_sum_over(offsets, s.delta);
    return 2.0 * s.n_atoms * lorentzian_weight(s.delta1, s.gamma1) * m_eff * m_eff;
}

TwoPathAmplitudes two_photon_amplitudes(const Scenario& s) {
    validate_scenario(s);
    require_between_modes(s);
    require_offset_first_level(s);
    double guard = pole_guard_frac * s.omega0;
    double final_det = 2.0 * s.delta - s.delta2;
    if (std::abs(final_det) < guard)
        throw pole_error("photon pair is resonant with the final state (2*delta = delta2); "
                         "use two_photon_rate_full for the width-limited rate");
    double shared = (s.m2 / final_det) * (std::sqrt(2.0) * s.m1 / s.delta1);
    TwoPathAmplitudes a;
    a.upper = shared * (std::sqrt(2.0) * s.mw / (2.0 * s.delta - s.omega0)) *
              (s.mw / (s.delta - 0.5 * s.omega0));
    a.lower = shared * (std::sqrt(2.0) * s.mw / (2.0 * s.delta + s.omega0)) *
              (s.mw / (s.delta + 0.5 * s.omega0));
    return a;
}

double two_photon_rate_two_path(const Scenario& s, diagnostics* diag) {
    validate_scenario(s);
    require_between_modes(s);
    require_offset_first_level(s);
    if (diag && s.delta2 != 0.0)
        diag->warn("closed pair form pins the final lorentzian at delta2 = 0; "
                   "two_photon_rate_full keeps delta2");
    // 1/((2d-w0)(d-w0/2)) + 1/((2d+w0)(d+w0/2)) = inverse_square_sum(d, w0, 1) / 2
    double bracket = 0.5 * inverse_square_sum(s.delta, s.omega0, 1);
    double mw2 = s.mw * s.mw;
    double pref = 8.0 * s.n_atoms * (s.m1 * s.m1) * (s.m2 * s.m2) * (mw2 * mw2) *
                  lorentzian_weight(2.0 * s.delta, s.gamma2) / (s.delta1 * s.delta1);
    return pref * bracket * bracket;
}

std::vector<PathAmplitude> enumerate_paths(const Scenario& s, int window) {
    validate_scenario(s);
    require_between_modes(s);
    require_offset_first_level(s);
    if (window < 1) throw invalid_input("path window must be at least 1");

    double guard = pole_guard_frac * s.omega0;
    double final_det = 2.0 * s.delta - s.delta2;
    if (std::abs(final_det) < guard)
        throw pole_error("photon pair is resonant with the final state (2*delta = delta2); "
                         "per-path values diverge there, use two_photon_rate_full");

    double numerator = 2.0 * s.m1 * s.m2 * s.mw * s.mw;
    std::vector<PathAmplitude> paths;
    paths.reserve(2 * static_cast<std::size_t>(window));
    for (int k = 1; k <= window; ++k) {
        for (int u : {k, -k}) {
            double e = mode_offset(u, s.omega0);
            double d1 = s.delta - e;
            double d2 = 2.0 * (s.delta - e);
            if (std::abs(d1) < guard)
                throw pole_error("probe is resonant with " + mode_name(u));
            if (std::abs(d2) < guard)
                throw pole_error("photon pair is resonant with doubly occupied " + mode_name(u));
            PathAmplitude p;
            p.mode = u;
            p.state_chain = {"1 photon in waveguide, 1 in " + mode_name(u),
                             "2 photons in " + mode_name(u),
                             "1 photon in " + mode_name(u) + ", shared first-level excitation"};
            p.numerator = numerator;
            p.denominators = {d1, d2, s.delta1, final_det};
            p.value = numerator / (d1 * d2 * s.delta1 * final_det);
            paths.push_back(std::move(p));
        }
    }
    return paths;
}

double two_photon_rate_from_paths(const Scenario& s, const std::vector<PathAmplitude>& paths) {
    validate_scenario(s);
    // Reduced amplitude: signed sum with the final-state denominator stripped,
    // so the lorentzian closure below can regularize the final resonance.
    double reduced = 0.0;
    for (const auto& p : paths)
        reduced += p.numerator / (p.denominators[0] * p.denominators[1] * p.denominators[2]);
    double lorentz = lorentzian_weight(2.0 * s.delta - s.delta2, s.gamma2);
    return 2.0 * s.n_atoms * reduced * reduced * lorentz;
}

FullRateResult two_photon_rate_full(const Scenario& s, int window, bool tail_correction) {
    validate_scenario(s);
    require_between_modes(s);
    require_offset_first_level(s);
    if (window < 1) throw invalid_input("ladder window must be at least 1");

    // Per doubly occupied mode at offset e the reduced amplitude is
    //   2 m1 m2 mw^2 / ((d - e) * 2(d - e) * delta1) = (m1 m2 mw^2/delta1) / (d - e)^2,
    // so the coherent mode sum is the even ladder sum of 1/(d - e)^2.
    auto windowed = [&](int pairs) {
        double p = inverse_square_sum(s.delta, s.omega0, pairs);
        return tail_correction ? p + (inverse_square_sum_closed(s.delta, s.omega0) - p) : p;
    };
    double p_window = inverse_square_sum(s.delta, s.omega0, window);
    double p_eff = windowed(window);

    double unit = s.m1 * s.m2 * s.mw * s.mw / s.delta1;
    double lorentz = lorentzian_weight(2.0 * s.delta - s.delta2, s.gamma2);
    auto rate_of = [&](double p) {
        double t = unit * p;
        return 2.0 * s.n_atoms * t * t * lorentz;
    };

    FullRateResult r;
    r.rate = rate_of(p_eff);
    r.window = window;
    r.n_paths = 2 * window;
    r.tail_corrected = tail_correction;
    r.tail_fraction = (p_eff != 0.0) ? (p_eff - p_window) / p_eff : 0.0;
    if (window > 1 && r.rate > 0.0)
        r.rel_change_from_prev = std::abs(r.rate - rate_of(windowed(window - 1))) / r.rate;
    // Chains through two singly occupied modes, grouped coherently over the
    // photon orderings under the same constant-delta1 bookkeeping, carry the
    // reduced amplitude unit * (S^2 - P). Including them would cancel the
    // doubly occupied sum entirely at delta = 0, which is the same pairwise
    // interference that kills single-photon scattering; they are reported
    // here and excluded from the rate.
    double s_window = interference_sum(s.delta, s.omega0, window);
    if (p_eff != 0.0)
        r.excluded_pair_ratio = (s_window * s_window - p_window) / p_eff;
    if (std::abs(s.gamma2) > 0.5 * s.omega0)
        r.diag.warn("final-state width is comparable to the mode spacing; "
                    "golden rule closure is marginal");
    return r;
}

}  // namespace midgap
