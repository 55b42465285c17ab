#include "midgap/oracle_probe.hpp"

#include <cmath>
#include <complex>

#include "midgap/ladder.hpp"
#include "midgap/oracle_evolve.hpp"
#include "midgap/oracle_hamiltonian.hpp"
#include "midgap/perturbative.hpp"

namespace midgap {

namespace {

// First order dressed probe photon in the single-excitation basis built by
// build_basis: the waveguide state, then one state per mode, then one per
// atom, in lexicographic order (n_w descending corresponds to index 0 last,
// so locate states explicitly instead of assuming layout).
Eigen::VectorXcd dressed_probe_state(const Scenario& s, const std::vector<BasisState>& basis,
                                     const std::vector<double>& offsets) {
    using namespace std::complex_literals;
    int n_modes = static_cast<int>(offsets.size());
    double s_window = interference_sum_over(std::span<const double>(offsets), s.delta);
    std::complex<double> atom_amp =
        s.m1 * s.mw * s_window / (s.delta - s.delta1 + 1i * s.gamma1);

    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(static_cast<long>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const BasisState& st = basis[i];
        if (st.n_w == 1) {
            psi[static_cast<long>(i)] = 1.0;
            continue;
        }
        for (int l = 0; l < n_modes; ++l)
            if (st.mode_occ[l] == 1) psi[static_cast<long>(i)] = s.mw / (s.delta - offsets[l]);
        for (int level : st.atom_level)
            if (level == 1) psi[static_cast<long>(i)] = atom_amp;
    }
    psi.normalize();
    return psi;
}

}  // namespace

ProbeResult single_photon_probe(const Scenario& s, const ProbeSetup& setup) {
    validate_scenario(s);
    if (!(setup.dt > 0.0)) throw invalid_input("probe setup needs a positive dt");
    if ((setup.t_end > 0.0) == (setup.decay_target > 0.0))
        throw invalid_input("probe setup needs exactly one of t_end and decay_target");
    int n_atoms = static_cast<int>(std::llround(s.n_atoms));
    if (n_atoms < 1 || std::abs(s.n_atoms - n_atoms) > 1e-9)
        throw invalid_input("probe runs need an integer atom count of at least 1");

    ModeSet modes = make_mode_set(s, setup.n_modes);
    std::vector<double> offsets = mode_offsets(modes, s);
    std::vector<BasisState> basis = build_basis(setup.n_modes, n_atoms, 1);

    double predicted = single_photon_rate_windowed(s, std::span<const double>(offsets));
    double t_end = setup.t_end;
    if (!(t_end > 0.0)) {
        if (!(predicted > 0.0))
            throw invalid_input("predicted rate vanishes; pass t_end explicitly");
        t_end = setup.decay_target / predicted;
        // Near the midpoint an asymmetric window leaves the rate pair-cancelled
        // down to a far-mode remnant, and the horizon derived from it can
        // outrun any runnable step count. Refuse instead of grinding; an
        // explicit t_end stays uncapped.
        constexpr double max_derived_steps = 1e8;
        if (t_end > max_derived_steps * setup.dt)
            throw invalid_input("decay target needs more than 1e8 steps at this dt; "
                                "pass t_end explicitly or raise dt");
    }

    double prefix_error = 0.0;
    auto survival_series = [&](const Scenario& sc) {
        HamiltonianMatrix h = build_hamiltonian(sc, modes, basis, Frame::probe);
        Eigen::VectorXcd psi0 = dressed_probe_state(sc, basis, offsets);
        if (setup.prefix_halving_check) {
            // The halving check triples the cost, so run it on a prefix and
            // integrate the long stretch with the verified step.
            EvolveOptions check;
            check.check_halving = true;
            check.halving_tol = setup.prefix_halving_tol;
            Trajectory prefix = evolve(h, psi0, t_end / 16.0, setup.dt, check);
            prefix_error = std::max(prefix_error, prefix.achieved_halving_error);
        }
        EvolveOptions run;
        run.check_halving = false;
        run.max_samples = setup.max_samples;
        return evolve(h, psi0, t_end, setup.dt, run);
    };

    ProbeResult result;
    result.dim = static_cast<int>(basis.size());

    Trajectory with_decay = survival_series(s);
    std::vector<double> series = with_decay.survival;
    if (setup.baseline_ratio) {
        Scenario closed = s;
        closed.gamma1 = 0.0;
        Trajectory baseline = survival_series(closed);
        for (std::size_t i = 0; i < series.size(); ++i) {
            if (!(baseline.survival[i] > 0.0))
                throw extraction_error("baseline survival vanished; window too leaky");
            series[i] /= baseline.survival[i];
        }
    }
    result.prefix_halving_error = prefix_error;

    result.fit = extract_rate(std::span<const double>(with_decay.time),
                              std::span<const double>(series), setup.window_fraction);
    result.time = with_decay.time;
    result.series = std::move(series);
    result.rate = result.fit.rate;
    result.predicted = predicted;
    result.predicted_pair = single_photon_rate(s);
    result.ratio = predicted > 0.0 ? result.rate / predicted : 0.0;
    return result;
}

}  // namespace midgap
