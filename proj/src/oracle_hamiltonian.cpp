#include "midgap/oracle_hamiltonian.hpp"

#include <cmath>
#include <vector>

namespace midgap {

namespace {

double diagonal_energy(const Scenario& s, const ModeSet& m, const BasisState& st, Frame frame) {
    // Per-excitation reference subtracted from absolute energies: 0, the
    // pair midpoint, or the probe. Total weighted excitation is conserved,
    // so all three frames give identical populations.
    double ref = 0.0;
    if (frame == Frame::midpoint) ref = s.ebar;
    if (frame == Frame::probe) ref = s.ebar + s.delta;

    double e = st.n_w * (s.ebar + s.delta - ref);
    for (std::size_t i = 0; i < st.mode_occ.size(); ++i)
        e += st.mode_occ[i] * (static_cast<double>(m.mode_indices[i]) * s.omega0 - ref);
    for (int level : st.atom_level) {
        if (level == 1) e += s.ebar + s.delta1 - ref;
        if (level == 2) e += 2.0 * (s.ebar - ref) + s.delta2;
    }
    return e;
}

}  // namespace

HamiltonianMatrix build_hamiltonian(const Scenario& s, const ModeSet& modes,
                                    const std::vector<BasisState>& basis, Frame frame) {
    validate_scenario(s);
    if (basis.empty()) throw invalid_input("empty basis");
    int n_modes = static_cast<int>(modes.mode_indices.size());
    int sector = total_excitation(basis.front());
    for (const auto& st : basis) {
        if (static_cast<int>(st.mode_occ.size()) != n_modes)
            throw invalid_input("basis does not match the mode window");
        if (total_excitation(st) != sector)
            throw invalid_input("basis mixes excitation sectors");
    }

    BasisIndex index(basis);
    int dim = static_cast<int>(basis.size());
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(dim) * (2 + basis.front().atom_level.size()));

    HamiltonianMatrix h;
    h.dim = dim;
    h.decay = Eigen::VectorXd::Zero(dim);

    for (int i = 0; i < dim; ++i) {
        const BasisState& st = basis[i];
        triplets.emplace_back(i, i, diagonal_energy(s, modes, st, frame));
        for (int level : st.atom_level) {
            if (level == 1) h.decay[i] += s.gamma1;
            if (level == 2) h.decay[i] += s.gamma2;
        }

        auto couple = [&](const BasisState& other, double amp) {
            long j = index.find(other);
            if (j < 0) return;  // outside the truncation
            triplets.emplace_back(i, static_cast<int>(j), amp);
            triplets.emplace_back(static_cast<int>(j), i, amp);
        };

        // Generated once per unordered pair: each block lowers one ladder.
        if (st.n_w > 0) {
            for (int l = 0; l < n_modes; ++l) {
                BasisState other = st;
                other.n_w -= 1;
                other.mode_occ[l] += 1;
                couple(other, s.mw * std::sqrt(static_cast<double>(st.n_w)) *
                                  std::sqrt(static_cast<double>(st.mode_occ[l] + 1)));
            }
        }
        for (int l = 0; l < n_modes; ++l) {
            if (st.mode_occ[l] == 0) continue;
            double root = std::sqrt(static_cast<double>(st.mode_occ[l]));
            for (std::size_t a = 0; a < st.atom_level.size(); ++a) {
                if (st.atom_level[a] > 1) continue;
                BasisState other = st;
                other.mode_occ[l] -= 1;
                other.atom_level[a] += 1;
                couple(other, (st.atom_level[a] == 0 ? s.m1 : s.m2) * root);
            }
        }
    }

    h.coherent.resize(dim, dim);
    h.coherent.setFromTriplets(triplets.begin(), triplets.end());
    return h;
}

}  // namespace midgap
