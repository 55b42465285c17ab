#include "midgap/oracle_basis.hpp"

#include <algorithm>
#include <cmath>

#include "midgap/units.hpp"

namespace midgap {

ModeSet make_mode_set(const Scenario& s, int n_modes) {
    validate_scenario(s);
    if (n_modes < 2) throw invalid_input("mode window needs at least the bracketing pair");
    ModeSet m;
    m.omega0 = s.omega0;
    m.waveguide_freq = s.ebar + s.delta;
    m.l_ref = bracketing_mode_index(m.waveguide_freq, s.omega0);
    long lo = m.l_ref - (n_modes - 1) / 2;
    if (lo < 1) throw invalid_input("mode window extends below the first harmonic");
    m.mode_indices.resize(n_modes);
    for (int i = 0; i < n_modes; ++i) m.mode_indices[i] = lo + i;
    return m;
}

std::vector<double> mode_offsets(const ModeSet& m, const Scenario& s) {
    std::vector<double> offsets(m.mode_indices.size());
    for (std::size_t i = 0; i < offsets.size(); ++i)
        offsets[i] = static_cast<double>(m.mode_indices[i]) * m.omega0 - s.ebar;
    return offsets;
}

int total_excitation(const BasisState& state) {
    int n = state.n_w;
    for (int occ : state.mode_occ) n += occ;
    for (int level : state.atom_level) n += level;
    return n;
}

namespace {

// Walks the sector in lexicographic slot order; emit is called once per
// state when non-null, otherwise states are only counted.
template <class Emit>
std::size_t walk_sector(int n_modes, int n_atoms, int sector, int per_mode_cap, Emit emit) {
    BasisState state;
    state.mode_occ.assign(n_modes, 0);
    state.atom_level.assign(n_atoms, 0);
    std::size_t count = 0;

    auto atoms = [&](auto&& self, int atom, int remaining) -> void {
        if (atom == n_atoms) {
            if (remaining == 0) {
                ++count;
                emit(state);
            }
            return;
        }
        for (int level = 0; level <= std::min(2, remaining); ++level) {
            state.atom_level[atom] = level;
            self(self, atom + 1, remaining - level);
        }
        state.atom_level[atom] = 0;
    };
    auto modes = [&](auto&& self, int mode, int remaining) -> void {
        if (mode == n_modes) {
            atoms(atoms, 0, remaining);
            return;
        }
        for (int occ = 0; occ <= std::min(per_mode_cap, remaining); ++occ) {
            state.mode_occ[mode] = occ;
            self(self, mode + 1, remaining - occ);
        }
        state.mode_occ[mode] = 0;
    };
    for (int n_w = 0; n_w <= sector; ++n_w) {
        state.n_w = n_w;
        modes(modes, 0, sector - n_w);
    }
    return count;
}

void check_sector_args(int n_modes, int n_atoms, int sector, int per_mode_cap) {
    if (n_modes < 0 || n_atoms < 0) throw invalid_input("negative mode or atom count");
    if (sector < 0) throw invalid_input("negative excitation sector");
    if (per_mode_cap < 0) throw invalid_input("negative per-mode cap");
}

}  // namespace

std::size_t basis_dimension(int n_modes, int n_atoms, int sector, int per_mode_cap) {
    check_sector_args(n_modes, n_atoms, sector, per_mode_cap);
    return walk_sector(n_modes, n_atoms, sector, per_mode_cap, [](const BasisState&) {});
}

std::vector<BasisState> build_basis(int n_modes, int n_atoms, int sector, int per_mode_cap,
                                    std::size_t max_dim) {
    check_sector_args(n_modes, n_atoms, sector, per_mode_cap);
    std::size_t dim = basis_dimension(n_modes, n_atoms, sector, per_mode_cap);
    if (dim > max_dim)
        throw capacity_error("sector dimension " + std::to_string(dim) + " exceeds cap " +
                             std::to_string(max_dim));
    std::vector<BasisState> states;
    states.reserve(dim);
    walk_sector(n_modes, n_atoms, sector, per_mode_cap,
                [&](const BasisState& s) { states.push_back(s); });
    return states;
}

std::uint64_t state_key(const BasisState& state) {
    std::size_t slots = 1 + state.mode_occ.size() + state.atom_level.size();
    if (slots > 16) throw capacity_error("state key supports at most 16 occupancy slots");
    std::uint64_t key = 0;
    auto push = [&](int occ) {
        if (occ < 0 || occ > 15) throw capacity_error("occupancy outside key range");
        key = (key << 4) | static_cast<std::uint64_t>(occ);
    };
    push(state.n_w);
    for (int occ : state.mode_occ) push(occ);
    for (int level : state.atom_level) push(level);
    return key;
}

BasisIndex::BasisIndex(const std::vector<BasisState>& states) {
    entries_.reserve(states.size());
    for (std::size_t i = 0; i < states.size(); ++i)
        entries_.emplace_back(state_key(states[i]), static_cast<long>(i));
    std::sort(entries_.begin(), entries_.end());
}

long BasisIndex::find(const BasisState& state) const {
    std::uint64_t key = state_key(state);
    auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                               [](const auto& e, std::uint64_t k) { return e.first < k; });
    if (it == entries_.end() || it->first != key) return -1;
    return it->second;
}

std::string state_label(const BasisState& state, const ModeSet& modes) {
    std::string label;
    auto append = [&](const std::string& part) {
        if (!label.empty()) label += " ";
        label += part;
    };
    if (state.n_w > 0) append(std::to_string(state.n_w) + "w");
    for (std::size_t i = 0; i < state.mode_occ.size(); ++i)
        if (state.mode_occ[i] > 0)
            append(std::to_string(state.mode_occ[i]) + "@l" +
                   std::to_string(modes.mode_indices[i]));
    for (std::size_t i = 0; i < state.atom_level.size(); ++i)
        if (state.atom_level[i] > 0)
            append("a" + std::to_string(i) + ":" + std::to_string(state.atom_level[i]));
    if (label.empty()) label = "vacuum";
    return label;
}

}  // namespace midgap
