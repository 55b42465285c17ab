#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "midgap/errors.hpp"
#include "midgap/scenario.hpp"

// Truncated Hilbert space for direct integration: one waveguide mode, a
// finite window of resonator modes around the probe, and a handful of
// three-level atoms. States are restricted to one total-excitation sector,
// counting the second atomic level as two excitations, which the coherent
// couplings conserve.
namespace midgap {

struct ModeSet {
    std::vector<long> mode_indices;  // resonator harmonics, strictly increasing
    long l_ref = 0;                  // harmonic just below the probe
    double waveguide_freq = 0.0;     // rad/s
    double omega0 = 0.0;             // rad/s
};

// Window of n_modes harmonics around the probe: lowest index is
// l_ref - (n_modes - 1)/2, so even counts sit symmetrically about the pair
// midpoint and odd counts carry the unpaired mode below it. The bracketing
// pair is always included (n_modes >= 2).
ModeSet make_mode_set(const Scenario& s, int n_modes);

// Mode energies relative to the pair midpoint, in rad/s, one per index.
std::vector<double> mode_offsets(const ModeSet& m, const Scenario& s);

struct BasisState {
    int n_w = 0;                  // waveguide photon number
    std::vector<int> mode_occ;    // per resonator mode
    std::vector<int> atom_level;  // 0, 1 or 2 per atom
};

int total_excitation(const BasisState& state);

// All states of the given sector in lexicographic order over
// (n_w, mode_occ..., atom_level...). per_mode_cap bounds single-mode
// occupancy (2 suffices for two-photon problems). Throws capacity_error
// with the computed dimension when it would exceed max_dim.
std::vector<BasisState> build_basis(int n_modes, int n_atoms, int sector,
                                    int per_mode_cap = 2,
                                    std::size_t max_dim = 2'000'000);

// Sector size without materializing the states.
std::size_t basis_dimension(int n_modes, int n_atoms, int sector, int per_mode_cap = 2);

// Packed occupancy key, unique within a basis (4 bits per slot; requires
// occupancies <= 15 and at most 16 slots).
std::uint64_t state_key(const BasisState& state);

// Index lookup table for matrix assembly.
class BasisIndex {
  public:
    explicit BasisIndex(const std::vector<BasisState>& states);
    // -1 when the state is outside the basis.
    long find(const BasisState& state) const;

  private:
    std::vector<std::pair<std::uint64_t, long>> entries_;  // sorted by key
};

std::string state_label(const BasisState& state, const ModeSet& modes);

}  // namespace midgap
