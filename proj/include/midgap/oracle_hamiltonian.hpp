#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "midgap/oracle_basis.hpp"
#include "midgap/scenario.hpp"

namespace midgap {

// Rotating frame for the diagonal. Off-diagonal couplings are frame
// independent. "none" keeps absolute energies (large, forces tiny steps),
// "midpoint" measures photons from the pair midpoint, "probe" from the
// probe itself so the initial state sits at zero energy.
enum class Frame { none, midpoint, probe };

struct HamiltonianMatrix {
    Eigen::SparseMatrix<double> coherent;  // symmetric, rad/s
    Eigen::VectorXd decay;                 // amplitude halfwidths per state, 1/s
    int dim = 0;
};

// Couplings: waveguide <-> each mode with mw * sqrt(n_w) * sqrt(n_l + 1)
// (and conjugate), mode <-> first atomic level with m1 * sqrt(n_l), first
// <-> second level with m2 * sqrt(n_l). Decay: gamma1 per first-level atom
// plus gamma2 per second-level atom. All states of the basis must belong
// to one excitation sector.
HamiltonianMatrix build_hamiltonian(const Scenario& s, const ModeSet& modes,
                                    const std::vector<BasisState>& basis, Frame frame);

}  // namespace midgap
