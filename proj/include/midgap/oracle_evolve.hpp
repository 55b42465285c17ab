#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "midgap/errors.hpp"
#include "midgap/oracle_hamiltonian.hpp"

namespace midgap {

struct EvolveOptions {
    bool check_halving = true;    // rerun at dt/2 and compare endpoints
    double halving_tol = 1e-8;    // allowed endpoint disagreement
    int max_samples = 2001;       // stored trajectory points (ends included)
};

struct Trajectory {
    std::vector<double> time;      // s
    std::vector<double> survival;  // |<psi0|psi>|^2
    Eigen::MatrixXd populations;   // samples x dim
    std::vector<double> energy;    // <coherent>/<norm^2>, rad/s
    std::vector<double> norm2;     // <psi|psi>
    double dt = 0.0;               // actual step, s
    double achieved_halving_error = 0.0;
};

// Fixed-step RK4 integration of dpsi/dt = (-i H - Gamma) psi from a
// normalized psi0 (norm within 1e-9 of 1). The step is t_end/N with N the
// smallest count making the step <= dt_hint. With check_halving the run is
// repeated at half the step and the endpoint survival and populations must
// agree within halving_tol (populations relative to their larger value,
// floored at 1e-6), else integration_error reports the achieved error.
// Dimensions up to 256 use a dense matrix; the Hamiltonian is real, so the
// derivative is evaluated as two real matrix-vector products.
Trajectory evolve(const HamiltonianMatrix& h, const Eigen::VectorXcd& psi0, double t_end,
                  double dt_hint, const EvolveOptions& opts = {});

}  // namespace midgap
