#pragma once

#include <span>

#include "midgap/errors.hpp"
#include "midgap/oracle_evolve.hpp"

namespace midgap {

struct RateFit {
    double rate = 0.0;          // amplitude-squared decay rate, 1/s
    double rel_residual = 0.0;  // rms residual of ln(survival) over its fitted drop
    int n_points = 0;
    double window_fraction = 0.0;
};

// Least-squares slope of ln(survival) over the trailing window_fraction of
// the trajectory, where early transients have died out. Preconditions: the
// windowed survival must drop by at least 1e-6 of its starting value (else
// extraction_error "below resolution": lengthen t_end), must stay positive,
// and must be near-monotone (largest rise <= 1% of the total drop, else the
// decay has not separated from oscillations: lengthen t_end or weaken the
// couplings).
RateFit extract_rate(std::span<const double> time, std::span<const double> survival,
                     double window_fraction = 0.5);
RateFit extract_rate(const Trajectory& traj, double window_fraction = 0.5);

}  // namespace midgap
