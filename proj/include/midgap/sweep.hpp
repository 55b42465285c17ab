#pragma once

#include <functional>

#include "midgap/io.hpp"
#include "midgap/scenario.hpp"

namespace midgap {

// Runs f(0..n-1) on the given number of worker threads. Work items write
// into caller-owned slots by index, so the assembled result is identical to
// the serial order; the first exception is rethrown after all workers join.
void parallel_for(int n, int threads, const std::function<void(int)>& f);

// Rates over a uniform grid of probe offsets (fractions of omega0, inside
// the pair). Columns: delta_frac, delta_rad_s, r1, r2_two_path, r2_full,
// r1_norm (over the grid maximum), r2_full_norm (over the value at the pair
// midpoint). Row work is independent and thread-safe.
Table delta_sweep(const Scenario& s, double delta_min_frac, double delta_max_frac, int points,
                  int window = 50, int threads = 1);

// Capped and uncapped rates over a log-spaced density grid at fixed mode
// volume. Columns: rho_cm3, n_atoms, r2_dressed, r2_full, n_eff, capped,
// slope (centered log-log slope of r2_dressed, one-sided at the ends).
Table rho_sweep(const Scenario& s, double mode_volume_m3, double rho_min_cm3,
                double rho_max_cm3, int per_decade, int window = 50);

}  // namespace midgap
