#include "midgap/sweep.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>
#include <vector>

#include "midgap/dressed.hpp"
#include "midgap/perturbative.hpp"

namespace midgap {

void parallel_for(int n, int threads, const std::function<void(int)>& f) {
    if (n <= 0) return;
    if (threads < 1) throw invalid_input("thread count must be at least 1");
    if (threads == 1 || n == 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    int count = std::min(threads, n);
    pool.reserve(static_cast<std::size_t>(count));
    for (int t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

Table delta_sweep(const Scenario& s, double delta_min_frac, double delta_max_frac, int points,
                  int window, int threads) {
    validate_scenario(s);
    if (points < 2) throw invalid_input("sweep needs at least 2 points");
    if (!(delta_min_frac < delta_max_frac)) throw invalid_input("empty sweep range");
    if (std::abs(delta_min_frac) >= 0.5 || std::abs(delta_max_frac) >= 0.5)
        throw invalid_input("sweep range must stay strictly inside the pair");

    std::vector<std::vector<double>> rows(static_cast<std::size_t>(points));
    parallel_for(points, threads, [&](int i) {
        double frac = delta_min_frac +
                      (delta_max_frac - delta_min_frac) * i / static_cast<double>(points - 1);
        Scenario sc = s;
        sc.delta = frac * s.omega0;
        double r1 = single_photon_rate(sc);
        double r2_pair = two_photon_rate_two_path(sc);
        double r2_full = two_photon_rate_full(sc, window).rate;
        rows[static_cast<std::size_t>(i)] = {frac, sc.delta, r1, r2_pair, r2_full, 0.0, 0.0};
    });

    Scenario center = s;
    center.delta = 0.0;
    double r2_center = two_photon_rate_full(center, window).rate;
    double r1_max = 0.0;
    for (const auto& row : rows) r1_max = std::max(r1_max, row[2]);
    for (auto& row : rows) {
        row[5] = r1_max > 0.0 ? row[2] / r1_max : 0.0;
        row[6] = r2_center > 0.0 ? row[4] / r2_center : 0.0;
    }

    Table t;
    t.columns = {"delta_frac", "delta_rad_s", "r1", "r2_two_path", "r2_full", "r1_norm",
                 "r2_full_norm"};
    t.rows = std::move(rows);
    return t;
}

Table rho_sweep(const Scenario& s, double mode_volume_m3, double rho_min_cm3,
                double rho_max_cm3, int per_decade, int window) {
    validate_scenario(s);
    if (!(rho_min_cm3 > 0.0) || !(rho_max_cm3 > rho_min_cm3))
        throw invalid_input("density range must be positive and increasing");
    if (per_decade < 1) throw invalid_input("per_decade must be at least 1");

    double decades = std::log10(rho_max_cm3 / rho_min_cm3);
    int points = static_cast<int>(std::lround(decades * per_decade)) + 1;
    std::vector<double> rho(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        rho[static_cast<std::size_t>(i)] = rho_min_cm3 * std::pow(10.0, i / double(per_decade));
    // Land exactly on the requested endpoint despite the rounded grid.
    rho.back() = std::max(rho.back(), rho_max_cm3);

    std::vector<SaturationRow> curve = saturation_curve(s, rho, mode_volume_m3, window);

    Table t;
    t.columns = {"rho_cm3", "n_atoms", "r2_dressed", "r2_full", "n_eff", "capped", "slope"};
    t.int_cols = {5};
    t.rows.reserve(curve.size());
    auto log_rate = [&](std::size_t i) { return std::log(std::max(curve[i].rate, 1e-300)); };
    for (std::size_t i = 0; i < curve.size(); ++i) {
        std::size_t lo = i > 0 ? i - 1 : i;
        std::size_t hi = i + 1 < curve.size() ? i + 1 : i;
        double slope = (log_rate(hi) - log_rate(lo)) /
                       (std::log(curve[hi].rho_cm3) - std::log(curve[lo].rho_cm3));
        t.rows.push_back({curve[i].rho_cm3, curve[i].n_atoms, curve[i].rate,
                          curve[i].rate_uncapped, curve[i].n_eff,
                          curve[i].capped ? 1.0 : 0.0, slope});
    }
    return t;
}

}  // namespace midgap
