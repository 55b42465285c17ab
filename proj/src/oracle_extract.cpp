#include "midgap/oracle_extract.hpp"

#include <cmath>
#include <vector>

namespace midgap {

RateFit extract_rate(std::span<const double> time, std::span<const double> survival,
                     double window_fraction) {
    if (time.size() != survival.size()) throw invalid_input("time/survival size mismatch");
    if (time.size() < 4) throw invalid_input("too few samples for a rate fit");
    if (!(window_fraction > 0.0) || window_fraction > 1.0)
        throw invalid_input("window fraction must be in (0, 1]");

    double t_end = time.back();
    double t_start = t_end * (1.0 - window_fraction);
    std::size_t first = 0;
    while (first < time.size() && time[first] < t_start) ++first;
    if (time.size() - first < 4) throw extraction_error("fit window has fewer than 4 samples");

    double s_head = survival[first];
    double s_tail = survival.back();
    if (!(s_head > 0.0) || !(s_tail > 0.0))
        throw extraction_error("survival is not positive over the fit window");
    double drop = s_head - s_tail;
    if (drop < 1e-6 * s_head)
        throw extraction_error("survival drop is below resolution; lengthen t_end");

    double max_rise = 0.0;
    for (std::size_t i = first + 1; i < survival.size(); ++i)
        max_rise = std::max(max_rise, survival[i] - survival[i - 1]);
    if (max_rise > 0.01 * drop)
        throw extraction_error("survival is not monotone over the fit window; the decay has "
                               "not separated from oscillations, lengthen t_end");

    // ln S is linear in t for a single decaying component; fit its slope.
    std::size_t n = survival.size() - first;
    double mt = 0.0, my = 0.0;
    for (std::size_t i = first; i < survival.size(); ++i) {
        mt += time[i];
        my += std::log(survival[i]);
    }
    mt /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double stt = 0.0, sty = 0.0;
    for (std::size_t i = first; i < survival.size(); ++i) {
        double dt = time[i] - mt;
        stt += dt * dt;
        sty += dt * (std::log(survival[i]) - my);
    }
    if (!(stt > 0.0)) throw extraction_error("degenerate time axis in the fit window");
    double slope = sty / stt;

    double ss_res = 0.0;
    for (std::size_t i = first; i < survival.size(); ++i) {
        double r = std::log(survival[i]) - (my + slope * (time[i] - mt));
        ss_res += r * r;
    }
    double fitted_drop = std::abs(slope) * (time.back() - time[first]);

    RateFit fit;
    fit.rate = -slope;
    fit.rel_residual = std::sqrt(ss_res / static_cast<double>(n)) / std::max(fitted_drop, 1e-300);
    fit.n_points = static_cast<int>(n);
    fit.window_fraction = window_fraction;
    return fit;
}

RateFit extract_rate(const Trajectory& traj, double window_fraction) {
    return extract_rate(std::span<const double>(traj.time),
                        std::span<const double>(traj.survival), window_fraction);
}

}  // namespace midgap
