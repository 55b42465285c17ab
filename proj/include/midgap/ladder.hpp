#pragma once

#include <cmath>
#include <cstdlib>
#include <span>

#include "midgap/units.hpp"

// Sums over the resonator mode ladder as seen from the midpoint of the
// bracketing mode pair. Mode u (u = ..., -2, -1, +1, +2, ...) sits at offset
// sign(u) * (|u| - 1/2) * omega0. The probe sits at offset delta.
//
// The two windowed sums are accumulated pair by pair in a fused form so that
// the pairwise cancellation at delta = 0 is exact in floating point, not the
// difference of two large terms.
namespace midgap {

template <class S>
S mode_offset(int u, S omega0) {
    const S half_steps = static_cast<S>(std::abs(u)) - S(0.5);
    return (u < 0 ? S(-1) : S(1)) * half_steps * omega0;
}

// sum over u of 1/(delta - e_u), window u = -pairs..+pairs.
// Pair k contributes 2*delta / (delta^2 - a_k^2), a_k = (k - 1/2)*omega0,
// which is odd in delta and exactly zero at delta = 0.
template <class S>
S interference_sum(S delta, S omega0, int pairs) {
    S total = S(0);
    for (int k = pairs; k >= 1; --k) {
        const S a = (static_cast<S>(k) - S(0.5)) * omega0;
        total += S(2) * delta / (delta * delta - a * a);
    }
    return total;
}

// sum over u of 1/(delta - e_u)^2, same window. Pair k contributes
// 2*(delta^2 + a_k^2) / (delta^2 - a_k^2)^2, even in delta.
template <class S>
S inverse_square_sum(S delta, S omega0, int pairs) {
    S total = S(0);
    for (int k = pairs; k >= 1; --k) {
        const S a = (static_cast<S>(k) - S(0.5)) * omega0;
        const S d2 = delta * delta - a * a;
        total += S(2) * (delta * delta + a * a) / (d2 * d2);
    }
    return total;
}

// Whole-ladder limits of the two sums, valid for |delta| < omega0/2:
//   sum 1/(delta - e_u)   -> -(pi/omega0) * tan(pi*delta/omega0)
//   sum 1/(delta - e_u)^2 ->  (pi/omega0)^2 / cos^2(pi*delta/omega0)
// (the second is minus the delta derivative of the first).
template <class S>
S interference_sum_closed(S delta, S omega0) {
    using std::tan;
    return -(pi / omega0) * tan(pi * delta / omega0);
}

template <class S>
S inverse_square_sum_closed(S delta, S omega0) {
    using std::cos;
    const S c = cos(pi * delta / omega0);
    return (pi / omega0) * (pi / omega0) / (c * c);
}

// sum of 1/(delta - e) over an explicit offset list (used for mode windows
// that are not symmetric about the midpoint).
template <class S>
S interference_sum_over(std::span<const S> offsets, S delta) {
    S total = S(0);
    for (std::size_t i = offsets.size(); i-- > 0;) total += S(1) / (delta - offsets[i]);
    return total;
}

}  // namespace midgap
