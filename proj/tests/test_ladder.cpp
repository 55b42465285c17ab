#include <cmath>
#include <vector>

#include "doctest.h"
#include "midgap/ladder.hpp"

using namespace midgap;

TEST_CASE("mode offsets straddle the midpoint") {
    CHECK(mode_offset(1, 2.0) == 1.0);
    CHECK(mode_offset(-1, 2.0) == -1.0);
    CHECK(mode_offset(3, 2.0) == 5.0);
    CHECK(mode_offset(-2, 2.0) == -3.0);
}

TEST_CASE("pair sums, exact small cases") {
    CHECK(interference_sum(0.0, 1.0, 1) == 0.0);
    CHECK(interference_sum(0.0, 1.0, 400) == 0.0);
    // One pair at delta = 0.1: 2*0.1/(0.01 - 0.25) = -5/6.
    CHECK(interference_sum(0.1, 1.0, 1) == doctest::Approx(-5.0 / 6.0).epsilon(1e-14));
    // 2*(0.01 + 0.25)/(0.24^2) = 325/36.
    CHECK(inverse_square_sum(0.1, 1.0, 1) == doctest::Approx(325.0 / 36.0).epsilon(1e-14));
}

TEST_CASE("parity is exact in floating point") {
    for (double delta : {0.05, 0.21, 0.37, 0.499}) {
        CHECK(interference_sum(-delta, 1.0, 37) == -interference_sum(delta, 1.0, 37));
        CHECK(inverse_square_sum(-delta, 1.0, 37) == inverse_square_sum(delta, 1.0, 37));
    }
}

TEST_CASE("windowed sums approach the closed forms") {
    double omega0 = 1.0;
    for (double delta : {0.0, 0.1, 0.2, 0.35}) {
        double s_far = interference_sum(delta, omega0, 200000);
        double p_far = inverse_square_sum(delta, omega0, 200000);
        CHECK(s_far == doctest::Approx(interference_sum_closed(delta, omega0)).epsilon(1e-5));
        CHECK(p_far ==
              doctest::Approx(inverse_square_sum_closed(delta, omega0)).epsilon(1e-5));
    }
    CHECK(interference_sum_closed(0.0, 1.0) == 0.0);
    CHECK(inverse_square_sum_closed(0.0, 2.0) == doctest::Approx((pi / 2.0) * (pi / 2.0)));
}

TEST_CASE("inverse square sum is minus the offset derivative") {
    double omega0 = 1.0, h = 1e-6;
    for (double delta : {0.1, 0.27}) {
        double num_closed = -(interference_sum_closed(delta + h, omega0) -
                              interference_sum_closed(delta - h, omega0)) /
                            (2.0 * h);
        CHECK(num_closed ==
              doctest::Approx(inverse_square_sum_closed(delta, omega0)).epsilon(1e-8));

        double num_window =
            -(interference_sum(delta + h, omega0, 1000) -
              interference_sum(delta - h, omega0, 1000)) /
            (2.0 * h);
        CHECK(num_window ==
              doctest::Approx(inverse_square_sum(delta, omega0, 1000)).epsilon(1e-8));
    }
}

TEST_CASE("explicit offset list matches the fused pair form") {
    double delta = 0.17;
    std::vector<double> sym{-1.5, -0.5, 0.5, 1.5};
    CHECK(interference_sum_over(std::span<const double>(sym), delta) ==
          doctest::Approx(interference_sum(delta, 1.0, 2)).epsilon(1e-13));

    std::vector<double> lopsided{-0.5, 0.5, 1.5};
    double expected = interference_sum(delta, 1.0, 1) + 1.0 / (delta - 1.5);
    CHECK(interference_sum_over(std::span<const double>(lopsided), delta) ==
          doctest::Approx(expected).epsilon(1e-13));
}
