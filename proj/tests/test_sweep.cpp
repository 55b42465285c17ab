#include <cmath>
#include <vector>

#include "doctest.h"
#include "midgap/sweep.hpp"

using namespace midgap;

namespace {

Scenario unit_scenario() {
    Scenario s;
    s.omega0 = 1.0;
    s.delta = 0.0;
    s.ebar = 0.0;
    s.delta1 = 10.0;
    s.delta2 = 0.0;
    s.gamma1 = 0.1;
    s.gamma2 = 0.1;
    s.m1 = 1.0;
    s.m2 = 1.0;
    s.mw = 1.0;
    s.n_atoms = 1.0;
    return s;
}

}  // namespace

TEST_CASE("parallel_for covers every index exactly once") {
    std::vector<double> out(100, -1.0);
    parallel_for(100, 7, [&](int i) { out[static_cast<std::size_t>(i)] = double(i) * i; });
    for (int i = 0; i < 100; ++i) CHECK(out[static_cast<std::size_t>(i)] == double(i) * i);

    parallel_for(0, 4, [&](int) { CHECK(false); });
    CHECK_THROWS_AS(parallel_for(10, 0, [](int) {}), invalid_input);
    CHECK_THROWS_AS(parallel_for(100, 4,
                                 [](int i) {
                                     if (i == 5) throw invalid_input("boom");
                                 }),
                    invalid_input);
}

TEST_CASE("offset sweep grid, normalization, and symmetry") {
    Scenario s = unit_scenario();
    Table t = delta_sweep(s, -0.3, 0.3, 21, 10);

    REQUIRE(t.columns.size() == 7);
    REQUIRE(t.rows.size() == 21);
    CHECK(t.rows.front()[0] == -0.3);
    CHECK(t.rows.back()[0] == 0.3);
    for (const auto& row : t.rows) CHECK(row[1] == row[0] * s.omega0);

    // The center row sits exactly midway: the scattering rate vanishes there
    // and the pair rate normalizes to itself.
    const auto& center = t.rows[10];
    CHECK(center[0] == 0.0);
    CHECK(center[2] == 0.0);
    CHECK(center[6] == 1.0);

    double max_norm = 0.0;
    for (const auto& row : t.rows) {
        CHECK(row[5] <= 1.0);
        max_norm = std::max(max_norm, row[5]);
        CHECK(row[3] > 0.0);
        CHECK(row[4] > 0.0);
    }
    CHECK(max_norm == 1.0);

    for (int i = 0; i < 21; ++i) {
        const auto& a = t.rows[static_cast<std::size_t>(i)];
        const auto& b = t.rows[static_cast<std::size_t>(20 - i)];
        CHECK(a[2] == doctest::Approx(b[2]).epsilon(1e-12));
        CHECK(a[4] == doctest::Approx(b[4]).epsilon(1e-12));
    }
}

TEST_CASE("offset sweep output does not depend on the thread count") {
    Scenario s = unit_scenario();
    Table serial = delta_sweep(s, -0.3, 0.3, 21, 10, 1);
    Table threaded = delta_sweep(s, -0.3, 0.3, 21, 10, 4);
    Table rerun = delta_sweep(s, -0.3, 0.3, 21, 10, 4);
    CHECK(format_csv(serial) == format_csv(threaded));
    CHECK(format_csv(threaded) == format_csv(rerun));
}

TEST_CASE("offset sweep guards") {
    Scenario s = unit_scenario();
    CHECK_THROWS_AS(delta_sweep(s, -0.3, 0.3, 1, 10), invalid_input);
    CHECK_THROWS_AS(delta_sweep(s, 0.3, -0.3, 21, 10), invalid_input);
    CHECK_THROWS_AS(delta_sweep(s, -0.5, 0.3, 21, 10), invalid_input);
    CHECK_THROWS_AS(delta_sweep(s, -0.3, 0.5, 21, 10), invalid_input);
    CHECK_THROWS_AS(delta_sweep(s, -0.3, 0.3, 21, 10, 0), invalid_input);
}

TEST_CASE("density sweep in the linear regime") {
    Scenario s = unit_scenario();
    s.m1 = 1e-3;  // keeps the saturation number far above the grid
    Table t = rho_sweep(s, 1e-6, 1e-2, 1e2, 2);

    REQUIRE(t.columns.size() == 7);
    REQUIRE(t.rows.size() == 9);
    REQUIRE(t.int_cols == std::vector<int>{5});
    CHECK(t.rows.back()[0] == 1e2);
    for (const auto& row : t.rows) {
        CHECK(row[1] == doctest::Approx(row[0]).epsilon(1e-12));  // volume 1e-6 m^3
        CHECK(row[5] == 0.0);
        CHECK(row[2] == row[3]);  // uncapped: dressed equals the bare chain
        CHECK(row[6] == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK(t.rows[3][2] / t.rows[1][2] == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("density sweep saturated everywhere") {
    Scenario s = unit_scenario();
    s.m1 = 1e3;  // collective coupling saturates below the smallest density
    Table t = rho_sweep(s, 1e-6, 1e-2, 1e2, 2);
    for (const auto& row : t.rows) {
        CHECK(row[5] == 1.0);
        CHECK(row[2] == t.rows.front()[2]);  // plateau is density independent
        CHECK(row[6] == 0.0);
        CHECK(row[4] == t.rows.front()[4]);  // n_eff pinned at the cap
    }
    CHECK(t.rows.front()[2] > 0.0);
}

TEST_CASE("density sweep guards") {
    Scenario s = unit_scenario();
    CHECK_THROWS_AS(rho_sweep(s, 1e-6, 0.0, 1e2, 2), invalid_input);
    CHECK_THROWS_AS(rho_sweep(s, 1e-6, 1e2, 1e-2, 2), invalid_input);
    CHECK_THROWS_AS(rho_sweep(s, 1e-6, 1e-2, 1e2, 0), invalid_input);
}
