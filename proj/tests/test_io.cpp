#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "midgap/io.hpp"
#include "midgap/scenario.hpp"

using namespace midgap;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(bool(in));
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

TEST_CASE("scenario specs survive a save/load round trip") {
    ScenarioSpec spec;
    spec.omega0_hz = 2.75e12;
    spec.delta_frac = -0.125;
    spec.gamma1_per_s = 1.0 / 3.0;  // not representable, exercises round-trip
    spec.m1_rad_s = 1.25e9;
    spec.delta1_rad_s = 3.5e12;
    spec.rho_cm3 = 7e14;

    save_scenario_spec("io_roundtrip.scn", spec);
    ScenarioSpec loaded = load_scenario_spec("io_roundtrip.scn");

    CHECK(loaded.omega0_hz == spec.omega0_hz);
    CHECK(loaded.delta_frac == spec.delta_frac);
    CHECK(loaded.gamma1_per_s == spec.gamma1_per_s);
    REQUIRE(loaded.m1_rad_s.has_value());
    CHECK(*loaded.m1_rad_s == 1.25e9);
    REQUIRE(loaded.delta1_rad_s.has_value());
    CHECK(*loaded.delta1_rad_s == 3.5e12);
    CHECK(!loaded.m2_rad_s.has_value());
    CHECK(format_scenario_spec(loaded) == format_scenario_spec(spec));

    CHECK_THROWS_AS(load_scenario_spec("definitely_missing.scn"), invalid_input);
}

TEST_CASE("spec parser skips comments, trims, and lets the last key win") {
    std::istringstream in(
        "# a comment line\n"
        "  omega0_hz = 2e12  \n"
        "\n"
        "\tmw_frac = 0.25\r\n"
        "rho_cm3=1e14\n"
        "rho_cm3 = 1e15\n");
    ScenarioSpec spec = parse_scenario_spec(in);
    CHECK(spec.omega0_hz == 2e12);
    CHECK(spec.mw_frac == 0.25);
    CHECK(spec.rho_cm3 == 1e15);
    CHECK(spec.probe_wavelength_nm == 778.0);  // untouched default
}

TEST_CASE("spec parser rejects malformed input") {
    auto parse = [](const char* text) {
        std::istringstream in(text);
        return parse_scenario_spec(in);
    };
    CHECK_THROWS_AS(parse("bogus_key = 1\n"), invalid_input);
    CHECK_THROWS_AS(parse("omega0_hz = abc\n"), invalid_input);
    CHECK_THROWS_AS(parse("omega0_hz = 1.8e12 xyz\n"), invalid_input);
    CHECK_THROWS_AS(parse("omega0_hz = inf\n"), invalid_input);
    CHECK_THROWS_AS(parse("omega0_hz 1.8e12\n"), invalid_input);

    ScenarioSpec spec;
    apply_override(spec, "rho_cm3=42");
    CHECK(spec.rho_cm3 == 42.0);
    apply_override(spec, "  delta_frac = -0.2\t");
    CHECK(spec.delta_frac == -0.2);
    CHECK_THROWS_AS(apply_override(spec, "nope=1"), invalid_input);
    CHECK_THROWS_AS(apply_override(spec, "rho_cm3"), invalid_input);
}

TEST_CASE("formatting omits absent overrides and keeps them once resolved") {
    ScenarioSpec spec;
    std::string text = format_scenario_spec(spec);
    CHECK(text.find("m1_rad_s") == std::string::npos);
    CHECK(text.find("m2_rad_s") == std::string::npos);
    CHECK(text.find("delta1_rad_s") == std::string::npos);
    CHECK(text.find("omega0_hz = 1.8000000000000000e+12\n") != std::string::npos);

    ResolvedScenario r = resolve(spec);
    std::string resolved_text = format_scenario_spec(r.spec);
    CHECK(resolved_text.find("m1_rad_s") != std::string::npos);
    CHECK(resolved_text.find("m2_rad_s") != std::string::npos);
    CHECK(resolved_text.find("delta1_rad_s") != std::string::npos);

    // A resolved spec reloads to the same scenario without the dipole path.
    std::istringstream in(resolved_text);
    ScenarioSpec reloaded = parse_scenario_spec(in);
    ResolvedScenario again = resolve(reloaded);
    CHECK(again.scenario.m1 == r.scenario.m1);
    CHECK(again.scenario.delta1 == r.scenario.delta1);
}

TEST_CASE("resolve reproduces the built-in defaults") {
    ResolvedScenario r = resolve(ScenarioSpec{});
    Scenario ref = rubidium_default_scenario();

    CHECK(r.scenario.omega0 == ref.omega0);
    CHECK(r.scenario.delta == 0.0);
    CHECK(r.scenario.ebar == doctest::Approx(ref.ebar).epsilon(1e-12));
    CHECK(r.scenario.delta1 == doctest::Approx(ref.delta1).epsilon(1e-12));
    CHECK(r.scenario.delta2 == 0.0);
    CHECK(r.scenario.gamma1 == ref.gamma1);
    CHECK(r.scenario.gamma2 == ref.gamma2);
    CHECK(r.scenario.mw == doctest::Approx(ref.mw).epsilon(1e-15));
    CHECK(r.scenario.m1 == doctest::Approx(ref.m1).epsilon(1e-12));
    CHECK(r.scenario.m2 == doctest::Approx(ref.m2).epsilon(1e-12));
    CHECK(r.scenario.n_atoms == doctest::Approx(ref.n_atoms).epsilon(1e-12));

    REQUIRE(r.spec.m1_rad_s.has_value());
    CHECK(*r.spec.m1_rad_s == r.scenario.m1);
    CHECK(*r.spec.m2_rad_s == r.scenario.m2);
    CHECK(*r.spec.delta1_rad_s == r.scenario.delta1);
    CHECK(r.diag.warnings.empty());
    CHECK(r.geometry.mode_volume == 7.6e-17);
}

TEST_CASE("resolve honors overrides and rejects out-of-range specs") {
    ScenarioSpec spec;
    spec.delta_frac = 0.25;
    spec.m1_rad_s = 5e8;
    spec.delta1_rad_s = 1e12;
    ResolvedScenario r = resolve(spec);
    CHECK(r.scenario.delta == 0.25 * r.scenario.omega0);
    CHECK(r.scenario.m1 == 5e8);
    CHECK(r.scenario.delta1 == 1e12);
    CHECK(r.scenario.m2 > 0.0);  // still from the dipole path

    ScenarioSpec bad = spec;
    bad.delta_frac = 0.5;
    CHECK_THROWS_AS(resolve(bad), invalid_input);
    bad.delta_frac = -0.5;
    CHECK_THROWS_AS(resolve(bad), invalid_input);
    bad = spec;
    bad.omega0_hz = 0.0;
    CHECK_THROWS_AS(resolve(bad), invalid_input);
    bad = spec;
    bad.vm_m3 = 0.0;
    CHECK_THROWS_AS(resolve(bad), invalid_input);
    bad = spec;
    bad.probe_wavelength_nm = -1.0;
    CHECK_THROWS_AS(resolve(bad), invalid_input);

    ScenarioSpec tight;
    tight.ring_diameter_um = 1.0;  // not large against the 0.35 um fiber
    ResolvedScenario warned = resolve(tight);
    CHECK(warned.diag.warnings.size() == 1);
}

TEST_CASE("scenario fingerprints are stable and content sensitive") {
    CHECK(fnv1a("") == 14695981039346656037ull);
    CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);

    ScenarioSpec spec;
    std::string fp = fingerprint_hex(spec);
    REQUIRE(fp.size() == 16);
    for (char c : fp) CHECK(((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f')));
    CHECK(fingerprint_hex(spec) == fp);

    ScenarioSpec other = spec;
    other.rho_cm3 = 2e13;
    CHECK(fingerprint_hex(other) != fp);
}

TEST_CASE("scientific formatting is fixed width and round-trips") {
    CHECK(fmt_sci(1.5, 2) == "1.50e+00");
    CHECK(fmt_sci(-2.5, 3) == "-2.500e+00");
    CHECK(fmt_sci(0.0) == "0.0000000000000000e+00");
    for (double v : {1.0 / 3.0, 3.141592653589793e8, 6.535231913837221e12, -7.25e-31})
        CHECK(std::stod(fmt_sci(v)) == v);
}

TEST_CASE("csv output is byte deterministic") {
    Table t;
    t.comments = {"hello"};
    t.columns = {"a", "b", "n"};
    t.int_cols = {2};
    t.rows = {{1.5, 2.0, 3.0}};

    std::string text = format_csv(t);
    CHECK(text == "# hello\na,b,n\n1.50000000000e+00,2.00000000000e+00,3\n");
    CHECK(format_csv(t) == text);

    write_csv("io_csv_test.csv", t);
    CHECK(slurp("io_csv_test.csv") == text);

    Table bad = t;
    bad.rows.push_back({1.0, 2.0});
    CHECK_THROWS_AS(format_csv(bad), invalid_input);
}
