#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "midgap/io.hpp"

namespace midgap {

namespace {

struct KeyDef {
    const char* name;
    void (*set)(ScenarioSpec&, double);
    bool (*present)(const ScenarioSpec&);
    double (*get)(const ScenarioSpec&);
};

constexpr bool always(const ScenarioSpec&) { return true; }

const KeyDef key_table[] = {
    {"omega0_hz", [](ScenarioSpec& s, double v) { s.omega0_hz = v; }, always,
     [](const ScenarioSpec& s) { return s.omega0_hz; }},
    {"delta_frac", [](ScenarioSpec& s, double v) { s.delta_frac = v; }, always,
     [](const ScenarioSpec& s) { return s.delta_frac; }},
    {"probe_wavelength_nm", [](ScenarioSpec& s, double v) { s.probe_wavelength_nm = v; }, always,
     [](const ScenarioSpec& s) { return s.probe_wavelength_nm; }},
    {"delta_lambda_nm", [](ScenarioSpec& s, double v) { s.delta_lambda_nm = v; }, always,
     [](const ScenarioSpec& s) { return s.delta_lambda_nm; }},
    {"delta1_rad_s", [](ScenarioSpec& s, double v) { s.delta1_rad_s = v; },
     [](const ScenarioSpec& s) { return s.delta1_rad_s.has_value(); },
     [](const ScenarioSpec& s) { return *s.delta1_rad_s; }},
    {"delta2_rad_s", [](ScenarioSpec& s, double v) { s.delta2_rad_s = v; }, always,
     [](const ScenarioSpec& s) { return s.delta2_rad_s; }},
    {"gamma1_per_s", [](ScenarioSpec& s, double v) { s.gamma1_per_s = v; }, always,
     [](const ScenarioSpec& s) { return s.gamma1_per_s; }},
    {"gamma2_per_s", [](ScenarioSpec& s, double v) { s.gamma2_per_s = v; }, always,
     [](const ScenarioSpec& s) { return s.gamma2_per_s; }},
    {"mw_frac", [](ScenarioSpec& s, double v) { s.mw_frac = v; }, always,
     [](const ScenarioSpec& s) { return s.mw_frac; }},
    {"m1_rad_s", [](ScenarioSpec& s, double v) { s.m1_rad_s = v; },
     [](const ScenarioSpec& s) { return s.m1_rad_s.has_value(); },
     [](const ScenarioSpec& s) { return *s.m1_rad_s; }},
    {"m2_rad_s", [](ScenarioSpec& s, double v) { s.m2_rad_s = v; },
     [](const ScenarioSpec& s) { return s.m2_rad_s.has_value(); },
     [](const ScenarioSpec& s) { return *s.m2_rad_s; }},
    {"dipole1_coulomb_m", [](ScenarioSpec& s, double v) { s.dipole1_coulomb_m = v; }, always,
     [](const ScenarioSpec& s) { return s.dipole1_coulomb_m; }},
    {"dipole2_coulomb_m", [](ScenarioSpec& s, double v) { s.dipole2_coulomb_m = v; }, always,
     [](const ScenarioSpec& s) { return s.dipole2_coulomb_m; }},
    {"vm_m3", [](ScenarioSpec& s, double v) { s.vm_m3 = v; }, always,
     [](const ScenarioSpec& s) { return s.vm_m3; }},
    {"rho_cm3", [](ScenarioSpec& s, double v) { s.rho_cm3 = v; }, always,
     [](const ScenarioSpec& s) { return s.rho_cm3; }},
    {"fiber_diameter_um", [](ScenarioSpec& s, double v) { s.fiber_diameter_um = v; }, always,
     [](const ScenarioSpec& s) { return s.fiber_diameter_um; }},
    {"ring_diameter_um", [](ScenarioSpec& s, double v) { s.ring_diameter_um = v; }, always,
     [](const ScenarioSpec& s) { return s.ring_diameter_um; }},
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

void apply_assignment(ScenarioSpec& spec, std::string_view key, std::string_view value,
                      const std::string& where) {
    for (const KeyDef& def : key_table) {
        if (key != def.name) continue;
        double v = 0.0;
        auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
        if (ec != std::errc{} || end != value.data() + value.size() || !std::isfinite(v))
            throw invalid_input(where + ": bad number '" + std::string(value) + "' for key '" +
                                std::string(key) + "'");
        def.set(spec, v);
        return;
    }
    throw invalid_input(where + ": unknown scenario key '" + std::string(key) + "'");
}

}  // namespace

ScenarioSpec parse_scenario_spec(std::istream& in) {
    ScenarioSpec spec;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view body = trim(line);
        if (body.empty() || body.front() == '#') continue;
        std::size_t eq = body.find('=');
        if (eq == std::string_view::npos)
            throw invalid_input("line " + std::to_string(line_no) + ": expected key=value");
        apply_assignment(spec, trim(body.substr(0, eq)), trim(body.substr(eq + 1)),
                         "line " + std::to_string(line_no));
    }
    return spec;
}

ScenarioSpec load_scenario_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input("cannot read scenario file '" + path + "'");
    return parse_scenario_spec(in);
}

void apply_override(ScenarioSpec& spec, const std::string& assignment) {
    std::string_view body = trim(assignment);
    std::size_t eq = body.find('=');
    if (eq == std::string_view::npos)
        throw invalid_input("override '" + assignment + "': expected key=value");
    apply_assignment(spec, trim(body.substr(0, eq)), trim(body.substr(eq + 1)),
                     "override '" + assignment + "'");
}

std::string format_scenario_spec(const ScenarioSpec& spec) {
    std::string out;
    for (const KeyDef& def : key_table) {
        if (!def.present(spec)) continue;
        out += def.name;
        out += " = ";
        out += fmt_sci(def.get(spec));
        out += "\n";
    }
    return out;
}

void save_scenario_spec(const std::string& path, const ScenarioSpec& spec) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw invalid_input("cannot write scenario file '" + path + "'");
    out << format_scenario_spec(spec);
}

ResolvedScenario resolve(const ScenarioSpec& spec) {
    if (!(spec.omega0_hz > 0.0)) throw invalid_input("omega0_hz must be positive");
    if (!(spec.probe_wavelength_nm > 0.0))
        throw invalid_input("probe_wavelength_nm must be positive");
    if (!(std::abs(spec.delta_frac) < 0.5))
        throw invalid_input("delta_frac must lie strictly inside (-1/2, 1/2)");
    if (!(spec.vm_m3 > 0.0)) throw invalid_input("vm_m3 must be positive");

    ResolvedScenario r;
    r.spec = spec;
    Scenario& s = r.scenario;
    s.omega0 = angular_from_hz(spec.omega0_hz);
    s.delta = spec.delta_frac * s.omega0;

    double lambda_m = spec.probe_wavelength_nm * 1e-9;
    double omega_nominal = angular_from_wavelength(lambda_m);
    s.ebar = pair_midpoint(omega_nominal, s.omega0);

    s.delta1 = spec.delta1_rad_s
                   ? *spec.delta1_rad_s
                   : detuning_from_wavelengths(lambda_m, spec.delta_lambda_nm * 1e-9);
    s.delta2 = spec.delta2_rad_s;
    s.gamma1 = spec.gamma1_per_s;
    s.gamma2 = spec.gamma2_per_s;
    s.mw = spec.mw_frac * s.omega0;

    double evac = vacuum_field_amplitude(s.ebar, spec.vm_m3);
    s.m1 = spec.m1_rad_s ? *spec.m1_rad_s : matrix_element(spec.dipole1_coulomb_m, evac);
    s.m2 = spec.m2_rad_s ? *spec.m2_rad_s : matrix_element(spec.dipole2_coulomb_m, evac);
    s.n_atoms = atoms_in_mode_volume(per_m3_from_per_cm3(spec.rho_cm3), spec.vm_m3);
    validate_scenario(s);

    r.geometry.fiber_diameter = spec.fiber_diameter_um * 1e-6;
    r.geometry.ring_diameter = spec.ring_diameter_um * 1e-6;
    r.geometry.mode_volume = spec.vm_m3;
    r.geometry.probe_wavelength = lambda_m;
    validate_geometry(r.geometry, &r.diag);

    r.spec.delta1_rad_s = s.delta1;
    r.spec.m1_rad_s = s.m1;
    r.spec.m2_rad_s = s.m2;
    return r;
}

std::string fingerprint_hex(const ScenarioSpec& spec) {
    std::uint64_t h = fnv1a(format_scenario_spec(spec));
    char buf[17];
    static const char* digits = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = digits[h & 0xf];
        h >>= 4;
    }
    buf[16] = '\0';
    return std::string(buf);
}

}  // namespace midgap
