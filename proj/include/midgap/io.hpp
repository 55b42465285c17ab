#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "midgap/errors.hpp"
#include "midgap/scenario.hpp"
#include "midgap/units.hpp"

namespace midgap {

// Flat key=value description of a run, the unit users actually edit. Blank
// lines and '#' lines are skipped; keys may repeat (last one wins) so a
// command line can append overrides verbatim. Unknown keys are rejected by
// name. Couplings can be given directly (m1_rad_s, delta1_rad_s) or left to
// the dipole and wavelength paths below.
struct ScenarioSpec {
    double omega0_hz = 1.8e12;            // mode spacing / (2 pi)
    double delta_frac = 0.0;              // probe offset over omega0, in (-1/2, 1/2)
    double probe_wavelength_nm = 778.0;   // selects the mode pair
    double delta_lambda_nm = 2.1;         // first-level offset as a wavelength shift
    std::optional<double> delta1_rad_s;   // overrides delta_lambda_nm when set
    double delta2_rad_s = 0.0;
    double gamma1_per_s = pi * 1e8;       // amplitude halfwidths
    double gamma2_per_s = pi * 1e8;
    double mw_frac = 1.0 / 3.0;           // waveguide coupling over omega0
    std::optional<double> m1_rad_s;       // overrides dipole1 when set
    std::optional<double> m2_rad_s;       // overrides dipole2 when set
    double dipole1_coulomb_m = 3.584e-29;
    double dipole2_coulomb_m = 1.70e-29;
    double vm_m3 = 7.6e-17;               // mode volume
    double rho_cm3 = 1e13;                // atom density
    double fiber_diameter_um = 0.35;
    double ring_diameter_um = 50.0;
};

ScenarioSpec parse_scenario_spec(std::istream& in);
ScenarioSpec load_scenario_spec(const std::string& path);

// "key=value" with the same key set as the file format.
void apply_override(ScenarioSpec& spec, const std::string& assignment);

// Writes every key, including derived couplings when present, so a saved
// resolved spec reloads without re-deriving from dipoles or wavelengths.
std::string format_scenario_spec(const ScenarioSpec& spec);
void save_scenario_spec(const std::string& path, const ScenarioSpec& spec);

struct ResolvedScenario {
    Scenario scenario;
    ResonatorGeometry geometry;
    ScenarioSpec spec;  // input spec with the derived couplings filled in
    diagnostics diag;
};

// Builds the working scenario: the probe wavelength picks the bracketing
// mode pair, the probe sits at the pair midpoint plus delta_frac * omega0,
// couplings come from overrides or the dipole/vacuum-field path, and the
// atom number is the density times the mode volume.
ResolvedScenario resolve(const ScenarioSpec& spec);

// Deterministic CSV: '#' comment lines, a header row, then fixed-format
// rows (17 significant digit scientific, or plain integers for columns
// listed in int_cols).
struct Table {
    std::vector<std::string> comments;
    std::vector<std::string> columns;
    std::vector<int> int_cols;  // indices rendered as integers
    std::vector<std::vector<double>> rows;
};

std::string fmt_sci(double v, int precision = 16);
std::string format_csv(const Table& t);
void write_csv(const std::string& path, const Table& t);

// FNV-1a content fingerprint, echoed in CSV comments to tie an output file
// to the resolved scenario that produced it.
std::uint64_t fnv1a(std::string_view bytes);
std::string fingerprint_hex(const ScenarioSpec& spec);

}  // namespace midgap
