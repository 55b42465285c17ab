#pragma once

#include <string>
#include <vector>

#include "midgap/scenario.hpp"

namespace midgap {

struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string note;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool all_passed = true;
};

// Internal consistency battery: symmetry and scaling identities of the
// rate formulas, dressed-basis algebra, saturation behavior, resonance
// rejection, and (optionally) a short dynamic run checked against the
// golden rule. Structural checks evaluate the scenario's couplings at
// fixed probe offsets of their own, so they are meaningful even when the
// scenario sits exactly at the interference null. The mode volume turns
// the scenario's saturation atom number into a density scale.
ValidationReport run_validation(const Scenario& s, double mode_volume_m3,
                                bool with_oracle = true);

}  // namespace midgap
