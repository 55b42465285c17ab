#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace midgap {

// Bad argument values, malformed files, unknown keys. CLI exit code 1.
struct invalid_input : std::runtime_error {
    explicit invalid_input(const std::string& what) : std::runtime_error(what) {}
};

// A perturbative denominator hit a resonance; the message names the state
// responsible. CLI exit code 2.
struct pole_error : std::runtime_error {
    explicit pole_error(const std::string& what) : std::runtime_error(what) {}
};

// Requested basis would exceed the hard dimension guard. CLI exit code 2.
struct capacity_error : std::runtime_error {
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// Step control of the time integrator failed to meet its tolerance.
struct integration_error : std::runtime_error {
    explicit integration_error(const std::string& what) : std::runtime_error(what) {}
};

// Rate extraction from a trajectory is not meaningful (too little decay,
// non monotone survival).
struct extraction_error : std::runtime_error {
    explicit extraction_error(const std::string& what) : std::runtime_error(what) {}
};

// Non fatal remarks accumulated while evaluating a scenario.
struct diagnostics {
    std::vector<std::string> warnings;
    void warn(std::string msg) { warnings.push_back(std::move(msg)); }
    void merge(const diagnostics& other) {
        warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
    }
};

}  // namespace midgap
