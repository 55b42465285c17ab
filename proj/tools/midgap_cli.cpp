#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "midgap/dressed.hpp"
#include "midgap/io.hpp"
#include "midgap/oracle_basis.hpp"
#include "midgap/oracle_probe.hpp"
#include "midgap/perturbative.hpp"
#include "midgap/sweep.hpp"
#include "midgap/validate.hpp"

namespace {

constexpr const char* tool_version = "midgap 1.0.0";

struct ScenarioArgs {
    std::string path;
    std::vector<std::string> sets;
    double gamma2_frac = -1.0;  // gamma2 as a fraction of omega0, when >= 0
};

void add_scenario_options(CLI::App* cmd, ScenarioArgs& args, bool with_gamma2_frac) {
    cmd->add_option("--scenario", args.path, "scenario file (key=value lines)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--set", args.sets, "override a scenario key, key=value (repeatable)")
        ->allow_extra_args(false);
    if (with_gamma2_frac)
        cmd->add_option("--gamma2-frac", args.gamma2_frac,
                        "set gamma2 to this fraction of the mode spacing");
}

midgap::ResolvedScenario load_scenario(const ScenarioArgs& args) {
    midgap::ScenarioSpec spec;
    if (!args.path.empty()) spec = midgap::load_scenario_spec(args.path);
    for (const std::string& assignment : args.sets) midgap::apply_override(spec, assignment);
    if (args.gamma2_frac >= 0.0)
        spec.gamma2_per_s = args.gamma2_frac * midgap::two_pi * spec.omega0_hz;
    return midgap::resolve(spec);
}

std::vector<std::string> table_comments(const std::string& what,
                                        const midgap::ResolvedScenario& r) {
    std::vector<std::string> c;
    c.push_back(tool_version);
    c.push_back(what);
    c.push_back("scenario " + midgap::fingerprint_hex(r.spec));
    std::istringstream lines(midgap::format_scenario_spec(r.spec));
    for (std::string line; std::getline(lines, line);) c.push_back("  " + line);
    for (const std::string& w : r.diag.warnings) c.push_back("warning: " + w);
    return c;
}

void print_warnings(const midgap::diagnostics& diag) {
    for (const std::string& w : diag.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
}

int run_point(const ScenarioArgs& args, int window) {
    midgap::ResolvedScenario r = load_scenario(args);
    const midgap::Scenario& s = r.scenario;

    midgap::diagnostics diag = r.diag;
    double r1 = midgap::single_photon_rate(s, &diag);
    double m_eff = midgap::effective_matrix_element(s);
    double r2_pair = midgap::two_photon_rate_two_path(s, &diag);
    midgap::FullRateResult full = midgap::two_photon_rate_full(s, window);
    diag.merge(full.diag);
    midgap::DressedRateResult dressed = midgap::two_photon_rate_dressed_info(s, window);
    diag.merge(dressed.diag);

    std::printf("scenario %s\n", midgap::fingerprint_hex(r.spec).c_str());
    auto row = [](const char* name, double value, const char* unit) {
        std::printf("%-22s %s %s\n", name, midgap::fmt_sci(value, 6).c_str(), unit);
    };
    row("omega0", s.omega0, "rad/s");
    row("delta", s.delta, "rad/s");
    row("ebar", s.ebar, "rad/s");
    row("delta1", s.delta1, "rad/s");
    row("delta2", s.delta2, "rad/s");
    row("gamma1", s.gamma1, "1/s");
    row("gamma2", s.gamma2, "1/s");
    row("m1", s.m1, "rad/s");
    row("m2", s.m2, "rad/s");
    row("mw", s.mw, "rad/s");
    row("n_atoms", s.n_atoms, "");
    row("m_eff", m_eff, "rad/s");
    row("r1", r1, "1/s");
    row("r2_two_path", r2_pair, "1/s");
    std::printf("%-22s %s 1/s (window %d, tail %s)\n", "r2_full",
                midgap::fmt_sci(full.rate, 6).c_str(), full.window,
                full.tail_corrected ? "corrected" : "raw");
    std::printf("%-22s %s 1/s (n_eff %s%s)\n", "r2_dressed",
                midgap::fmt_sci(dressed.rate, 6).c_str(),
                midgap::fmt_sci(dressed.n_eff, 6).c_str(), dressed.capped ? ", capped" : "");
    row("n_star", dressed.n_star, "atoms");
    print_warnings(diag);
    return 0;
}

int run_fig3(const ScenarioArgs& args, int window, int threads, double delta_min,
             double delta_max, int points, const std::string& out) {
    midgap::ResolvedScenario r = load_scenario(args);
    midgap::Table t =
        midgap::delta_sweep(r.scenario, delta_min, delta_max, points, window, threads);
    std::ostringstream what;
    what << "probe offset sweep, delta_frac " << delta_min << " .. " << delta_max << ", "
         << points << " points, window " << window;
    t.comments = table_comments(what.str(), r);
    midgap::write_csv(out, t);
    print_warnings(r.diag);
    std::printf("wrote %s (%d rows)\n", out.c_str(), static_cast<int>(t.rows.size()));
    return 0;
}

int run_fig4(const ScenarioArgs& args, int window, double rho_min, double rho_max,
             int per_decade, const std::string& out) {
    midgap::ResolvedScenario r = load_scenario(args);
    midgap::Table t = midgap::rho_sweep(r.scenario, r.geometry.mode_volume, rho_min, rho_max,
                                        per_decade, window);
    std::ostringstream what;
    what << "density sweep, rho_cm3 " << rho_min << " .. " << rho_max << ", " << per_decade
         << " points per decade, window " << window;
    t.comments = table_comments(what.str(), r);
    midgap::write_csv(out, t);
    print_warnings(r.diag);
    std::printf("wrote %s (%d rows)\n", out.c_str(), static_cast<int>(t.rows.size()));
    return 0;
}

int run_validate(const ScenarioArgs& args, bool skip_oracle) {
    midgap::ResolvedScenario r = load_scenario(args);
    midgap::ValidationReport report =
        midgap::run_validation(r.scenario, r.geometry.mode_volume, !skip_oracle);
    for (const midgap::CheckResult& c : report.checks) {
        std::printf("[%s] %-34s measured %-13s tol %-9s %s\n", c.passed ? " OK " : "FAIL",
                    c.name.c_str(), midgap::fmt_sci(c.measured, 6).c_str(),
                    midgap::fmt_sci(c.tolerance, 2).c_str(), c.note.c_str());
    }
    print_warnings(r.diag);
    std::printf("%s\n", report.all_passed ? "all checks passed" : "validation failed");
    return report.all_passed ? 0 : 3;
}

// About 25 integrator steps per period of the fastest scale in the probe
// frame. The prefix halving check still guards the result.
double auto_dt(const midgap::Scenario& s, int n_modes) {
    double diag = std::max(std::abs(s.delta1 - s.delta),
                           (0.5 * n_modes + 1.0) * s.omega0 + std::abs(s.delta));
    double coupling =
        4.0 * (std::abs(s.mw) + std::abs(s.m1) * std::sqrt(std::max(s.n_atoms, 1.0)));
    return 0.25 / (diag + coupling);
}

int run_oracle(const ScenarioArgs& args, std::optional<double> delta_frac, int n_modes,
               double dt, double t_end, double decay_target, double window_fraction,
               bool no_baseline, const std::string& out) {
    ScenarioArgs effective = args;
    if (delta_frac)
        effective.sets.push_back("delta_frac=" + midgap::fmt_sci(*delta_frac));
    midgap::ResolvedScenario r = load_scenario(effective);

    midgap::ProbeSetup setup;
    setup.n_modes = n_modes;
    setup.dt = dt > 0.0 ? dt : auto_dt(r.scenario, n_modes);
    if (t_end > 0.0)
        setup.t_end = t_end;
    else
        setup.decay_target = decay_target;
    setup.window_fraction = window_fraction;
    setup.baseline_ratio = !no_baseline;

    midgap::ProbeResult probe = midgap::single_photon_probe(r.scenario, setup);

    std::printf("dim %d, %d modes, dt %s s, %d samples\n", probe.dim, n_modes,
                midgap::fmt_sci(setup.dt, 4).c_str(), static_cast<int>(probe.time.size()));
    std::printf("%-22s %s 1/s\n", "measured rate", midgap::fmt_sci(probe.rate, 6).c_str());
    std::printf("%-22s %s 1/s (same mode window)\n", "predicted rate",
                midgap::fmt_sci(probe.predicted, 6).c_str());
    std::printf("%-22s %s\n", "ratio", midgap::fmt_sci(probe.ratio, 6).c_str());
    std::printf("%-22s %s 1/s\n", "adjacent-pair formula",
                midgap::fmt_sci(probe.predicted_pair, 6).c_str());
    std::printf("%-22s %s (fit residual %s)\n", "prefix halving error",
                midgap::fmt_sci(probe.prefix_halving_error, 2).c_str(),
                midgap::fmt_sci(probe.fit.rel_residual, 2).c_str());
    print_warnings(r.diag);

    if (!out.empty()) {
        midgap::Table t;
        std::ostringstream what;
        what << "single photon survival, " << n_modes << " modes, dim " << probe.dim
             << (no_baseline ? "" : ", divided by the gamma1 = 0 baseline");
        t.comments = table_comments(what.str(), r);
        t.comments.push_back("measured rate " + midgap::fmt_sci(probe.rate) + " 1/s");
        t.comments.push_back("predicted rate " + midgap::fmt_sci(probe.predicted) + " 1/s");
        t.columns = {"time_s", no_baseline ? "survival" : "survival_ratio"};
        t.rows.reserve(probe.time.size());
        for (std::size_t i = 0; i < probe.time.size(); ++i)
            t.rows.push_back({probe.time[i], probe.series[i]});
        midgap::write_csv(out, t);
        std::printf("wrote %s (%d rows)\n", out.c_str(), static_cast<int>(t.rows.size()));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"scattering and two-photon absorption rates for a probe tuned between"
                 " two modes of a fiber-coupled ring resonator"};
    app.set_version_flag("--version", tool_version);
    app.require_subcommand(1);

    ScenarioArgs args;
    int window = 50;
    int threads = 1;
    std::string out;

    CLI::App* point = app.add_subcommand("point", "print resolved parameters and rates");
    add_scenario_options(point, args, true);
    point->add_option("--window", window, "mode pairs in the ladder sum");

    CLI::App* fig3 = app.add_subcommand("fig3", "sweep the probe offset, write rates to CSV");
    add_scenario_options(fig3, args, true);
    fig3->add_option("--window", window, "mode pairs in the ladder sum");
    fig3->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    double delta_min = -0.3, delta_max = 0.3;
    int points = 61;
    fig3->add_option("--delta-min", delta_min, "lowest probe offset, fraction of omega0");
    fig3->add_option("--delta-max", delta_max, "highest probe offset, fraction of omega0");
    fig3->add_option("--points", points, "grid points")->check(CLI::PositiveNumber);
    fig3->add_option("--out", out, "output CSV path");

    CLI::App* fig4 = app.add_subcommand("fig4", "sweep the atom density, write rates to CSV");
    add_scenario_options(fig4, args, true);
    fig4->add_option("--window", window, "mode pairs in the ladder sum");
    double rho_min = 1e12, rho_max = 1e18;
    int per_decade = 4;
    fig4->add_option("--rho-min", rho_min, "lowest density, atoms/cm^3");
    fig4->add_option("--rho-max", rho_max, "highest density, atoms/cm^3");
    fig4->add_option("--per-decade", per_decade, "grid points per decade")
        ->check(CLI::PositiveNumber);
    fig4->add_option("--out", out, "output CSV path");

    CLI::App* validate = app.add_subcommand("validate", "run the consistency check battery");
    add_scenario_options(validate, args, false);
    bool skip_oracle = false;
    validate->add_flag("--skip-oracle", skip_oracle, "skip the direct integration check");

    CLI::App* oracle = app.add_subcommand(
        "oracle-run", "integrate one probe photon against a truncated mode window");
    add_scenario_options(oracle, args, false);
    std::optional<double> delta_frac;
    int n_modes = 11;
    double dt = 0.0, t_end = 0.0, decay_target = 1e-3, window_fraction = 0.5;
    bool no_baseline = false;
    oracle->add_option("--delta-frac", delta_frac, "probe offset, fraction of omega0");
    oracle->add_option("--modes", n_modes, "modes kept in the window")
        ->check(CLI::Range(2, 16));
    oracle->add_option("--dt", dt, "integrator step, s (default: from the fastest scale)");
    oracle->add_option("--t-end", t_end, "total time, s");
    oracle->add_option("--decay-target", decay_target,
                       "when --t-end is absent, integrate until the predicted drop is this");
    oracle->add_option("--window-fraction", window_fraction, "trailing fraction used for the fit");
    oracle->add_flag("--no-baseline", no_baseline, "fit the raw survival, skip the closed run");
    oracle->add_option("--out", out, "write the fitted series to this CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (point->parsed()) return run_point(args, window);
        if (fig3->parsed())
            return run_fig3(args, window, threads, delta_min, delta_max, points,
                            out.empty() ? "fig3.csv" : out);
        if (fig4->parsed())
            return run_fig4(args, window, rho_min, rho_max, per_decade,
                            out.empty() ? "fig4.csv" : out);
        if (validate->parsed()) return run_validate(args, skip_oracle);
        if (oracle->parsed())
            return run_oracle(args, delta_frac, n_modes, dt, t_end, decay_target,
                              window_fraction, no_baseline, out);
    } catch (const midgap::invalid_input& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
