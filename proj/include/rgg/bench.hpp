#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rgg/scenario.hpp"
#include "rgg/update_report.hpp"

namespace rgg {

/// One report row: every obstacle moved once under one engine.
struct IterationRow {
    int iteration = 0;
    std::string engine;
    UpdateReport totals;
};

struct BenchReport {
    std::string scenario_name;
    std::string mode;
    int nodes = 0;
    int edges = 0;
    double preprocessing_seconds = 0.0;
    std::vector<IterationRow> rows;
    bool equivalence_checked = false;
    bool equivalence_ok = true;
    std::string mismatch_diagnostic;
};

/// Builds the roadmap and approximations (timed as preprocessing), replays
/// the move script through the selected engine(s), and, when both engines
/// run, asserts label equivalence after every iteration.
BenchReport run_scenario(const Scenario& s);

/// Variant over a prebuilt roadmap (the CLI `--roadmap` path).
BenchReport run_scenario_prebuilt(const Scenario& s, const Roadmap& roadmap, const ComponentSet& components);

void emit_report_csv(const BenchReport& r, std::ostream& os);
void emit_report_pretty(const BenchReport& r, std::ostream& os);

/// Label soundness audit against the exact oracle over sampled components.
struct QualityReport {
    long green_samples = 0;
    long green_correct = 0;
    long red_samples = 0;
    long red_correct = 0;
    long gray_samples = 0;
    long gray_exactly_valid = 0;
    long samples = 0;

    double green_rate() const { return green_samples == 0 ? 1.0 : double(green_correct) / green_samples; }
    double red_rate() const { return red_samples == 0 ? 1.0 : double(red_correct) / red_samples; }
    double gray_fraction() const { return samples == 0 ? 0.0 : double(gray_samples) / samples; }
    bool sound() const { return green_correct == green_samples && red_correct == red_samples; }
};

QualityReport classification_quality(const Scenario& s, int samples_per_iteration, std::uint64_t sample_seed);

} // namespace rgg
