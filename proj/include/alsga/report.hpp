#pragma once

// Report files: convergence CSV, label CSV, SVG convergence chart and a
// plain-text summary, plus readers for the CSV files.

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "alsga/encoding.hpp"
#include "alsga/engine.hpp"
#include "alsga/experiment.hpp"

namespace alsga {

/// Shortest round-trip representation, locale independent.
std::string format_number(double value);

void write_convergence_csv(const std::filesystem::path& path,
                           std::span<const GenerationStats> series);
std::vector<GenerationStats> read_convergence_csv(const std::filesystem::path& path);

void write_labels_csv(const std::filesystem::path& path, const Labeling& labeling);
/// k is set to the largest label found.
Labeling read_labels_csv(const std::filesystem::path& path);

struct ChartRange
{
    double lo = 0.0;
    double hi = 1.0;
};

/// Common y-range over the given series, ignoring values at or below `floor`
/// (the degenerate-labeling sentinel). Padded by 5% on each side.
ChartRange chart_range(const std::vector<std::span<const GenerationStats>>& series, double floor);

/// Line chart: mean solid, min and max dashed. Values below the range are
/// clipped to the bottom edge.
void write_convergence_svg(const std::filesystem::path& path,
                           std::span<const GenerationStats> series, const ChartRange& range,
                           const std::string& title);

/// convergence.csv, best_labels.csv, convergence.svg and summary.txt for a
/// single run.
void emit_convergence_report(const RunResult& result, const std::filesystem::path& out_dir,
                             const std::string& title, double floor);

/// One sub-directory per experiment (experiment_<id>/) with the same four
/// files, charts sharing one y-range, plus suite_runs.csv and summary.txt.
void emit_convergence_report(const ExperimentReport& report, const std::filesystem::path& out_dir,
                             double floor);

}  // namespace alsga
