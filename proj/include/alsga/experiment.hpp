#pragma once

// The eight operator settings, each repeated with distinct seeds, aggregated
// into per-iteration min / mean / max series.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "alsga/engine.hpp"

namespace alsga {

struct OperatorCounts
{
    std::size_t elite = 0;
    std::size_t crossover = 0;
    std::size_t flip = 0;
    std::size_t bisection = 0;
    std::size_t random = 0;

    std::size_t total() const noexcept { return elite + crossover + flip + bisection + random; }
    std::array<std::size_t, 5> as_array() const noexcept
    {
        return {elite, crossover, flip, bisection, random};
    }
    static OperatorCounts from_array(const std::array<std::size_t, 5>& a) noexcept
    {
        return {a[0], a[1], a[2], a[3], a[4]};
    }
    bool operator==(const OperatorCounts&) const = default;
};

/// Copy the counts into an operator configuration, keeping its parameters.
OperatorConfig with_counts(OperatorConfig ops, const OperatorCounts& counts);

/// Scale every count by `scale` with largest-remainder rounding so the result
/// sums to round(total * scale). Equal remainders go to the earlier operator.
OperatorCounts scale_counts(const OperatorCounts& counts, double scale);

struct ExperimentSpec
{
    int id = 1;
    std::string label;
    OperatorCounts counts;
    std::size_t repetitions = 5;
    RunConfig base;  ///< k, iterations, fitness and operator parameters
};

/// The eight reference operator settings (population 1000, 100 iterations,
/// 10 clusters, 5 repetitions).
std::vector<ExperimentSpec> builtin_experiments();

/// Run seed derived from the master seed and the (experiment, repetition)
/// pair: derive_seed(master, {experiment_id, repetition}).
std::uint64_t run_seed(std::uint64_t master_seed, int experiment_id, std::size_t repetition);

struct RunRecord
{
    int experiment_id = 0;
    std::size_t repetition = 0;
    std::uint64_t seed = 0;
    RunResult result;
};

struct ExperimentOutcome
{
    ExperimentSpec spec;  ///< with counts already scaled
    /// min of run minima, mean of run means, max of run maxima per iteration.
    std::vector<GenerationStats> aggregate;
    std::vector<RunRecord> runs;

    /// Mean over repetitions of each run's final best fitness.
    double mean_final_best() const;
    /// Run with the highest final best fitness (first on ties).
    const RunRecord& best_run() const;
};

struct ExperimentReport
{
    std::vector<ExperimentOutcome> experiments;
    double wall_time_seconds = 0.0;
};

struct SuiteOptions
{
    double scale = 1.0;  ///< in (0, 1]
    std::uint64_t master_seed = kDefaultSeed;
    std::size_t workers = 1;
};

/// Pointwise aggregation of equally long run trajectories.
std::vector<GenerationStats> aggregate_trajectories(const std::vector<const RunResult*>& runs);

ExperimentReport run_suite(const std::vector<ExperimentSpec>& specs,
                           const FitnessEvaluator& evaluator, const SuiteOptions& options);

}  // namespace alsga
