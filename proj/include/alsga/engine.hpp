#pragma once

// Generational loop: every generation keeps the elite unchanged, adds
// crossover children, flip and bisection mutants of elite-selected parents,
// and fresh random chromosomes, then re-evaluates and re-sorts.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "alsga/encoding.hpp"
#include "alsga/fitness.hpp"
#include "alsga/operators.hpp"
#include "alsga/population.hpp"

namespace alsga {

struct RunConfig
{
    ClusterId k = 10;
    std::size_t iterations = 100;
    OperatorConfig operators;
    FitnessConfig fitness;
    std::uint64_t seed = kDefaultSeed;
    /// Evaluation threads. Never affects results.
    std::size_t workers = 1;

    std::size_t population_size() const noexcept { return operators.population_size(); }

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

struct GenerationStats
{
    double min = 0.0;
    double mean = 0.0;
    double max = 0.0;

    bool operator==(const GenerationStats&) const = default;
};

GenerationStats population_stats(const Population& population);

struct RunResult
{
    /// One entry per generation after the initial population.
    std::vector<GenerationStats> trajectory;
    Chromosome best_chromosome;
    Labeling best_labeling;
    FitnessValue best_fitness;
    /// Best member of the initial (generation-0) population.
    Labeling initial_best_labeling;
    FitnessValue initial_best_fitness;
    std::size_t evaluations = 0;
    double wall_time_seconds = 0.0;
};

struct EngineState
{
    std::size_t generation = 0;  ///< completed generations
};

enum class Termination
{
    proceed,
    stop,
};

/// Iteration-budget stop rule.
Termination termination_check(const EngineState& state, const RunConfig& config);

/// Optional per-generation observer, called after each generation is sorted.
using GenerationObserver = std::function<void(std::size_t generation, const Population&)>;

RunResult evolve(const RunConfig& config, const FitnessEvaluator& evaluator,
                 const GenerationObserver& observer = {});

/// Convenience overload building the evaluator from config.fitness.
RunResult evolve(const RunConfig& config, const FeatureMatrix& features, const PlanarIndex& index);

/// Seed of the random stream owned by one offspring slot of one generation.
/// Generation 0 is the initial population.
std::uint64_t slot_seed(std::uint64_t run_seed, std::size_t generation, std::size_t slot);

}  // namespace alsga
