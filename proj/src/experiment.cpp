#include "alsga/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace alsga {

OperatorConfig with_counts(OperatorConfig ops, const OperatorCounts& counts)
{
    ops.elite = counts.elite;
    ops.crossover = counts.crossover;
    ops.flip = counts.flip;
    ops.bisection = counts.bisection;
    ops.random = counts.random;
    return ops;
}

OperatorCounts scale_counts(const OperatorCounts& counts, double scale)
{
    if (!(scale > 0.0 && scale <= 1.0)) {
        throw std::invalid_argument("scale must lie in (0, 1]");
    }
    const auto raw = counts.as_array();
    const auto target =
        static_cast<std::size_t>(std::llround(static_cast<double>(counts.total()) * scale));
    if (target == 0) {
        throw std::invalid_argument("scale leaves an empty population");
    }
    std::array<std::size_t, 5> scaled{};
    std::array<double, 5> remainder{};
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const double exact = static_cast<double>(raw[i]) * scale;
        // Guard against products such as 200 * 0.1 = 20.000000000000004.
        const double floor_v = std::floor(exact + 1e-9);
        scaled[i] = static_cast<std::size_t>(floor_v);
        remainder[i] = std::max(0.0, exact - floor_v);
        assigned += scaled[i];
    }
    std::array<std::size_t, 5> order{0, 1, 2, 3, 4};
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
    for (std::size_t r = 0; assigned < target; r = (r + 1) % order.size()) {
        ++scaled[order[r]];
        ++assigned;
    }
    // Over-assignment cannot happen from floors, but rounding of `target`
    // down can: take from the smallest remainders.
    for (std::size_t r = order.size(); assigned > target;) {
        r = r == 0 ? order.size() - 1 : r - 1;
        if (scaled[order[r]] > 0) {
            --scaled[order[r]];
            --assigned;
        }
    }
    return OperatorCounts::from_array(scaled);
}

std::vector<ExperimentSpec> builtin_experiments()
{
    struct Row
    {
        const char* label;
        OperatorCounts counts;
    };
    const Row rows[] = {
        {"balanced", {200, 200, 200, 200, 200}},
        {"elite and random only", {500, 0, 0, 0, 500}},
        {"crossover only", {200, 600, 0, 0, 200}},
        {"flip mutation only", {200, 0, 600, 0, 200}},
        {"bisection mutation only", {200, 0, 0, 600, 200}},
        {"crossover overweighted", {200, 400, 100, 100, 200}},
        {"flip mutation overweighted", {200, 100, 400, 100, 200}},
        {"bisection mutation overweighted", {200, 100, 100, 400, 200}},
    };
    RunConfig base;
    base.k = 10;
    base.iterations = 100;
    base.operators.alpha = 0.5;
    base.operators.beta1 = 0.3;
    base.operators.beta2 = 0.7;
    base.operators.beta3 = 0.5;
    base.operators.gamma1 = 0.1;
    base.operators.gamma2 = 0.1;

    std::vector<ExperimentSpec> specs;
    int id = 1;
    for (const Row& row : rows) {
        ExperimentSpec spec;
        spec.id = id++;
        spec.label = row.label;
        spec.counts = row.counts;
        spec.repetitions = 5;
        spec.base = base;
        spec.base.operators = with_counts(base.operators, row.counts);
        specs.push_back(std::move(spec));
    }
    return specs;
}

std::uint64_t run_seed(std::uint64_t master_seed, int experiment_id, std::size_t repetition)
{
    return derive_seed(master_seed, {static_cast<std::uint64_t>(experiment_id), repetition});
}

double ExperimentOutcome::mean_final_best() const
{
    if (runs.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    for (const RunRecord& r : runs) {
        sum += r.result.best_fitness.combined;
    }
    return sum / static_cast<double>(runs.size());
}

const RunRecord& ExperimentOutcome::best_run() const
{
    if (runs.empty()) {
        throw std::logic_error("experiment has no runs");
    }
    auto it = std::max_element(runs.begin(), runs.end(), [](const RunRecord& a, const RunRecord& b) {
        return a.result.best_fitness.combined < b.result.best_fitness.combined;
    });
    return *it;
}

std::vector<GenerationStats> aggregate_trajectories(const std::vector<const RunResult*>& runs)
{
    if (runs.empty()) {
        return {};
    }
    const std::size_t len = runs.front()->trajectory.size();
    for (const RunResult* r : runs) {
        if (r->trajectory.size() != len) {
            throw std::invalid_argument("aggregate_trajectories: trajectories differ in length");
        }
    }
    std::vector<GenerationStats> out(len);
    for (std::size_t g = 0; g < len; ++g) {
        GenerationStats agg = runs.front()->trajectory[g];
        double mean_sum = 0.0;
        for (const RunResult* r : runs) {
            const GenerationStats& s = r->trajectory[g];
            agg.min = std::min(agg.min, s.min);
            agg.max = std::max(agg.max, s.max);
            mean_sum += s.mean;
        }
        agg.mean = mean_sum / static_cast<double>(runs.size());
        out[g] = agg;
    }
    return out;
}

ExperimentReport run_suite(const std::vector<ExperimentSpec>& specs,
                           const FitnessEvaluator& evaluator, const SuiteOptions& options)
{
    const auto started = std::chrono::steady_clock::now();
    ExperimentReport report;
    for (const ExperimentSpec& spec : specs) {
        if (spec.repetitions < 1) {
            throw std::invalid_argument("experiment " + std::to_string(spec.id) +
                                        ": repetitions must be at least 1");
        }
        ExperimentOutcome outcome;
        outcome.spec = spec;
        outcome.spec.counts = scale_counts(spec.counts, options.scale);
        outcome.spec.base.operators = with_counts(spec.base.operators, outcome.spec.counts);
        outcome.spec.base.fitness = evaluator.config();
        outcome.spec.base.workers = options.workers;

        for (std::size_t rep = 0; rep < spec.repetitions; ++rep) {
            RunConfig config = outcome.spec.base;
            config.seed = run_seed(options.master_seed, spec.id, rep);
            RunRecord record;
            record.experiment_id = spec.id;
            record.repetition = rep;
            record.seed = config.seed;
            record.result = evolve(config, evaluator);
            outcome.runs.push_back(std::move(record));
        }
        std::vector<const RunResult*> results;
        for (const RunRecord& r : outcome.runs) {
            results.push_back(&r.result);
        }
        outcome.aggregate = aggregate_trajectories(results);
        report.experiments.push_back(std::move(outcome));
    }
    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
}

}  // namespace alsga
