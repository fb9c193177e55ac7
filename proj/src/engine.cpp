#include "alsga/engine.hpp"

#include <chrono>
#include <stdexcept>
#include <string>

#include "alsga/parallel.hpp"

namespace alsga {

namespace {

enum class SlotKind
{
    elite,
    crossover,
    flip,
    bisection,
    random,
};

SlotKind slot_kind(const OperatorConfig& ops, std::size_t slot) noexcept
{
    std::size_t edge = ops.elite;
    if (slot < edge) {
        return SlotKind::elite;
    }
    edge += ops.crossover;
    if (slot < edge) {
        return SlotKind::crossover;
    }
    edge += ops.flip;
    if (slot < edge) {
        return SlotKind::flip;
    }
    edge += ops.bisection;
    if (slot < edge) {
        return SlotKind::bisection;
    }
    return SlotKind::random;
}

Chromosome make_offspring(SlotKind kind, const Population& parents, const OperatorConfig& ops,
                          std::size_t genes, Rng& rng)
{
    switch (kind) {
        case SlotKind::crossover: {
            const Chromosome& p1 = elitist_select(parents, ops.beta1, rng);
            const Chromosome& p2 = elitist_select(parents, ops.beta2, rng);
            return intermediate_crossover(p1, p2, ops.alpha, rng);
        }
        case SlotKind::flip:
            return flip_mutation(elitist_select(parents, ops.beta3, rng), ops.gamma1, rng);
        case SlotKind::bisection:
            return bisection_mutation(elitist_select(parents, ops.beta3, rng), ops.gamma2, rng);
        case SlotKind::random:
        case SlotKind::elite:
            break;
    }
    return random_chromosome(genes, rng);
}

Member evaluated(Chromosome chrom, const FitnessEvaluator& evaluator, ClusterId k)
{
    const Labeling labeling = decode(chrom, k);
    return Member{std::move(chrom), evaluator.evaluate(labeling)};
}

}  // namespace

void RunConfig::validate() const
{
    if (k < 2) {
        throw std::invalid_argument("run.k must be at least 2");
    }
    if (iterations < 1) {
        throw std::invalid_argument("run.iterations must be at least 1");
    }
    if (workers < 1) {
        throw std::invalid_argument("run.workers must be at least 1");
    }
    operators.validate();
    fitness.validate();
}

GenerationStats population_stats(const Population& population)
{
    GenerationStats stats;
    if (population.empty()) {
        return stats;
    }
    stats.max = population.best().fitness.combined;
    stats.min = population[population.size() - 1].fitness.combined;
    double sum = 0.0;
    for (const Member& m : population.members()) {
        sum += m.fitness.combined;
    }
    stats.mean = sum / static_cast<double>(population.size());
    return stats;
}

Termination termination_check(const EngineState& state, const RunConfig& config)
{
    return state.generation >= config.iterations ? Termination::stop : Termination::proceed;
}

std::uint64_t slot_seed(std::uint64_t run_seed, std::size_t generation, std::size_t slot)
{
    return derive_seed(run_seed, {generation, slot});
}

RunResult evolve(const RunConfig& config, const FitnessEvaluator& evaluator,
                 const GenerationObserver& observer)
{
    config.validate();
    const auto started = std::chrono::steady_clock::now();
    const std::size_t genes = evaluator.point_count();
    const std::size_t size = config.population_size();
    const OperatorConfig& ops = config.operators;
    if (genes == 0) {
        throw std::invalid_argument("evolve: no points to cluster");
    }

    RunResult result;
    result.trajectory.reserve(config.iterations);

    std::vector<Member> slots(size);
    parallel_for(size, config.workers, [&](std::size_t slot) {
        Rng rng(slot_seed(config.seed, 0, slot));
        slots[slot] = evaluated(random_chromosome(genes, rng), evaluator, config.k);
    });
    Population population(std::move(slots));
    result.evaluations = size;

    Member best = population.best();
    result.initial_best_fitness = best.fitness;
    result.initial_best_labeling = decode(best.chromosome, config.k);

    EngineState state;
    while (termination_check(state, config) == Termination::proceed) {
        const std::size_t generation = state.generation + 1;
        std::vector<Member> next = elite_carryover(population, ops.elite);
        next.resize(size);
        const std::size_t fresh = size - ops.elite;
        parallel_for(fresh, config.workers, [&](std::size_t j) {
            const std::size_t slot = ops.elite + j;
            Rng rng(slot_seed(config.seed, generation, slot));
            next[slot] = evaluated(make_offspring(slot_kind(ops, slot), population, ops, genes, rng),
                                   evaluator, config.k);
        });
        population = Population(std::move(next));
        result.evaluations += fresh;
        result.trajectory.push_back(population_stats(population));
        if (population.best().fitness.combined > best.fitness.combined) {
            best = population.best();
        }
        if (observer) {
            observer(generation, population);
        }
        state.generation = generation;
    }

    result.best_labeling = decode(best.chromosome, config.k);
    result.best_chromosome = std::move(best.chromosome);
    result.best_fitness = best.fitness;
    result.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

RunResult evolve(const RunConfig& config, const FeatureMatrix& features, const PlanarIndex& index)
{
    config.validate();
    const FitnessEvaluator evaluator(features, index, config.fitness);
    return evolve(config, evaluator);
}

}  // namespace alsga
