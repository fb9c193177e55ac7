#include "alsga/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace alsga {

namespace {

void require_fraction(double v, const char* name)
{
    if (!(v > 0.0 && v <= 1.0)) {
        throw std::invalid_argument(std::string("operators.") + name + " must lie in (0, 1]");
    }
}

}  // namespace

void OperatorConfig::validate() const
{
    if (population_size() == 0) {
        throw std::invalid_argument("operators: offspring counts sum to zero");
    }
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw std::invalid_argument("operators.alpha must be finite and >= 0");
    }
    require_fraction(beta1, "beta1");
    require_fraction(beta2, "beta2");
    require_fraction(beta3, "beta3");
    require_fraction(gamma1, "gamma1");
    require_fraction(gamma2, "gamma2");
    if (beta1 > beta2) {
        throw std::invalid_argument("operators.beta1 must not exceed operators.beta2");
    }
}

std::size_t fraction_count(double fraction, std::size_t n)
{
    if (n == 0) {
        return 0;
    }
    const double raw = std::ceil(fraction * static_cast<double>(n) - 1e-9);
    const auto count = raw < 1.0 ? std::size_t{1} : static_cast<std::size_t>(raw);
    return std::min(count, n);
}

std::size_t elitist_select_rank(std::size_t population_size, double fraction, Rng& rng)
{
    if (population_size == 0) {
        throw std::invalid_argument("elitist_select: empty population");
    }
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw std::invalid_argument("elitist_select: fraction must lie in (0, 1]");
    }
    return rng.below(fraction_count(fraction, population_size));
}

const Chromosome& elitist_select(const Population& population, double fraction, Rng& rng)
{
    return population[elitist_select_rank(population.size(), fraction, rng)].chromosome;
}

std::vector<Member> elite_carryover(const Population& population, std::size_t count)
{
    if (count > population.size()) {
        throw std::invalid_argument("elite_carryover: elite count " + std::to_string(count) +
                                    " exceeds population size " +
                                    std::to_string(population.size()));
    }
    return {population.members().begin(),
            population.members().begin() + static_cast<std::ptrdiff_t>(count)};
}

Chromosome intermediate_crossover(const Chromosome& p1, const Chromosome& p2, double alpha,
                                  Rng& rng)
{
    if (p1.size() != p2.size()) {
        throw std::invalid_argument("intermediate_crossover: parent lengths differ");
    }
    if (!(alpha >= 0.0)) {
        throw std::invalid_argument("intermediate_crossover: alpha must be >= 0");
    }
    Chromosome child;
    child.genes.resize(p1.size());
    const double span = 1.0 + 2.0 * alpha;
    for (std::size_t i = 0; i < p1.size(); ++i) {
        const double s = -alpha + span * rng.uniform();
        child.genes[i] = clamp_gene(p1.genes[i] + s * (p2.genes[i] - p1.genes[i]));
    }
    return child;
}

std::vector<std::size_t> sample_positions(std::size_t n, std::size_t count, Rng& rng)
{
    if (count > n) {
        throw std::invalid_argument("sample_positions: count exceeds population");
    }
    std::vector<std::size_t> picked;
    picked.reserve(count);
    std::vector<char> taken(n, 0);
    for (std::size_t j = n - count; j < n; ++j) {
        std::size_t t = rng.below(j + 1);
        if (taken[t]) {
            t = j;
        }
        taken[t] = 1;
        picked.push_back(t);
    }
    return picked;
}

Chromosome flip_mutation(const Chromosome& chrom, double gamma1, Rng& rng)
{
    require_fraction(gamma1, "gamma1");
    Chromosome out = chrom;
    for (std::size_t pos : sample_positions(chrom.size(), fraction_count(gamma1, chrom.size()), rng)) {
        out.genes[pos] = clamp_gene(1.0 - out.genes[pos]);
    }
    return out;
}

Chromosome bisection_mutation(const Chromosome& chrom, double gamma2, Rng& rng)
{
    require_fraction(gamma2, "gamma2");
    Chromosome out = chrom;
    for (std::size_t pos : sample_positions(chrom.size(), fraction_count(gamma2, chrom.size()), rng)) {
        out.genes[pos] = out.genes[pos] / 2.0;
    }
    return out;
}

std::vector<Chromosome> random_addition(std::size_t count, std::size_t n, Rng& rng)
{
    std::vector<Chromosome> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(random_chromosome(n, rng));
    }
    return out;
}

}  // namespace alsga
