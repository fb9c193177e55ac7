#pragma once

// Evolutionary operators over random-key chromosomes. All operators are pure
// functions of their inputs and the supplied Rng; none modifies its inputs.

#include <cstddef>
#include <vector>

#include "alsga/encoding.hpp"
#include "alsga/population.hpp"
#include "alsga/rng.hpp"

namespace alsga {

/// Offspring counts per generation plus the fixed operator parameters.
struct OperatorConfig
{
    std::size_t elite = 200;      ///< carried over unchanged
    std::size_t crossover = 200;  ///< intermediate-crossover children
    std::size_t flip = 200;       ///< flip-mutation children
    std::size_t bisection = 200;  ///< bisection-mutation children
    std::size_t random = 200;     ///< fresh random chromosomes

    double alpha = 0.5;   ///< crossover spread
    double beta1 = 0.3;   ///< first-parent elite fraction
    double beta2 = 0.7;   ///< second-parent elite fraction
    double beta3 = 0.5;   ///< mutation-parent elite fraction
    double gamma1 = 0.1;  ///< fraction of genes flipped
    double gamma2 = 0.1;  ///< fraction of genes bisected

    std::size_t population_size() const noexcept
    {
        return elite + crossover + flip + bisection + random;
    }

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// ceil(fraction * n) clamped to [1, n], tolerant of rounding in the product.
std::size_t fraction_count(double fraction, std::size_t n);

/// Rank (0-based) drawn uniformly from the best ceil(fraction * size).
std::size_t elitist_select_rank(std::size_t population_size, double fraction, Rng& rng);

const Chromosome& elitist_select(const Population& population, double fraction, Rng& rng);

/// The `count` best members, copied verbatim with their fitness.
std::vector<Member> elite_carryover(const Population& population, std::size_t count);

/// child_i = p1_i + s_i (p2_i - p1_i), s_i ~ U[-alpha, 1 + alpha] per gene,
/// clamped into the gene domain.
Chromosome intermediate_crossover(const Chromosome& p1, const Chromosome& p2, double alpha,
                                  Rng& rng);

/// ceil(gamma1 * length) distinct genes c become 1 - c.
Chromosome flip_mutation(const Chromosome& chrom, double gamma1, Rng& rng);

/// ceil(gamma2 * length) distinct genes c become c / 2.
Chromosome bisection_mutation(const Chromosome& chrom, double gamma2, Rng& rng);

std::vector<Chromosome> random_addition(std::size_t count, std::size_t n, Rng& rng);

/// `count` distinct positions from [0, n), uniformly without replacement
/// (Floyd's algorithm). Returned in selection order. Throws when count > n.
std::vector<std::size_t> sample_positions(std::size_t n, std::size_t count, Rng& rng);

}  // namespace alsga
