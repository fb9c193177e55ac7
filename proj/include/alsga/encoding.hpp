#pragma once

// Random-key encoding of a clustering: one real gene per point, binned into
// k equal-width intervals of [0, 1) to obtain the point's cluster.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "alsga/rng.hpp"

namespace alsga {

using ClusterId = std::uint32_t;

/// Largest admissible gene value, 1 - 2^-52. Operators clamp into
/// [0, kGeneMax] so decoding never produces label k + 1.
inline constexpr double kGeneMax = 1.0 - 0x1.0p-52;

/// Thrown when a gene leaves [0, 1); this always indicates an operator bug.
class GeneRangeError : public std::logic_error
{
  public:
    using std::logic_error::logic_error;
};

struct Chromosome
{
    std::vector<double> genes;

    std::size_t size() const noexcept { return genes.size(); }
    bool operator==(const Chromosome&) const = default;
};

/// Per-point cluster assignment with labels in {1, ..., k}. Clusters may be
/// empty.
struct Labeling
{
    std::vector<ClusterId> labels;
    ClusterId k = 0;

    std::size_t size() const noexcept { return labels.size(); }
    bool operator==(const Labeling&) const = default;
};

/// Clamp a gene into [0, kGeneMax].
constexpr double clamp_gene(double g) noexcept
{
    if (!(g > 0.0)) {
        return 0.0;  // also maps NaN to 0
    }
    return g > kGeneMax ? kGeneMax : g;
}

/// Cluster of a single gene: floor(g * k) + 1.
ClusterId decode_gene(double gene, ClusterId k);

Chromosome random_chromosome(std::size_t n, Rng& rng);

Labeling decode(const Chromosome& chrom, ClusterId k);

/// Allocation-free variant of decode for hot loops. out.size() must equal
/// genes.size().
void decode_into(std::span<const double> genes, ClusterId k, std::span<ClusterId> out);

/// Throws std::invalid_argument if any label is outside {1..k} or k < 1.
void validate_labeling(const Labeling& labeling);

/// Number of distinct labels actually used.
std::size_t non_empty_clusters(const Labeling& labeling);

}  // namespace alsga
