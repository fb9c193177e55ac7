#include "alsga/encoding.hpp"

#include <cmath>
#include <string>

namespace alsga {

ClusterId decode_gene(double gene, ClusterId k)
{
    if (!(gene >= 0.0 && gene < 1.0)) {
        throw GeneRangeError("gene outside [0, 1): " + std::to_string(gene));
    }
    auto bin = static_cast<ClusterId>(std::floor(gene * static_cast<double>(k)));
    return bin < k ? bin + 1 : k;
}

Chromosome random_chromosome(std::size_t n, Rng& rng)
{
    if (n == 0) {
        throw std::invalid_argument("random_chromosome: gene count must be at least 1");
    }
    Chromosome chrom;
    chrom.genes.resize(n);
    for (double& g : chrom.genes) {
        g = rng.uniform();
    }
    return chrom;
}

void decode_into(std::span<const double> genes, ClusterId k, std::span<ClusterId> out)
{
    if (k < 2) {
        throw std::invalid_argument("decode: cluster count must be at least 2");
    }
    if (genes.size() != out.size()) {
        throw std::invalid_argument("decode: output length mismatch");
    }
    for (std::size_t i = 0; i < genes.size(); ++i) {
        out[i] = decode_gene(genes[i], k);
    }
}

Labeling decode(const Chromosome& chrom, ClusterId k)
{
    Labeling labeling;
    labeling.k = k;
    labeling.labels.resize(chrom.size());
    decode_into(chrom.genes, k, labeling.labels);
    return labeling;
}

void validate_labeling(const Labeling& labeling)
{
    if (labeling.k < 1) {
        throw std::invalid_argument("labeling: cluster count must be positive");
    }
    for (std::size_t i = 0; i < labeling.size(); ++i) {
        ClusterId c = labeling.labels[i];
        if (c < 1 || c > labeling.k) {
            throw std::invalid_argument("labeling: point " + std::to_string(i) + " has label " +
                                        std::to_string(c) + " outside 1.." +
                                        std::to_string(labeling.k));
        }
    }
}

std::size_t non_empty_clusters(const Labeling& labeling)
{
    std::vector<char> used(static_cast<std::size_t>(labeling.k) + 1, 0);
    std::size_t count = 0;
    for (ClusterId c : labeling.labels) {
        if (c < used.size() && !used[c]) {
            used[c] = 1;
            ++count;
        }
    }
    return count;
}

}  // namespace alsga
