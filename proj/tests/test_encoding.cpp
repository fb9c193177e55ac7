#include <doctest.h>

#include <cmath>
#include <vector>

#include "alsga/encoding.hpp"
#include "alsga/rng.hpp"

using namespace alsga;

TEST_CASE("worked chromosome decodes into two clusters")
{
    const Chromosome c{{0.4387, 0.3816, 0.7655, 0.7952, 0.1869, 0.4898, 0.4456, 0.6463, 0.7094,
                        0.7547}};
    const Labeling l = decode(c, 2);
    CHECK(l.k == 2);
    CHECK(l.labels == std::vector<ClusterId>{1, 1, 2, 2, 1, 1, 1, 2, 2, 2});
}

TEST_CASE("bin boundaries")
{
    for (ClusterId k : {1u, 2u, 7u, 10u}) {
        CHECK(decode_gene(0.0, k) == 1);
        CHECK(decode_gene(kGeneMax, k) == k);
    }
    CHECK(decode_gene(0.999999, 10) == 10);
    CHECK(decode_gene(0.1, 10) == 2);
    CHECK(decode_gene(0.5, 2) == 2);
    CHECK(decode_gene(std::nextafter(0.5, 0.0), 2) == 1);
}

TEST_CASE("genes outside the unit interval are rejected")
{
    CHECK_THROWS_AS(decode_gene(1.0, 10), GeneRangeError);
    CHECK_THROWS_AS(decode_gene(-0.01, 10), GeneRangeError);
    CHECK_THROWS_AS(decode(Chromosome{{0.2, std::nan("")}}, 3), GeneRangeError);
}

TEST_CASE("clamp_gene")
{
    CHECK(clamp_gene(-3.0) == 0.0);
    CHECK(clamp_gene(1.2) == kGeneMax);
    CHECK(clamp_gene(0.25) == 0.25);
    CHECK(clamp_gene(std::nan("")) == 0.0);
}

TEST_CASE("random chromosome range and determinism")
{
    Rng a(7), b(7);
    const Chromosome ca = random_chromosome(10, a);
    const Chromosome cb = random_chromosome(10, b);
    CHECK(ca.size() == 10);
    CHECK(ca == cb);
    for (double g : ca.genes) {
        CHECK(g >= 0.0);
        CHECK(g < 1.0);
    }
    CHECK_THROWS(random_chromosome(0, a));
}

TEST_CASE("pooled genes average one half")
{
    double sum = 0.0;
    std::size_t n = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Rng rng(seed);
        for (double g : random_chromosome(10000, rng).genes) {
            sum += g;
            ++n;
        }
    }
    CHECK(n == 100000);
    CHECK(std::abs(sum / n - 0.5) < 0.01);
}

TEST_CASE("label frequencies follow the binomial model")
{
    Rng rng(kDefaultSeed);
    const Labeling l = decode(random_chromosome(10000, rng), 10);
    std::vector<int> counts(11, 0);
    for (ClusterId c : l.labels) {
        counts[c]++;
    }
    const double sigma = std::sqrt(10000 * 0.1 * 0.9);
    for (ClusterId c = 1; c <= 10; ++c) {
        CHECK(std::abs(counts[c] - 1000.0) <= 3.0 * sigma);
    }
}

TEST_CASE("decode_into matches decode")
{
    Rng rng(3);
    const Chromosome c = random_chromosome(257, rng);
    std::vector<ClusterId> out(c.size());
    decode_into(c.genes, 6, out);
    CHECK(out == decode(c, 6).labels);
}

TEST_CASE("labeling validation and cluster counting")
{
    Labeling ok{{1, 3, 3, 1}, 3};
    CHECK_NOTHROW(validate_labeling(ok));
    CHECK(non_empty_clusters(ok) == 2);
    CHECK_THROWS_AS(validate_labeling(Labeling{{0, 1}, 2}), std::invalid_argument);
    CHECK_THROWS_AS(validate_labeling(Labeling{{1, 4}, 3}), std::invalid_argument);
}
