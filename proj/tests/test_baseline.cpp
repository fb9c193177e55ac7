#include <doctest.h>

#include <algorithm>
#include <vector>

#include "alsga/als_data.hpp"
#include "alsga/baseline.hpp"
#include "alsga/fitness.hpp"
#include "alsga/rng.hpp"
#include "oracles.hpp"

using namespace alsga;

TEST_CASE("k equal to the point count gives zero inertia")
{
    const FeatureMatrix m = feature_matrix_from_rows({{0}, {3}, {7}, {8}, {20}});
    const KMeansResult r = kmeans(m, 5, 1);
    CHECK(r.inertia == 0.0);
    CHECK(non_empty_clusters(r.labeling) == 5);
}

TEST_CASE("two pairs on a line")
{
    const std::vector<double> xs{0, 1, 10, 11};
    const FeatureMatrix m = feature_matrix_from_rows({{0}, {1}, {10}, {11}});
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const KMeansResult r = kmeans(m, 2, seed);
        CHECK(r.inertia == doctest::Approx(oracle::best_two_partition_inertia(xs)));
        CHECK(r.inertia == doctest::Approx(1.0));
        const auto& l = r.labeling.labels;
        CHECK(l[0] == l[1]);
        CHECK(l[2] == l[3]);
        CHECK(l[0] != l[2]);
        std::vector<double> c{r.centers[0][0], r.centers[1][0]};
        std::sort(c.begin(), c.end());
        CHECK(c[0] == 0.5);
        CHECK(c[1] == 10.5);
    }
}

TEST_CASE("k-means reaches the exhaustive optimum on small 1-D sets")
{
    Rng rng(3);
    for (int t = 0; t < 10; ++t) {
        std::vector<double> xs;
        std::vector<std::vector<double>> rows;
        for (int i = 0; i < 10; ++i) {
            // two loose groups
            xs.push_back(rng.normal() + (i < 5 ? 0.0 : 8.0));
            rows.push_back({xs.back()});
        }
        const KMeansResult r = kmeans(feature_matrix_from_rows(rows), 2, t);
        CHECK(r.inertia == doctest::Approx(oracle::best_two_partition_inertia(xs)));
    }
}

TEST_CASE("inertia never increases")
{
    const SyntheticScene s = generate_synthetic_scene(garden_scene(400), 6);
    const FeatureMatrix m = select_features(s.cloud, default_feature_names(), true);
    const KMeansResult r = kmeans(m, 6, 6);
    REQUIRE_FALSE(r.inertia_history.empty());
    for (std::size_t i = 1; i < r.inertia_history.size(); ++i) {
        CHECK(r.inertia_history[i] <= r.inertia_history[i - 1] * (1 + 1e-12));
    }
    CHECK(r.inertia_history.back() == r.inertia);
}

TEST_CASE("separated blobs for several seeds")
{
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const SyntheticScene s = generate_synthetic_scene(separated_blobs_scene(100), seed);
        const FeatureMatrix m = select_features(s.cloud, default_feature_names(), true);
        CHECK(adjusted_rand_index(kmeans(m, 2, seed).labeling, s.truth) >= 0.99);
    }
}

TEST_CASE("k-means argument checks")
{
    const FeatureMatrix m = feature_matrix_from_rows({{0}, {1}});
    CHECK_THROWS_AS(kmeans(m, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(kmeans(m, 0, 1), std::invalid_argument);
}

TEST_CASE("smoothing leaves homogeneous labelings alone")
{
    std::vector<PlanarPosition> pos;
    for (int x = 0; x < 10; ++x) {
        for (int y = 0; y < 10; ++y) {
            pos.push_back({double(x), double(y)});
        }
    }
    PlanarIndex idx(pos);
    const Labeling one{std::vector<ClusterId>(100, 2), 3};
    CHECK(knn_majority_smooth(idx, one, 8) == one);

    Labeling flipped = one;
    flipped.labels[4 * 10 + 5] = 1;
    CHECK(knn_majority_smooth(idx, flipped, 8) == one);
}

TEST_CASE("smoothing reduces the penalty on a noisy two-patch scene")
{
    const FitnessConfig cfg;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const SyntheticScene s = generate_synthetic_scene(two_patch_scene(250), seed);
        const PlanarIndex idx = build_planar_index(s.cloud);
        Rng rng(seed);
        Labeling noisy = s.truth;
        for (auto& c : noisy.labels) {
            if (rng.uniform() < 0.1) {
                c = 3 - c;
            }
        }
        const Labeling smooth = knn_majority_smooth(idx, noisy, 8);
        CHECK(inhomogeneity_penalty(idx, smooth, cfg) < inhomogeneity_penalty(idx, noisy, cfg));
    }
}

TEST_CASE("adjusted Rand index against the pair-counting oracle")
{
    Rng rng(8);
    for (int t = 0; t < 20; ++t) {
        Labeling a{std::vector<ClusterId>(60), 4}, b{std::vector<ClusterId>(60), 3};
        for (std::size_t i = 0; i < 60; ++i) {
            a.labels[i] = rng.below(4) + 1;
            b.labels[i] = t % 2 ? rng.below(3) + 1 : std::min<ClusterId>(a.labels[i], 3);
        }
        CHECK(adjusted_rand_index(a, b) == doctest::Approx(oracle::ari(a.labels, b.labels)));
    }
    const Labeling x{{1, 1, 2, 2, 3}, 3};
    const Labeling y{{3, 3, 1, 1, 2}, 3};
    CHECK(adjusted_rand_index(x, y) == doctest::Approx(1.0));
}
