#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "alsga/als_data.hpp"
#include "alsga/fitness.hpp"
#include "alsga/rng.hpp"
#include "oracles.hpp"

using namespace alsga;

namespace {

std::vector<std::vector<double>> random_rows(std::size_t n, std::size_t d, Rng& rng)
{
    std::vector<std::vector<double>> rows(n, std::vector<double>(d));
    for (auto& r : rows) {
        for (auto& v : r) {
            v = rng.normal();
        }
    }
    return rows;
}

Labeling random_labels(std::size_t n, ClusterId k, Rng& rng)
{
    Labeling l{std::vector<ClusterId>(n), k};
    for (auto& c : l.labels) {
        c = static_cast<ClusterId>(rng.below(k) + 1);
    }
    return l;
}

/// Two 10x10 unit grids side by side; left labelled 1, right labelled 2.
struct Grid
{
    std::vector<PlanarPosition> pos;
    std::vector<std::pair<double, double>> pairs;
    Labeling labels;
};

Grid two_grids()
{
    Grid g;
    for (int x = 0; x < 20; ++x) {
        for (int y = 0; y < 10; ++y) {
            g.pos.push_back({double(x), double(y)});
            g.pairs.emplace_back(x, y);
            g.labels.labels.push_back(x < 10 ? 1 : 2);
        }
    }
    g.labels.k = 2;
    return g;
}

}  // namespace

TEST_CASE("dunn of two tight pairs is nine")
{
    const FeatureMatrix m = feature_matrix_from_rows({{0}, {1}, {10}, {11}});
    const auto d = dunn_index(m, Labeling{{1, 1, 2, 2}, 2});
    REQUIRE(d);
    CHECK(*d == 9.0);
    CHECK(*SortedPairDunn(m)(std::vector<ClusterId>{1, 1, 2, 2}) == 9.0);
}

TEST_CASE("all singletons give an infinite index, capped in the fitness")
{
    const FeatureMatrix m = feature_matrix_from_rows({{0}, {5}, {10}});
    const Labeling l{{1, 2, 3}, 3};
    const auto d = dunn_index(m, l);
    REQUIRE(d);
    CHECK(std::isinf(*d));
    PlanarIndex idx({{0, 0}, {1, 0}, {2, 0}});
    FitnessConfig cfg;
    cfg.lambda = 0.0;
    const FitnessValue v = evaluate(m, idx, l, cfg);
    CHECK(v.dunn == cfg.dunn_cap);
    CHECK(v.combined == cfg.dunn_cap);
}

TEST_CASE("a single non-empty cluster is degenerate")
{
    const FeatureMatrix m = feature_matrix_from_rows({{0}, {5}, {10}});
    const Labeling l{{2, 2, 2}, 4};
    CHECK_FALSE(dunn_index(m, l).has_value());
    PlanarIndex idx({{0, 0}, {1, 0}, {2, 0}});
    const FitnessValue v = evaluate(m, idx, l, FitnessConfig{});
    CHECK(v.degenerate);
    CHECK(v.combined == FitnessConfig{}.worst_fitness);
}

TEST_CASE("dunn matches the brute-force oracle")
{
    Rng rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 50;
        const auto rows = random_rows(n, 3, rng);
        const Labeling l = random_labels(n, 4, rng);
        const FeatureMatrix m = feature_matrix_from_rows(rows);
        const auto want = oracle::dunn(rows, l.labels);
        const auto direct = dunn_index(m, l);
        const auto sorted = SortedPairDunn(m)(l.labels);
        REQUIRE(want);
        REQUIRE(direct);
        REQUIRE(sorted);
        CHECK(std::abs(*direct - *want) <= 1e-12 * *want);
        CHECK(std::abs(*sorted - *want) <= 1e-12 * *want);
    }
}

TEST_CASE("dunn is invariant to relabeling and uniform scaling")
{
    Rng rng(19);
    const auto rows = random_rows(40, 2, rng);
    const Labeling l = random_labels(40, 3, rng);
    Labeling permuted = l;
    for (auto& c : permuted.labels) {
        c = 4 - c;
    }
    auto scaled = rows;
    for (auto& r : scaled) {
        for (auto& v : r) {
            v *= 3.5;
        }
    }
    const double base = *dunn_index(feature_matrix_from_rows(rows), l);
    CHECK(*dunn_index(feature_matrix_from_rows(rows), permuted) == doctest::Approx(base));
    CHECK(*dunn_index(feature_matrix_from_rows(scaled), l) == doctest::Approx(base));
}

TEST_CASE("homogeneous labeling has no penalty")
{
    const Grid g = two_grids();
    PlanarIndex idx(g.pos);
    Labeling one{std::vector<ClusterId>(g.pos.size(), 1), 3};
    CHECK(inhomogeneity_penalty(idx, one, FitnessConfig{}) == 0);
}

TEST_CASE("alternating strip is fully inhomogeneous")
{
    std::vector<PlanarPosition> pos;
    Labeling l{{}, 2};
    for (int i = 0; i < 10; ++i) {
        pos.push_back({double(i), 0.0});
        l.labels.push_back(i % 2 + 1);
    }
    FitnessConfig cfg;
    cfg.neighbor_k = 2;
    cfg.inhomogeneity_rule = 0.5;
    CHECK(inhomogeneity_penalty(PlanarIndex(pos), l, cfg) == 10);
}

TEST_CASE("two grids: penalty matches the brute-force rule")
{
    const Grid g = two_grids();
    PlanarIndex idx(g.pos);
    const FitnessConfig cfg;
    const std::size_t got = inhomogeneity_penalty(idx, g.labels, cfg);
    CHECK(got == oracle::penalty(g.pairs, g.labels.labels, 8, 0.5));

    // only the two columns touching the border can count
    NeighborTable table(idx, 8);
    for (std::size_t i = 0; i < g.pos.size(); ++i) {
        const auto nn = table.neighbors(i);
        std::size_t diff = 0;
        for (auto j : nn) {
            diff += g.labels.labels[j] != g.labels.labels[i];
        }
        if (2 * diff >= nn.size()) {
            CHECK(std::abs(g.pos[i].x - 9.5) < 1.0);
        }
    }
}

TEST_CASE("random labelings: penalty matches the oracle for several rules")
{
    Rng rng(23);
    const Grid g = two_grids();
    PlanarIndex idx(g.pos);
    for (double rule : {0.25, 0.5, 0.75, 1.0}) {
        for (std::size_t k : {1u, 4u, 8u}) {
            const Labeling l = random_labels(g.pos.size(), 3, rng);
            FitnessConfig cfg;
            cfg.neighbor_k = k;
            cfg.inhomogeneity_rule = rule;
            CHECK(inhomogeneity_penalty(idx, l, cfg) == oracle::penalty(g.pairs, l.labels, k, rule));
        }
    }
}

TEST_CASE("flipping one interior point raises the penalty")
{
    const Grid g = two_grids();
    PlanarIndex idx(g.pos);
    Labeling noisy = g.labels;
    noisy.labels[3 * 10 + 4] = 2;  // (3, 4) well inside the left grid
    CHECK(inhomogeneity_penalty(idx, noisy, FitnessConfig{}) >
          inhomogeneity_penalty(idx, g.labels, FitnessConfig{}));
}

TEST_CASE("combined fitness")
{
    FitnessConfig cfg;
    cfg.lambda = 2.0;
    CHECK(combine(3.0, 0, 10, cfg).combined == 3.0);
    CHECK(combine(3.0, 5, 10, cfg).combined == doctest::Approx(2.0));
    cfg.penalty_scale = PenaltyScale::raw;
    CHECK(combine(3.0, 5, 10, cfg).combined == doctest::Approx(-7.0));
    cfg.lambda = 0.0;
    CHECK(combine(3.0, 5, 10, cfg).combined == 3.0);
    CHECK(combine(std::numeric_limits<double>::infinity(), 0, 10, cfg).dunn == cfg.dunn_cap);
    CHECK(combine(std::nullopt, 0, 10, cfg).degenerate);
}

TEST_CASE("lambda zero makes spatial layout irrelevant")
{
    Rng rng(31);
    const Grid g = two_grids();
    const auto rows = random_rows(g.pos.size(), 2, rng);
    const FeatureMatrix m = feature_matrix_from_rows(rows);
    PlanarIndex idx(g.pos);
    FitnessConfig cfg;
    cfg.lambda = 0.0;
    const Labeling l = random_labels(g.pos.size(), 3, rng);
    const FitnessValue v = evaluate(m, idx, l, cfg);
    CHECK(v.penalty_count > 0);
    CHECK(v.combined == v.dunn);
}

TEST_CASE("clean labeling beats border noise")
{
    const SyntheticScene s = generate_synthetic_scene(two_patch_scene(250), 3);
    const auto names = default_feature_names();
    const FeatureMatrix m = select_features(s.cloud, names, true);
    const PlanarIndex idx = build_planar_index(s.cloud);

    // flip 5% of the points closest to the shared border x = 20
    std::vector<std::pair<double, std::size_t>> by_border;
    for (std::size_t i = 0; i < s.cloud.size(); ++i) {
        by_border.emplace_back(std::abs(s.cloud.points[i].x - 20.0), i);
    }
    std::sort(by_border.begin(), by_border.end());
    Labeling noisy = s.truth;
    for (std::size_t j = 0; j < s.cloud.size() / 20; ++j) {
        auto& c = noisy.labels[by_border[j].second];
        c = 3 - c;
    }
    const FitnessConfig cfg;
    CHECK(evaluate(m, idx, s.truth, cfg).combined > evaluate(m, idx, noisy, cfg).combined);
}

TEST_CASE("evaluator agrees with the one-shot route")
{
    Rng rng(37);
    const SyntheticScene s = generate_synthetic_scene(garden_scene(240), 2);
    const auto names = default_feature_names();
    const FeatureMatrix m = select_features(s.cloud, names, true);
    const PlanarIndex idx = build_planar_index(s.cloud);
    const FitnessConfig cfg;
    const FitnessEvaluator ev(m, idx, cfg);
    CHECK(ev.point_count() == s.cloud.size());
    for (int t = 0; t < 20; ++t) {
        const Labeling l = random_labels(s.cloud.size(), 1 + t % 6, rng);
        CHECK(ev.evaluate(l) == evaluate(m, idx, l, cfg));
    }
}

TEST_CASE("config validation names the field")
{
    FitnessConfig cfg;
    cfg.neighbor_k = 0;
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("neighbor_k"), std::invalid_argument);
    cfg = {};
    cfg.inhomogeneity_rule = 1.5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.lambda = -1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
