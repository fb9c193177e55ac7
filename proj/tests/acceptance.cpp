// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "alsga/als_data.hpp"
#include "alsga/baseline.hpp"
#include "alsga/cli.hpp"
#include "alsga/encoding.hpp"
#include "alsga/engine.hpp"
#include "alsga/experiment.hpp"
#include "alsga/fitness.hpp"
#include "alsga/spatial_index.hpp"
#include "oracles.hpp"

using namespace alsga;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome
{
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

struct Scene
{
    SyntheticScene scene;
    FeatureMatrix features;
    PlanarIndex index;

    Scene(const SceneSpec& spec, std::uint64_t seed)
        : scene(generate_synthetic_scene(spec, seed)),
          features(select_features(scene.cloud, default_feature_names(), true)),
          index(build_planar_index(scene.cloud))
    {
    }
};

Outcome encoding_fidelity()
{
    const Chromosome c{{0.4387, 0.3816, 0.7655, 0.7952, 0.1869, 0.4898, 0.4456, 0.6463, 0.7094,
                        0.7547}};
    const auto t0 = Clock::now();
    const Labeling l = decode(c, 2);
    const double ms = seconds_since(t0) * 1e3;
    const bool ok = l.labels == std::vector<ClusterId>{1, 1, 2, 2, 1, 1, 1, 2, 2, 2};
    return {ok && ms < 1.0, fmt("exact=%g, %.3f ms", ok, ms)};
}

Outcome dunn_oracle()
{
    Rng rng(101);
    const auto t0 = Clock::now();
    std::size_t bad = 0;
    double worst = 0.0;
    const int instances = 200;
    for (int i = 0; i < instances; ++i) {
        const std::size_t n = 2 + rng.below(59);
        const std::size_t d = 2 + rng.below(4);
        const ClusterId k = static_cast<ClusterId>(2 + rng.below(5));
        std::vector<std::vector<double>> rows(n, std::vector<double>(d));
        for (auto& r : rows) {
            for (auto& v : r) {
                v = rng.normal() * 5.0;
            }
        }
        Labeling l{std::vector<ClusterId>(n), k};
        for (auto& c : l.labels) {
            c = static_cast<ClusterId>(rng.below(k) + 1);
        }
        const FeatureMatrix m = feature_matrix_from_rows(rows);
        const auto want = oracle::dunn(rows, l.labels);
        for (const auto& got : {dunn_index(m, l), SortedPairDunn(m)(l.labels)}) {
            if (want.has_value() != got.has_value()) {
                ++bad;
            } else if (want && std::isinf(*want) != std::isinf(*got)) {
                ++bad;
            } else if (want && !std::isinf(*want)) {
                const double rel = std::abs(*got - *want) / std::max(std::abs(*want), 1e-300);
                worst = std::max(worst, rel);
                bad += rel > 1e-12;
            }
        }
    }
    const double s = seconds_since(t0);
    return {bad == 0 && s < 10.0,
            fmt("%g instances, %g mismatches, max rel err %.2g", instances, double(bad), worst) +
                fmt(", %.2f s", s)};
}

Outcome knn_oracle()
{
    Rng rng(202);
    const auto t0 = Clock::now();
    std::size_t bad = 0, queries = 0;
    const int clouds = 24;
    for (int c = 0; c < clouds; ++c) {
        const std::size_t n = 2 + rng.below(999);
        std::vector<PlanarPosition> pos(n);
        std::vector<std::pair<double, double>> pairs(n);
        const bool lattice = c % 3 == 0;
        for (std::size_t i = 0; i < n; ++i) {
            pos[i] = lattice ? PlanarPosition{double(rng.below(20)), double(rng.below(20))}
                             : PlanarPosition{rng.uniform(-50.0, 50.0), rng.uniform(0.0, 30.0)};
            pairs[i] = {pos[i].x, pos[i].y};
        }
        const PlanarIndex idx(pos);
        for (std::size_t q = 0; q < n; ++q) {
            const auto full = oracle::knn(pairs, q, 8);
            for (std::size_t k : {1u, 5u, 8u}) {
                const auto got = idx.k_nearest(q, k);
                const std::vector<std::size_t> want(full.begin(),
                                                    full.begin() + std::min(k, full.size()));
                bad += std::vector<std::size_t>(got.begin(), got.end()) != want;
                ++queries;
            }
        }
    }
    const double s = seconds_since(t0);
    return {bad == 0 && s < 10.0,
            fmt("%g clouds, %g queries, %g mismatches", clouds, double(queries), double(bad)) +
                fmt(", %.2f s", s)};
}

Outcome elite_monotonicity(const Scene& s)
{
    const FitnessEvaluator ev(s.features, s.index, FitnessConfig{});
    SuiteOptions opt;
    opt.scale = 0.1;
    const ExperimentReport r = run_suite(builtin_experiments(), ev, opt);
    std::size_t violations = 0, runs = 0;
    for (const auto& e : r.experiments) {
        for (const auto& run : e.runs) {
            ++runs;
            const auto& t = run.result.trajectory;
            violations += t.size() != 100;
            violations += t.front().max < run.result.initial_best_fitness.combined;
            for (std::size_t g = 1; g < t.size(); ++g) {
                violations += t[g].max < t[g - 1].max;
            }
        }
    }
    return {violations == 0 && runs == 40,
            fmt("%g runs x 100 iterations, %g violations", double(runs), double(violations))};
}

Outcome beats_random(const Scene& s)
{
    const FitnessEvaluator ev(s.features, s.index, FitnessConfig{});
    auto specs = builtin_experiments();
    specs.resize(2);
    int wins = 0;
    std::string detail;
    for (std::uint64_t set = 1; set <= 5; ++set) {
        SuiteOptions opt;
        opt.scale = 0.1;
        opt.master_seed = 1000 + set;
        const ExperimentReport r = run_suite(specs, ev, opt);
        const double e1 = r.experiments[0].mean_final_best();
        const double e2 = r.experiments[1].mean_final_best();
        wins += e1 > e2;
        detail += fmt(" %.4g/%.4g", e1, e2);
    }
    return {wins >= 4, fmt("experiment 1 ahead in %g of 5 seed sets;", wins) + detail};
}

Outcome penalty_limits()
{
    Rng rng(303);
    bool ok = true;
    for (int t = 0; t < 10; ++t) {
        std::vector<PlanarPosition> pos(50 + rng.below(200));
        for (auto& p : pos) {
            p = {rng.uniform(0.0, 10.0), rng.uniform(0.0, 10.0)};
        }
        const ClusterId label = static_cast<ClusterId>(1 + rng.below(5));
        const Labeling l{std::vector<ClusterId>(pos.size(), label), 5};
        ok = ok && inhomogeneity_penalty(PlanarIndex(pos), l, FitnessConfig{}) == 0;
    }
    std::vector<PlanarPosition> strip;
    Labeling alt{{}, 2};
    for (int i = 0; i < 10; ++i) {
        strip.push_back({double(i), 0.0});
        alt.labels.push_back(static_cast<ClusterId>(i % 2 + 1));
    }
    FitnessConfig cfg;
    cfg.neighbor_k = 2;
    cfg.inhomogeneity_rule = 0.5;
    const std::size_t count = inhomogeneity_penalty(PlanarIndex(strip), alt, cfg);
    return {ok && count == 10,
            fmt("homogeneous all zero=%g, alternating strip %g of 10", ok, double(count))};
}

Outcome baseline_sanity()
{
    int ari_ok = 0, smooth_ok = 0;
    double worst_ari = 1.0;
    const auto t0 = Clock::now();
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Scene blobs(separated_blobs_scene(150), seed);
        const double ari = adjusted_rand_index(kmeans(blobs.features, 2, seed).labeling,
                                               blobs.scene.truth);
        worst_ari = std::min(worst_ari, ari);
        ari_ok += ari >= 0.99;

        const Scene patch(two_patch_scene(250), seed);
        Rng rng(seed);
        Labeling noisy = patch.scene.truth;
        for (auto& c : noisy.labels) {
            if (rng.uniform() < 0.1) {
                c = 3 - c;
            }
        }
        const FitnessConfig cfg;
        const Labeling smooth = knn_majority_smooth(patch.index, noisy, 8);
        smooth_ok += inhomogeneity_penalty(patch.index, smooth, cfg) <
                     inhomogeneity_penalty(patch.index, noisy, cfg);
    }
    return {ari_ok == 5 && smooth_ok == 5,
            fmt("k-means ARI >= 0.99 in %g/5 (min %.4f), smoothing reduced penalty in %g/5", ari_ok,
                worst_ari, smooth_ok) +
                fmt(", %.2f s", seconds_since(t0))};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

Outcome determinism()
{
    const fs::path root = fs::temp_directory_path() / "alsga_acceptance_determinism";
    fs::remove_all(root);
    std::vector<fs::path> dirs;
    for (const char* workers : {"1", "8"}) {
        const fs::path dir = root / (std::string("workers_") + workers);
        std::ostringstream out, err;
        const int code = run_cli({"alsga", "suite", "--scale", "0.1", "--seed", "42", "--workers",
                                  workers, "--out", dir.string()},
                                 out, err);
        if (code != 0) {
            return {false, "suite exited with " + std::to_string(code) + ": " + err.str()};
        }
        dirs.push_back(dir);
    }
    std::size_t files = 0, differing = 0;
    for (const auto& entry : fs::recursive_directory_iterator(dirs[0])) {
        if (entry.path().extension() != ".csv") {
            continue;
        }
        ++files;
        const fs::path other = dirs[1] / fs::relative(entry.path(), dirs[0]);
        differing += !fs::exists(other) || slurp(entry.path()) != slurp(other);
    }
    return {files > 0 && differing == 0,
            fmt("%g CSV files compared, %g differ", double(files), double(differing))};
}

Outcome throughput()
{
    const Scene s(garden_scene(2000), 7);
    RunConfig cfg;  // population 1000, 100 iterations, k = 10
    cfg.k = 10;
    cfg.iterations = 100;
    const auto t0 = Clock::now();
    const RunResult r = evolve(cfg, s.features, s.index);
    const double secs = seconds_since(t0);
    return {secs < 600.0 && r.trajectory.size() == 100 && s.scene.cloud.size() == 2000,
            fmt("%g points, population %g, %.1f s", double(s.scene.cloud.size()),
                double(cfg.population_size()), secs)};
}

}  // namespace

int main()
{
    const Scene scene500(garden_scene(500), kDefaultSeed);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"encoding fidelity", encoding_fidelity},
        {"dunn oracle equivalence", dunn_oracle},
        {"knn oracle equivalence", knn_oracle},
        {"elite monotonicity", [&] { return elite_monotonicity(scene500); }},
        {"evolution beats random search", [&] { return beats_random(scene500); }},
        {"penalty limits", penalty_limits},
        {"baseline sanity", baseline_sanity},
        {"determinism across worker counts", determinism},
        {"end-to-end throughput", throughput},
    };

    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
