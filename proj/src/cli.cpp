#include "alsga/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <ostream>
#include <thread>
#include <utility>

#include <CLI11.hpp>

#include "alsga/als_data.hpp"
#include "alsga/baseline.hpp"
#include "alsga/config.hpp"
#include "alsga/engine.hpp"
#include "alsga/experiment.hpp"
#include "alsga/fitness.hpp"
#include "alsga/report.hpp"
#include "alsga/spatial_index.hpp"

namespace alsga {

namespace fs = std::filesystem;

namespace {

using Overrides = std::vector<std::pair<std::string, std::string>>;

struct Dataset
{
    PointCloud cloud;
    std::optional<Labeling> truth;
};

struct Prepared
{
    Dataset data;
    FeatureMatrix features;
    PlanarIndex index;
};

std::uint64_t scene_seed(const AppConfig& c)
{
    return c.input.scene_seed.value_or(c.run.seed);
}

Dataset load_dataset(const AppConfig& c)
{
    if (c.input.file) {
        if (!fs::exists(*c.input.file)) {
            throw std::runtime_error("input file not found: " + c.input.file->string());
        }
        return {load_point_cloud(*c.input.file), std::nullopt};
    }
    SceneSpec spec = c.input.custom_regions.empty()
                         ? builtin_scene(c.input.scene, c.input.scene_points)
                         : SceneSpec{c.input.custom_regions};
    auto scene = generate_synthetic_scene(spec, scene_seed(c));
    return {std::move(scene.cloud), std::move(scene.truth)};
}

Prepared prepare(const AppConfig& c, std::ostream& err)
{
    Dataset data = load_dataset(c);
    std::vector<std::string> warnings;
    FeatureMatrix features = select_features(data.cloud, c.input.features, c.input.standardize,
                                             &warnings);
    for (const auto& w : warnings) {
        err << "warning: " << w << '\n';
    }
    PlanarIndex index = build_planar_index(data.cloud);
    return {std::move(data), std::move(features), std::move(index)};
}

RunConfig cluster_run_config(const AppConfig& c)
{
    RunConfig run = c.run;
    OperatorCounts counts{run.operators.elite, run.operators.crossover, run.operators.flip,
                          run.operators.bisection, run.operators.random};
    if (c.experiment > 0) {
        counts = builtin_experiments().at(static_cast<std::size_t>(c.experiment - 1)).counts;
    }
    run.operators = with_counts(run.operators, scale_counts(counts, c.run_scale));
    run.operators.validate();
    return run;
}

int cmd_cluster(const AppConfig& c, std::ostream& out, std::ostream& err)
{
    const Prepared p = prepare(c, err);
    const RunConfig run = cluster_run_config(c);
    const FitnessEvaluator evaluator(p.features, p.index, run.fitness);
    const RunResult result = evolve(run, evaluator);

    emit_convergence_report(result, c.out_dir, "GA run (seed " + std::to_string(run.seed) + ")",
                            run.fitness.worst_fitness);
    out << "points " << p.data.cloud.size() << '\n'
        << "population " << run.population_size() << '\n'
        << "iterations " << run.iterations << '\n'
        << "final_best_fitness " << format_number(result.best_fitness.combined) << '\n'
        << "final_best_dunn " << format_number(result.best_fitness.dunn) << '\n'
        << "final_best_penalty_count " << result.best_fitness.penalty_count << '\n';
    if (p.data.truth) {
        out << "adjusted_rand_vs_truth "
            << format_number(adjusted_rand_index(result.best_labeling, *p.data.truth)) << '\n';
    }
    out << "report " << c.out_dir.string() << '\n';
    return 0;
}

int cmd_baseline(const AppConfig& c, std::ostream& out, std::ostream& err)
{
    const Prepared p = prepare(c, err);
    if (c.baseline.k > p.features.rows()) {
        throw ConfigError("baseline.k", "exceeds the number of points");
    }
    const KMeansResult km = kmeans(p.features, c.baseline.k, c.run.seed, c.baseline.kmeans);
    const Labeling smoothed =
        knn_majority_smooth(p.index, km.labeling, c.baseline.smooth_k, c.baseline.smooth_repeats);
    const FitnessEvaluator evaluator(p.features, p.index, c.run.fitness);
    const FitnessValue before = evaluator.evaluate(km.labeling);
    const FitnessValue after = evaluator.evaluate(smoothed);

    write_labels_csv(c.out_dir / "kmeans_labels.csv", km.labeling);
    write_labels_csv(c.out_dir / "best_labels.csv", smoothed);
    std::ofstream summary(c.out_dir / "summary.txt");
    if (!summary) {
        throw std::runtime_error("cannot write " + (c.out_dir / "summary.txt").string());
    }
    for (std::ostream* s : {static_cast<std::ostream*>(&summary), &out}) {
        *s << "points " << p.data.cloud.size() << '\n'
           << "kmeans_k " << c.baseline.k << '\n'
           << "kmeans_iterations " << km.iterations_used << '\n'
           << "kmeans_inertia " << format_number(km.inertia) << '\n'
           << "kmeans_fitness " << format_number(before.combined) << '\n'
           << "kmeans_dunn " << format_number(before.dunn) << '\n'
           << "kmeans_penalty_count " << before.penalty_count << '\n'
           << "smoothed_fitness " << format_number(after.combined) << '\n'
           << "smoothed_dunn " << format_number(after.dunn) << '\n'
           << "smoothed_penalty_count " << after.penalty_count << '\n';
        if (p.data.truth) {
            *s << "kmeans_adjusted_rand_vs_truth "
               << format_number(adjusted_rand_index(km.labeling, *p.data.truth)) << '\n'
               << "smoothed_adjusted_rand_vs_truth "
               << format_number(adjusted_rand_index(smoothed, *p.data.truth)) << '\n';
        }
    }
    return 0;
}

int cmd_suite(const AppConfig& c, std::ostream& out, std::ostream& err)
{
    const Prepared p = prepare(c, err);
    std::vector<ExperimentSpec> specs;
    const auto table = builtin_experiments();
    for (int id : c.suite.experiments) {
        ExperimentSpec spec = table.at(static_cast<std::size_t>(id - 1));
        spec.repetitions = c.suite.repetitions;
        spec.base.k = c.run.k;
        spec.base.iterations = c.run.iterations;
        OperatorConfig params = c.run.operators;
        spec.base.operators = with_counts(params, spec.counts);
        specs.push_back(std::move(spec));
    }
    const FitnessEvaluator evaluator(p.features, p.index, c.run.fitness);
    SuiteOptions options;
    options.scale = c.suite.scale;
    options.master_seed = c.run.seed;
    options.workers = c.run.workers;
    const ExperimentReport report = run_suite(specs, evaluator, options);
    emit_convergence_report(report, c.out_dir, c.run.fitness.worst_fitness);

    std::size_t runs = 0;
    for (const auto& e : report.experiments) {
        runs += e.runs.size();
        out << "experiment " << e.spec.id << " (" << e.spec.label << ") mean_final_best "
            << format_number(e.mean_final_best()) << '\n';
    }
    out << "runs " << runs << '\n' << "report " << c.out_dir.string() << '\n';
    return 0;
}

int cmd_synth(const AppConfig& c, std::ostream& out)
{
    SceneSpec spec = c.input.custom_regions.empty()
                         ? builtin_scene(c.input.scene, c.input.scene_points)
                         : SceneSpec{c.input.custom_regions};
    const auto scene = generate_synthetic_scene(spec, scene_seed(c));
    fs::create_directories(c.out_dir);
    std::ofstream file(c.out_dir / "scene.csv", std::ios::binary);
    if (!file) {
        throw std::runtime_error("cannot write " + (c.out_dir / "scene.csv").string());
    }
    write_point_records(file, scene.cloud);
    write_labels_csv(c.out_dir / "truth_labels.csv", scene.truth);
    out << "points " << scene.cloud.size() << '\n'
        << "regions " << spec.regions.size() << '\n'
        << "scene " << (c.out_dir / "scene.csv").string() << '\n';
    return 0;
}

int cmd_validate(const AppConfig& c, std::ostream& out)
{
    if (!c.input.file) {
        throw ConfigError("data.input", "validate needs --input");
    }
    if (!fs::exists(*c.input.file)) {
        throw std::runtime_error("input file not found: " + c.input.file->string());
    }
    const PointCloud cloud = load_point_cloud(*c.input.file);
    out << "source " << cloud.source << '\n'
        << "points " << cloud.size() << '\n'
        << "columns " << std::size(kColumnNames) << '\n';
    for (auto name : kColumnNames) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        double sum = 0.0;
        for (const auto& rec : cloud.points) {
            const double v = attribute_value(rec, name);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            sum += v;
        }
        out << "range " << name << ' ' << format_number(lo) << ' ' << format_number(hi)
            << " mean " << format_number(sum / double(cloud.size())) << '\n';
    }
    return 0;
}

void add_common(CLI::App* sub, Overrides& ov, std::string& config_path)
{
    auto bind = [&](const std::string& flag, const std::string& key, const std::string& help) {
        sub->add_option_function<std::string>(
            flag, [&ov, key](const std::string& v) { ov.emplace_back(key, v); }, help);
    };
    sub->add_option("--config", config_path, "Configuration file (key = value with [sections])");
    bind("--input,-i", "data.input", "ALS point file (x y z t amp ew eid ne)");
    bind("--scene", "data.scene", "Built-in synthetic scene: two_patch, blobs, garden");
    bind("--points", "data.points", "Point count of the synthetic scene");
    bind("--scene-seed", "data.scene_seed", "Seed of the synthetic scene (default: --seed)");
    bind("--features", "data.features", "Comma-separated clustering attributes");
    bind("--standardize", "data.standardize", "Standardize features (true/false)");
    bind("--seed", "run.seed", "Master seed");
    bind("--workers", "run.workers", "Worker threads (results do not depend on it)");
    bind("--out,-o", "output.dir", "Output directory");
    sub->add_option_function<std::vector<std::string>>(
        "--set",
        [&ov](const std::vector<std::string>& items) {
            for (const auto& item : items) {
                const auto eq = item.find('=');
                if (eq == std::string::npos) {
                    throw CLI::ValidationError("--set", "expected key=value, got '" + item + "'");
                }
                ov.emplace_back(item.substr(0, eq), item.substr(eq + 1));
            }
        },
        "Override any setting, e.g. --set fitness.lambda=0.5");
    sub->add_flag("--deterministic", "Accepted for compatibility; output is always deterministic");
}

void add_ga(CLI::App* sub, Overrides& ov)
{
    auto bind = [&](const std::string& flag, const std::string& key, const std::string& help) {
        sub->add_option_function<std::string>(
            flag, [&ov, key](const std::string& v) { ov.emplace_back(key, v); }, help);
    };
    bind("--k", "run.k", "Cluster count");
    bind("--iterations", "run.iterations", "Generations per run");
    bind("--lambda", "fitness.lambda", "Penalty weight");
    bind("--neighbor-k", "fitness.neighbor_k", "Neighbors per point for the penalty");
    bind("--rule", "fitness.rule", "Disagreeing-neighbor fraction marking a point inhomogeneous");
    bind("--penalty", "fitness.penalty", "Penalty scaling: per_point or raw");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Genetic-algorithm clustering of airborne laser scanning point clouds", "alsga"};
    app.require_subcommand(1);

    Overrides ov;
    std::string config_path;

    auto* cluster = app.add_subcommand("cluster", "Single GA run");
    add_common(cluster, ov, config_path);
    add_ga(cluster, ov);
    cluster->add_option_function<std::string>(
        "--experiment", [&ov](const std::string& v) { ov.emplace_back("run.experiment", v); },
        "Take operator counts from experiment 1..8");
    cluster->add_option_function<std::string>(
        "--scale", [&ov](const std::string& v) { ov.emplace_back("run.scale", v); },
        "Scale factor for the operator counts");
    cluster->add_option_function<std::vector<std::string>>(
        "--counts",
        [&ov](const std::vector<std::string>& v) {
            const char* keys[] = {"operators.elite", "operators.crossover", "operators.flip",
                                  "operators.bisection", "operators.random"};
            for (std::size_t i = 0; i < 5; ++i) {
                ov.emplace_back(keys[i], v[i]);
            }
        },
        "Elite,crossover,flip,bisection,random counts")
        ->expected(5)
        ->delimiter(',');

    auto* baseline = app.add_subcommand("baseline", "k-means followed by kNN majority smoothing");
    add_common(baseline, ov, config_path);
    {
        auto bind = [&](const std::string& flag, const std::string& key, const std::string& help) {
            baseline->add_option_function<std::string>(
                flag, [&ov, key](const std::string& v) { ov.emplace_back(key, v); }, help);
        };
        bind("--k", "baseline.k", "Cluster count");
        bind("--max-iter", "baseline.max_iter", "Lloyd iteration limit");
        bind("--tol", "baseline.tol", "Center movement tolerance");
        bind("--smooth-k", "baseline.smooth_k", "Neighbors per majority vote");
        bind("--smooth-repeats", "baseline.smooth_repeats", "Smoothing passes");
        bind("--neighbor-k", "fitness.neighbor_k", "Neighbors per point for the penalty");
        bind("--lambda", "fitness.lambda", "Penalty weight");
    }

    auto* suite = app.add_subcommand("suite", "Run the eight operator-setting experiments");
    add_common(suite, ov, config_path);
    add_ga(suite, ov);
    suite->add_option_function<std::string>(
        "--scale", [&ov](const std::string& v) { ov.emplace_back("suite.scale", v); },
        "Population scale factor in (0, 1]");
    suite->add_option_function<std::string>(
        "--repetitions", [&ov](const std::string& v) { ov.emplace_back("suite.repetitions", v); },
        "Runs per experiment");
    suite->add_option_function<std::string>(
        "--experiments", [&ov](const std::string& v) { ov.emplace_back("suite.experiments", v); },
        "Comma-separated experiment ids");

    auto* synth = app.add_subcommand("synth", "Write a synthetic scene and its ground truth");
    add_common(synth, ov, config_path);

    auto* validate = app.add_subcommand("validate", "Parse a point file and report statistics");
    add_common(validate, ov, config_path);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) {
        reversed.pop_back();  // program name
    }
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    AppConfig config;
    config.run.workers = std::max(1u, std::thread::hardware_concurrency());
    try {
        if (!config_path.empty()) {
            apply_config(config, load_config(config_path));
        }
        if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env != '\0') {
            config.out_dir = env;
        }
        for (const auto& [key, value] : ov) {
            apply_setting(config, key, value);
        }
        validate_config(config);

        if (cluster->parsed()) {
            return cmd_cluster(config, out, err);
        }
        if (baseline->parsed()) {
            return cmd_baseline(config, out, err);
        }
        if (suite->parsed()) {
            return cmd_suite(config, out, err);
        }
        if (synth->parsed()) {
            return cmd_synth(config, out);
        }
        return cmd_validate(config, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace alsga
