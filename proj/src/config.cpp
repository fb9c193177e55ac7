#include "alsga/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <sstream>

namespace alsga {

namespace {

std::string trim(std::string s)
{
    const char* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

template <typename T>
T parse_integer(const std::string& key, const std::string& value)
{
    const std::string v = trim(value);
    T out{};
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) {
        throw ConfigError(key, "expected an integer, got '" + value + "'");
    }
    return out;
}

std::size_t parse_count(const std::string& key, const std::string& value)
{
    const std::string v = trim(value);
    if (!v.empty() && v.front() == '-') {
        throw ConfigError(key, "expected a non-negative integer, got '" + value + "'");
    }
    return parse_integer<std::size_t>(key, v);
}

double parse_real(const std::string& key, const std::string& value)
{
    const std::string v = trim(value);
    double out = 0.0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out)) {
        throw ConfigError(key, "expected a finite number, got '" + value + "'");
    }
    return out;
}

bool parse_flag(const std::string& key, const std::string& value)
{
    const std::string v = trim(value);
    if (v == "true" || v == "1" || v == "yes" || v == "on") {
        return true;
    }
    if (v == "false" || v == "0" || v == "no" || v == "off") {
        return false;
    }
    throw ConfigError(key, "expected true or false, got '" + value + "'");
}

std::vector<std::string> parse_list(const std::string& value)
{
    std::vector<std::string> items;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
            items.push_back(item);
        }
    }
    return items;
}

std::vector<double> parse_reals(const std::string& key, const std::string& value)
{
    std::vector<double> out;
    for (const auto& item : parse_list(value)) {
        out.push_back(parse_real(key, item));
    }
    if (out.empty()) {
        throw ConfigError(key, "expected a comma-separated list of numbers");
    }
    return out;
}

using Setter = std::function<void(AppConfig&, const std::string& key, const std::string& value)>;

const std::map<std::string, Setter>& setting_table()
{
    static const std::map<std::string, Setter> table = {
        {"data.input", [](AppConfig& c, const std::string&, const std::string& v) {
             const std::string p = trim(v);
             c.input.file = p.empty() ? std::nullopt : std::optional<std::filesystem::path>(p);
         }},
        {"data.scene", [](AppConfig& c, const std::string&, const std::string& v) {
             c.input.scene = trim(v);
         }},
        {"data.points", [](AppConfig& c, const std::string& k, const std::string& v) {
             c.input.scene_points = parse_count(k, v);
         }},
        {"data.scene_seed", [](AppConfig& c, const std::string& k, const std::string& v) {
             c.input.scene_seed = parse_integer<std::uint64_t>(k, v);
         }},
        {"data.features", [](AppConfig& c, const std::string& k, const std::string& v) {
             auto names = parse_list(v);
             if (names.empty()) {
                 throw ConfigError(k, "feature list is empty");
             }
             c.input.features = std::move(names);
         }},
        {"data.standardize", [](AppConfig& c, const std::string& k, const std::string& v) {
             c.input.standardize = parse_flag(k, v);
         }},

        {"run.k", [](AppConfig& c, const std::string& k, const std::string& v) {
             c.run.k = parse_integer<ClusterId>(k, v);
         }},
        {"run.iterations", [](AppConfig& c, const std::string& k, const std::string& v) {
             c.run.iterations = parse_count(k, v);
         }},
        {"run.seed", [](AppConfig& c, const std::string& k, const std::string& v) {
             c.run.seed = parse_integer<std::uint64_t>(k, v);
         }},
        {"run.workers", [](AppConfig& c, const std::string& k, const std::string& v) {
             c.run.workers = parse_count(k, v);
         }},
        {"run.experiment", [](AppConfig& c, const std::string& k, const std::string& v) {
             c.experiment = parse_integer<int>(k, v);
         }},
        {"run.scale", [](AppConfig& c, const std::string& k, const std::string& v) {
             c.run_scale = parse_real(k, v);
         }},

        {"operators.elite", [](AppConfig& c, const std::string& k, const std::string& v) {
             c.run.operators.elite = parse_count(k, v);
         }},
        {"operators.crossover", [](AppConfig& c, const std::string& k, const std::string& v) {
             c.run.operators.crossover = parse_count(k, v);
         }},
        {"operators.flip", [](AppConfig& c, const std::string& k, const std::string& v) {
             c.run.operators.flip = parse_count(k, v);
         }},
        {"operators.bisection", [](AppConfig& c, const std::string& k, const std::string& v) {
             c.run.operators.bisection = parse_count(k, v);
         }},
        {"operators.random", [](AppConfig& c, const std::string& k, const std::string& v) {
             c.run.operators.random = parse_count(k, v);
         }},
        {"operators.alpha", [](AppConfig& c, const std::string& k, const std::string& v) {
             c.run.operators.alpha = parse_real(k, v);
         }},
        {"operators.beta1", [](AppConfig& c, const std::string& k, const std::string& v) {
             c.run.operators.beta1 = parse_real(k, v);
         }},
        {"operators.beta2", [](AppConfig& c, const std::string& k, const std::string& v) {
             c.run.operators.beta2 = parse_real(k, v);
         }},
        {"operators.beta3", [](AppConfig& c, const std::string& k, const std::string& v) {
             c.run.operators.beta3 = parse_real(k, v);
         }},
        {"operators.gamma1", [](AppConfig& c, const std::string& k, const std::string& v) {
             c.run.operators.gamma1 = parse_real(k, v);
         }},
        {"operators.gamma2", [](AppConfig& c, const std::string& k, const std::string& v) {
             c.run.operators.gamma2 = parse_real(k, v);
         }},

        {"fitness.lambda", [](AppConfig& c, const std::string& k, const std::string& v) {
             c.run.fitness.lambda = parse_real(k, v);
         }},
        {"fitness.neighbor_k", [](AppConfig& c, const std::string& k, const std::string& v) {
             c.run.fitness.neighbor_k = parse_count(k, v);
         }},
        {"fitness.rule", [](AppConfig& c, const std::string& k, const std::string& v) {
             c.run.fitness.inhomogeneity_rule = parse_real(k, v);
         }},
        {"fitness.penalty", [](AppConfig& c, const std::string& k, const std::string& v) {
             const std::string mode = trim(v);
             if (mode == "per_point") {
                 c.run.fitness.penalty_scale = PenaltyScale::per_point;
             } else if (mode == "raw") {
                 c.run.fitness.penalty_scale = PenaltyScale::raw;
             } else {
                 throw ConfigError(k, "expected per_point or raw, got '" + v + "'");
             }
         }},
        {"fitness.dunn_cap", [](AppConfig& c, const std::string& k, const std::string& v) {
             c.run.fitness.dunn_cap = parse_real(k, v);
         }},
        {"fitness.worst", [](AppConfig& c, const std::string& k, const std::string& v) {
             c.run.fitness.worst_fitness = parse_real(k, v);
         }},

        {"baseline.k", [](AppConfig& c, const std::string& k, const std::string& v) {
             c.baseline.k = parse_integer<ClusterId>(k, v);
         }},
        {"baseline.max_iter", [](AppConfig& c, const std::string& k, const std::string& v) {
             c.baseline.kmeans.max_iter = parse_count(k, v);
         }},
        {"baseline.tol", [](AppConfig& c, const std::string& k, const std::string& v) {
             c.baseline.kmeans.tol = parse_real(k, v);
         }},
        {"baseline.smooth_k", [](AppConfig& c, const std::string& k, const std::string& v) {
             c.baseline.smooth_k = parse_count(k, v);
         }},
        {"baseline.smooth_repeats", [](AppConfig& c, const std::string& k, const std::string& v) {
             c.baseline.smooth_repeats = parse_count(k, v);
         }},

        {"suite.scale", [](AppConfig& c, const std::string& k, const std::string& v) {
             c.suite.scale = parse_real(k, v);
         }},
        {"suite.repetitions", [](AppConfig& c, const std::string& k, const std::string& v) {
             c.suite.repetitions = parse_count(k, v);
         }},
        {"suite.experiments", [](AppConfig& c, const std::string& k, const std::string& v) {
             std::vector<int> ids;
             for (const auto& item : parse_list(v)) {
                 ids.push_back(parse_integer<int>(k, item));
             }
             if (ids.empty()) {
                 throw ConfigError(k, "experiment list is empty");
             }
             c.suite.experiments = std::move(ids);
         }},

        {"output.dir", [](AppConfig& c, const std::string& k, const std::string& v) {
             const std::string p = trim(v);
             if (p.empty()) {
                 throw ConfigError(k, "output directory must not be empty");
             }
             c.out_dir = p;
         }},
    };
    return table;
}

void apply_region_setting(SceneRegion& r, const std::string& dotted, const std::string& key,
                          const std::string& value)
{
    if (key == "x_min") r.x_min = parse_real(dotted, value);
    else if (key == "x_max") r.x_max = parse_real(dotted, value);
    else if (key == "y_min") r.y_min = parse_real(dotted, value);
    else if (key == "y_max") r.y_max = parse_real(dotted, value);
    else if (key == "count") r.count = parse_count(dotted, value);
    else if (key == "z_mean") r.z.mean = parse_real(dotted, value);
    else if (key == "z_std") r.z.stddev = parse_real(dotted, value);
    else if (key == "amp_mean") r.amp.mean = parse_real(dotted, value);
    else if (key == "amp_std") r.amp.stddev = parse_real(dotted, value);
    else if (key == "ew_mean") r.ew.mean = parse_real(dotted, value);
    else if (key == "ew_std") r.ew.stddev = parse_real(dotted, value);
    else if (key == "ne_weights") r.ne_weights = parse_reals(dotted, value);
    else if (key == "eid_weights") r.eid_weights = parse_reals(dotted, value);
    else throw ConfigError(dotted, "unknown scene region setting");
}

}  // namespace

ConfigError::ConfigError(std::string key, const std::string& message)
    : std::runtime_error(key + ": " + message), key_(std::move(key))
{
}

std::vector<ConfigEntry> parse_config(std::istream& input)
{
    std::vector<ConfigEntry> entries;
    std::string section;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(input, line)) {
        ++line_no;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) {
            line.erase(comment);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("line " + std::to_string(line_no), "unterminated section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no), "expected key = value");
        }
        ConfigEntry e;
        e.section = section;
        e.key = trim(line.substr(0, eq));
        e.value = trim(line.substr(eq + 1));
        e.line = line_no;
        if (e.key.empty()) {
            throw ConfigError("line " + std::to_string(line_no), "empty key");
        }
        entries.push_back(std::move(e));
    }
    return entries;
}

std::vector<ConfigEntry> load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open config file: " + path.string());
    }
    return parse_config(in);
}

void apply_setting(AppConfig& config, const std::string& key, const std::string& value)
{
    const auto& table = setting_table();
    const auto it = table.find(key);
    if (it == table.end()) {
        throw ConfigError(key, "unknown setting");
    }
    it->second(config, key, value);
}

void apply_config(AppConfig& config, const std::vector<ConfigEntry>& entries)
{
    std::vector<std::string> region_order;
    std::map<std::string, SceneRegion> regions;
    for (const ConfigEntry& e : entries) {
        if (e.section.rfind("scene.", 0) == 0) {
            const std::string name = e.section.substr(6);
            if (!regions.count(name)) {
                region_order.push_back(name);
                regions[name].name = name;
            }
            apply_region_setting(regions[name], e.dotted(), e.key, e.value);
            continue;
        }
        apply_setting(config, e.dotted(), e.value);
    }
    if (!region_order.empty()) {
        config.input.custom_regions.clear();
        for (const auto& name : region_order) {
            config.input.custom_regions.push_back(regions[name]);
        }
    }
}

void validate_config(const AppConfig& c)
{
    auto wrap = [](const std::string& fallback_key, auto&& check) {
        try {
            check();
        } catch (const ConfigError&) {
            throw;
        } catch (const std::invalid_argument& e) {
            // Messages from module validators start with the dotted key.
            const std::string msg = e.what();
            const auto space = msg.find(' ');
            const std::string key = space != std::string::npos && msg.find('.') < space
                                        ? msg.substr(0, space)
                                        : fallback_key;
            throw ConfigError(key, msg);
        }
    };
    if (c.run.k < 2) {
        throw ConfigError("run.k", "must be at least 2");
    }
    if (c.run.iterations < 1) {
        throw ConfigError("run.iterations", "must be at least 1");
    }
    if (c.run.workers < 1) {
        throw ConfigError("run.workers", "must be at least 1");
    }
    if (c.experiment < 0 || c.experiment > 8) {
        throw ConfigError("run.experiment", "must be 0 (explicit counts) or 1..8");
    }
    if (!(c.run_scale > 0.0 && c.run_scale <= 1.0)) {
        throw ConfigError("run.scale", "must lie in (0, 1]");
    }
    wrap("operators", [&] { c.run.operators.validate(); });
    wrap("fitness", [&] { c.run.fitness.validate(); });
    if (c.input.scene_points < 2 && !c.input.file) {
        throw ConfigError("data.points", "must be at least 2");
    }
    for (const auto& name : c.input.features) {
        bool known = false;
        for (auto col : kColumnNames) {
            known = known || col == name;
        }
        if (!known) {
            throw ConfigError("data.features", "unknown attribute '" + name + "'");
        }
    }
    if (c.baseline.k < 1) {
        throw ConfigError("baseline.k", "must be at least 1");
    }
    if (c.baseline.kmeans.max_iter < 1) {
        throw ConfigError("baseline.max_iter", "must be at least 1");
    }
    if (!(c.baseline.kmeans.tol >= 0.0)) {
        throw ConfigError("baseline.tol", "must be >= 0");
    }
    if (c.baseline.smooth_k < 1) {
        throw ConfigError("baseline.smooth_k", "must be at least 1");
    }
    if (!(c.suite.scale > 0.0 && c.suite.scale <= 1.0)) {
        throw ConfigError("suite.scale", "must lie in (0, 1]");
    }
    if (c.suite.repetitions < 1) {
        throw ConfigError("suite.repetitions", "must be at least 1");
    }
    for (int id : c.suite.experiments) {
        if (id < 1 || id > 8) {
            throw ConfigError("suite.experiments", "ids must lie in 1..8");
        }
    }
    if (!c.input.custom_regions.empty()) {
        try {
            validate_scene(SceneSpec{c.input.custom_regions});
        } catch (const SceneSpecError& e) {
            throw ConfigError("scene", e.what());
        }
    }
}

std::vector<std::string> known_settings()
{
    std::vector<std::string> keys;
    for (const auto& [key, setter] : setting_table()) {
        keys.push_back(key);
    }
    return keys;
}

}  // namespace alsga
