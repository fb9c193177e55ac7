#pragma once

// Application configuration: a flat `key = value` file with [section]
// headers. Every setting has a dotted name (`run.k`, `fitness.lambda`, ...)
// shared by the file, `--set key=value` and the dedicated command-line flags.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "alsga/als_data.hpp"
#include "alsga/baseline.hpp"
#include "alsga/engine.hpp"

namespace alsga {

/// Invalid or unknown setting; key() is the dotted name.
class ConfigError : public std::runtime_error
{
  public:
    ConfigError(std::string key, const std::string& message);
    const std::string& key() const noexcept { return key_; }

  private:
    std::string key_;
};

struct ConfigEntry
{
    std::string section;  ///< e.g. "run" or "scene.lawn"
    std::string key;
    std::string value;
    std::size_t line = 0;

    std::string dotted() const { return section.empty() ? key : section + "." + key; }
};

/// Parsed config file, entries in file order. '#' and ';' start comments.
std::vector<ConfigEntry> parse_config(std::istream& input);
std::vector<ConfigEntry> load_config(const std::filesystem::path& path);

struct InputSettings
{
    std::optional<std::filesystem::path> file;
    std::string scene = "garden";
    std::size_t scene_points = 500;
    std::optional<std::uint64_t> scene_seed;  ///< defaults to run.seed
    /// Regions from [scene.<name>] sections; replaces the named scene.
    std::vector<SceneRegion> custom_regions;
    std::vector<std::string> features = default_feature_names();
    bool standardize = true;
};

struct BaselineSettings
{
    ClusterId k = 10;
    KMeansOptions kmeans;
    std::size_t smooth_k = 8;
    std::size_t smooth_repeats = 1;
};

struct SuiteSettings
{
    double scale = 1.0;
    std::size_t repetitions = 5;
    std::vector<int> experiments{1, 2, 3, 4, 5, 6, 7, 8};
};

struct AppConfig
{
    InputSettings input;
    RunConfig run;
    /// Table row supplying operator counts for `cluster`; 0 keeps the
    /// explicit operators.* counts.
    int experiment = 0;
    double run_scale = 1.0;
    BaselineSettings baseline;
    SuiteSettings suite;
    std::filesystem::path out_dir = "out";
};

/// Apply one dotted setting. Throws ConfigError for unknown keys and
/// malformed values.
void apply_setting(AppConfig& config, const std::string& key, const std::string& value);

/// Apply every entry of a parsed file, including scene region sections.
void apply_config(AppConfig& config, const std::vector<ConfigEntry>& entries);

/// Cross-field checks; throws ConfigError naming the offending key.
void validate_config(const AppConfig& config);

/// All recognized dotted keys (scene region keys excluded).
std::vector<std::string> known_settings();

}  // namespace alsga
