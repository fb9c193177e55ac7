#pragma once

// Airborne laser scanning point records: parsing, feature selection and
// synthetic scene generation.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "alsga/encoding.hpp"

namespace alsga {

/// One echo of a laser pulse.
struct PointRecord
{
    double x = 0.0;    ///< easting [m]
    double y = 0.0;    ///< northing [m]
    double z = 0.0;    ///< elevation [m]
    double t = 0.0;    ///< timestamp [s]
    double amp = 0.0;  ///< echo amplitude
    double ew = 0.0;   ///< echo width [ns]
    int eid = 1;       ///< echo index within the pulse, 1-based
    int ne = 1;        ///< number of echoes in the pulse

    bool operator==(const PointRecord&) const = default;
};

struct PointCloud
{
    std::vector<PointRecord> points;
    std::string source;

    std::size_t size() const noexcept { return points.size(); }
    bool empty() const noexcept { return points.empty(); }
    bool operator==(const PointCloud&) const = default;
};

/// Malformed or invalid input; line() is 1-based, 0 when not line-specific.
class ParseError : public std::runtime_error
{
  public:
    ParseError(std::size_t line, const std::string& what);
    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

class EmptyInputError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Column names in file order.
inline constexpr std::string_view kColumnNames[] = {"x", "y", "z", "t", "amp", "ew", "eid", "ne"};

/// Default clustering attributes; planar coordinates and time are excluded.
std::vector<std::string> default_feature_names();

/// Parse delimiter-separated point records (comma or whitespace), with an
/// optional header line. Blank lines and lines starting with '#' are skipped.
/// A header that names all eight columns may reorder them.
PointCloud parse_point_records(std::istream& input, std::string source = "");

PointCloud load_point_cloud(const std::filesystem::path& path);

/// Writes a header line and one record per line using round-trip precision.
void write_point_records(std::ostream& output, const PointCloud& cloud);

double attribute_value(const PointRecord& record, std::string_view name);

struct Standardization
{
    std::vector<double> mean;
    std::vector<double> stddev;  ///< sample standard deviation (N - 1)
};

/// Row-major feature vectors, one row per point in cloud order.
class FeatureMatrix
{
  public:
    FeatureMatrix() = default;
    FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> data,
                  std::vector<std::string> names, Standardization standardization = {});

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::span<const double> row(std::size_t i) const noexcept
    {
        return {data_.data() + i * cols_, cols_};
    }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
    std::span<const double> data() const noexcept { return data_; }
    const std::vector<std::string>& feature_names() const noexcept { return names_; }
    const Standardization& standardization() const noexcept { return standardization_; }
    bool standardized() const noexcept { return !standardization_.mean.empty(); }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
    std::vector<std::string> names_;
    Standardization standardization_;
};

/// Build a feature matrix from the named attributes. When standardizing,
/// constant columns are dropped and a message is appended to *warnings.
/// Throws std::invalid_argument for unknown names, an empty name list, an
/// empty cloud, or when every column had to be dropped.
FeatureMatrix select_features(const PointCloud& cloud, std::span<const std::string> names,
                              bool standardize, std::vector<std::string>* warnings = nullptr);

/// Construct a matrix directly from row vectors (used for ad-hoc data).
FeatureMatrix feature_matrix_from_rows(const std::vector<std::vector<double>>& rows);

// ---------------------------------------------------------------------------
// Synthetic scenes

struct Gaussian
{
    double mean = 0.0;
    double stddev = 0.0;
};

/// One ground-cover region: a planar rectangle plus attribute distributions.
struct SceneRegion
{
    std::string name;
    double x_min = 0.0, x_max = 1.0;
    double y_min = 0.0, y_max = 1.0;
    std::size_t count = 0;
    Gaussian z, amp, ew;
    /// P(ne = i + 1). Must be non-empty with positive total.
    std::vector<double> ne_weights{1.0};
    /// P(eid = i + 1), truncated to eid <= ne before sampling.
    std::vector<double> eid_weights{1.0};
};

struct SceneSpec
{
    std::vector<SceneRegion> regions;
};

class SceneSpecError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

struct SyntheticScene
{
    PointCloud cloud;
    Labeling truth;  ///< region index + 1 per point
};

/// Throws SceneSpecError for overlapping rectangles, empty regions or bad
/// distribution parameters.
void validate_scene(const SceneSpec& spec);

/// Points are emitted region by region; deterministic for a given seed.
SyntheticScene generate_synthetic_scene(const SceneSpec& spec, std::uint64_t seed);

/// Two adjacent rectangles with distinct signal characteristics.
SceneSpec two_patch_scene(std::size_t points_per_patch);

/// Two spatially separate regions whose feature means are `separation`
/// standard deviations apart in every feature.
SceneSpec separated_blobs_scene(std::size_t points_per_blob, double separation = 10.0);

/// Five ground-cover types (water, lawn, trees, building, gravel) on a 3x2
/// layout, roughly `total_points` points.
SceneSpec garden_scene(std::size_t total_points);

/// Lookup by name: "two_patch", "blobs", "garden". Throws SceneSpecError.
SceneSpec builtin_scene(std::string_view name, std::size_t total_points);

}  // namespace alsga
