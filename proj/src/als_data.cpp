#include "alsga/als_data.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>

namespace alsga {

namespace {

std::string_view trim(std::string_view s)
{
    const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && is_space(s.front())) {
        s.remove_prefix(1);
    }
    while (!s.empty() && is_space(s.back())) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> fields;
    if (line.find(',') != std::string_view::npos) {
        std::size_t start = 0;
        while (true) {
            std::size_t comma = line.find(',', start);
            fields.push_back(trim(line.substr(start, comma - start)));
            if (comma == std::string_view::npos) {
                break;
            }
            start = comma + 1;
        }
        return fields;
    }
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
            ++i;
        }
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') {
            ++i;
        }
        if (i > start) {
            fields.push_back(line.substr(start, i - start));
        }
    }
    return fields;
}

std::optional<double> parse_number(std::string_view token)
{
    if (!token.empty() && token.front() == '+') {
        token.remove_prefix(1);
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty() ||
        !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

std::string lowercase(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::optional<std::size_t> column_index(std::string_view name)
{
    const std::string lower = lowercase(name);
    for (std::size_t i = 0; i < std::size(kColumnNames); ++i) {
        if (kColumnNames[i] == lower) {
            return i;
        }
    }
    return std::nullopt;
}

int ordinal_field(double value, std::size_t line, std::string_view column)
{
    if (value != std::floor(value) || value < 1.0 || value > 1e6) {
        throw ParseError(line, std::string(column) + " must be a positive integer");
    }
    return static_cast<int>(value);
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      line_(line)
{
}

std::vector<std::string> default_feature_names()
{
    return {"z", "amp", "ew", "eid", "ne"};
}

PointCloud parse_point_records(std::istream& input, std::string source)
{
    PointCloud cloud;
    cloud.source = std::move(source);

    std::array<std::size_t, 8> order{0, 1, 2, 3, 4, 5, 6, 7};
    std::string line;
    std::size_t line_no = 0;
    bool seen_content = false;

    while (std::getline(input, line)) {
        ++line_no;
        std::string_view view = trim(line);
        if (view.empty() || view.front() == '#') {
            continue;
        }
        auto fields = split_fields(view);
        if (!seen_content) {
            seen_content = true;
            if (!parse_number(fields.front())) {
                // Header. If it names all eight columns, honor its order.
                std::array<std::size_t, 8> named{};
                std::array<bool, 8> hit{};
                bool complete = fields.size() == 8;
                for (std::size_t i = 0; complete && i < fields.size(); ++i) {
                    auto idx = column_index(fields[i]);
                    if (!idx || hit[*idx]) {
                        complete = false;
                        break;
                    }
                    hit[*idx] = true;
                    named[*idx] = i;
                }
                if (complete) {
                    order = named;
                }
                continue;
            }
        }
        if (fields.size() != 8) {
            throw ParseError(line_no, "expected 8 fields, found " + std::to_string(fields.size()));
        }
        std::array<double, 8> values{};
        for (std::size_t c = 0; c < 8; ++c) {
            std::string_view token = fields[order[c]];
            auto value = parse_number(token);
            if (!value) {
                throw ParseError(line_no, "malformed numeric field '" + std::string(token) +
                                              "' in column " + std::string(kColumnNames[c]));
            }
            values[c] = *value;
        }
        PointRecord rec;
        rec.x = values[0];
        rec.y = values[1];
        rec.z = values[2];
        rec.t = values[3];
        rec.amp = values[4];
        rec.ew = values[5];
        rec.eid = ordinal_field(values[6], line_no, "eid");
        rec.ne = ordinal_field(values[7], line_no, "ne");
        if (rec.eid > rec.ne) {
            throw ParseError(line_no, "echo index eid=" + std::to_string(rec.eid) +
                                          " exceeds echo count ne=" + std::to_string(rec.ne));
        }
        cloud.points.push_back(rec);
    }
    if (cloud.points.empty()) {
        throw EmptyInputError("no point records in input" +
                              (cloud.source.empty() ? std::string() : " " + cloud.source));
    }
    return cloud;
}

PointCloud load_point_cloud(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open input file: " + path.string());
    }
    return parse_point_records(in, path.string());
}

void write_point_records(std::ostream& output, const PointCloud& cloud)
{
    output << "x,y,z,t,amp,ew,eid,ne\n";
    char buf[320];
    for (const PointRecord& p : cloud.points) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%d\n", p.x, p.y,
                      p.z, p.t, p.amp, p.ew, p.eid, p.ne);
        output << buf;
    }
}

double attribute_value(const PointRecord& r, std::string_view name)
{
    auto idx = column_index(name);
    if (!idx) {
        throw std::invalid_argument("unknown attribute '" + std::string(name) + "'");
    }
    switch (*idx) {
        case 0: return r.x;
        case 1: return r.y;
        case 2: return r.z;
        case 3: return r.t;
        case 4: return r.amp;
        case 5: return r.ew;
        case 6: return r.eid;
        default: return r.ne;
    }
}

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> data,
                             std::vector<std::string> names, Standardization standardization)
    : rows_(rows),
      cols_(cols),
      data_(std::move(data)),
      names_(std::move(names)),
      standardization_(std::move(standardization))
{
    if (data_.size() != rows_ * cols_) {
        throw std::invalid_argument("FeatureMatrix: data size does not match shape");
    }
    if (!names_.empty() && names_.size() != cols_) {
        throw std::invalid_argument("FeatureMatrix: name count does not match column count");
    }
}

FeatureMatrix select_features(const PointCloud& cloud, std::span<const std::string> names,
                              bool standardize, std::vector<std::string>* warnings)
{
    if (names.empty()) {
        throw std::invalid_argument("select_features: no attributes requested");
    }
    if (cloud.empty()) {
        throw std::invalid_argument("select_features: empty point cloud");
    }
    for (const auto& name : names) {
        if (!column_index(name)) {
            throw std::invalid_argument("unknown attribute '" + name + "'");
        }
    }
    const std::size_t n = cloud.size();

    std::vector<std::vector<double>> columns;
    std::vector<std::string> kept;
    Standardization st;
    for (const auto& name : names) {
        std::vector<double> col(n);
        for (std::size_t i = 0; i < n; ++i) {
            col[i] = attribute_value(cloud.points[i], name);
        }
        if (standardize) {
            const double mean = std::accumulate(col.begin(), col.end(), 0.0) / double(n);
            double ss = 0.0;
            for (double v : col) {
                ss += (v - mean) * (v - mean);
            }
            const double sd = n > 1 ? std::sqrt(ss / double(n - 1)) : 0.0;
            const bool constant = std::all_of(col.begin(), col.end(),
                                              [&](double v) { return v == col.front(); });
            if (constant || !(sd > 0.0)) {
                if (warnings) {
                    warnings->push_back("attribute '" + name +
                                        "' is constant; dropped from standardized features");
                }
                continue;
            }
            for (double& v : col) {
                v = (v - mean) / sd;
            }
            st.mean.push_back(mean);
            st.stddev.push_back(sd);
        }
        columns.push_back(std::move(col));
        kept.push_back(lowercase(name));
    }
    if (columns.empty()) {
        throw std::invalid_argument(
            "select_features: every requested attribute is constant; nothing to cluster on");
    }

    const std::size_t cols = columns.size();
    std::vector<double> data(n * cols);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            data[i * cols + j] = columns[j][i];
        }
    }
    return FeatureMatrix(n, cols, std::move(data), std::move(kept), std::move(st));
}

FeatureMatrix feature_matrix_from_rows(const std::vector<std::vector<double>>& rows)
{
    if (rows.empty()) {
        return {};
    }
    const std::size_t cols = rows.front().size();
    std::vector<double> data;
    data.reserve(rows.size() * cols);
    for (const auto& r : rows) {
        if (r.size() != cols) {
            throw std::invalid_argument("feature_matrix_from_rows: ragged rows");
        }
        data.insert(data.end(), r.begin(), r.end());
    }
    std::vector<std::string> names;
    for (std::size_t j = 0; j < cols; ++j) {
        names.push_back("f" + std::to_string(j));
    }
    return FeatureMatrix(rows.size(), cols, std::move(data), std::move(names));
}

// ---------------------------------------------------------------------------

namespace {

void check_weights(const std::vector<double>& w, const std::string& what)
{
    if (w.empty()) {
        throw SceneSpecError(what + " weights must not be empty");
    }
    double total = 0.0;
    for (double v : w) {
        if (!(v >= 0.0) || !std::isfinite(v)) {
            throw SceneSpecError(what + " weights must be finite and non-negative");
        }
        total += v;
    }
    if (!(total > 0.0)) {
        throw SceneSpecError(what + " weights must have positive total");
    }
}

void check_gaussian(const Gaussian& g, const std::string& what)
{
    if (!std::isfinite(g.mean) || !std::isfinite(g.stddev) || g.stddev < 0.0) {
        throw SceneSpecError(what + " needs a finite mean and non-negative standard deviation");
    }
}

// Draws 1-based category from weights[0 .. limit).
int draw_category(const std::vector<double>& weights, std::size_t limit, Rng& rng)
{
    limit = std::min(limit, weights.size());
    double total = 0.0;
    for (std::size_t i = 0; i < limit; ++i) {
        total += weights[i];
    }
    if (!(total > 0.0)) {
        return 1;
    }
    double u = rng.uniform() * total;
    for (std::size_t i = 0; i < limit; ++i) {
        if (u < weights[i]) {
            return static_cast<int>(i + 1);
        }
        u -= weights[i];
    }
    // Rounding fallthrough: last category with positive weight.
    for (std::size_t i = limit; i-- > 0;) {
        if (weights[i] > 0.0) {
            return static_cast<int>(i + 1);
        }
    }
    return 1;
}

}  // namespace

void validate_scene(const SceneSpec& spec)
{
    if (spec.regions.empty()) {
        throw SceneSpecError("scene has no regions");
    }
    for (std::size_t r = 0; r < spec.regions.size(); ++r) {
        const SceneRegion& reg = spec.regions[r];
        const std::string label =
            "region " + std::to_string(r + 1) + (reg.name.empty() ? "" : " (" + reg.name + ")");
        if (reg.count == 0) {
            throw SceneSpecError(label + " has zero points");
        }
        if (!(reg.x_max > reg.x_min) || !(reg.y_max > reg.y_min) || !std::isfinite(reg.x_min) ||
            !std::isfinite(reg.x_max) || !std::isfinite(reg.y_min) || !std::isfinite(reg.y_max)) {
            throw SceneSpecError(label + " has an empty or non-finite rectangle");
        }
        check_gaussian(reg.z, label + " z");
        check_gaussian(reg.amp, label + " amp");
        check_gaussian(reg.ew, label + " ew");
        check_weights(reg.ne_weights, label + " ne");
        check_weights(reg.eid_weights, label + " eid");
        for (std::size_t s = 0; s < r; ++s) {
            const SceneRegion& o = spec.regions[s];
            const bool overlap = reg.x_min < o.x_max && o.x_min < reg.x_max &&
                                 reg.y_min < o.y_max && o.y_min < reg.y_max;
            if (overlap) {
                throw SceneSpecError(label + " overlaps region " + std::to_string(s + 1));
            }
        }
    }
}

SyntheticScene generate_synthetic_scene(const SceneSpec& spec, std::uint64_t seed)
{
    validate_scene(spec);
    SyntheticScene scene;
    scene.cloud.source = "synthetic";
    scene.truth.k = static_cast<ClusterId>(spec.regions.size());

    Rng rng(seed);
    double t = 0.0;
    for (std::size_t r = 0; r < spec.regions.size(); ++r) {
        const SceneRegion& reg = spec.regions[r];
        for (std::size_t i = 0; i < reg.count; ++i) {
            PointRecord p;
            p.x = rng.uniform(reg.x_min, reg.x_max);
            p.y = rng.uniform(reg.y_min, reg.y_max);
            p.z = reg.z.mean + reg.z.stddev * rng.normal();
            p.amp = reg.amp.mean + reg.amp.stddev * rng.normal();
            p.ew = reg.ew.mean + reg.ew.stddev * rng.normal();
            p.ne = draw_category(reg.ne_weights, reg.ne_weights.size(), rng);
            p.eid = draw_category(reg.eid_weights, static_cast<std::size_t>(p.ne), rng);
            p.t = t;
            t += 1e-5;
            scene.cloud.points.push_back(p);
            scene.truth.labels.push_back(static_cast<ClusterId>(r + 1));
        }
    }
    return scene;
}

SceneSpec two_patch_scene(std::size_t points_per_patch)
{
    SceneRegion lawn{.name = "lawn",
                     .x_min = 0.0, .x_max = 20.0,
                     .y_min = 0.0, .y_max = 20.0,
                     .count = points_per_patch,
                     .z = {10.0, 0.1}, .amp = {60.0, 4.0}, .ew = {3.6, 0.15},
                     .ne_weights = {1.0}, .eid_weights = {1.0}};
    SceneRegion trees{.name = "trees",
                      .x_min = 20.0, .x_max = 40.0,
                      .y_min = 0.0, .y_max = 20.0,
                      .count = points_per_patch,
                      .z = {25.0, 3.0}, .amp = {25.0, 5.0}, .ew = {4.8, 0.4},
                      .ne_weights = {0.3, 0.4, 0.3}, .eid_weights = {0.5, 0.3, 0.2}};
    return SceneSpec{{lawn, trees}};
}

SceneSpec separated_blobs_scene(std::size_t points_per_blob, double separation)
{
    const double sd = 1.0;
    SceneRegion a{.name = "a",
                  .x_min = 0.0, .x_max = 10.0,
                  .y_min = 0.0, .y_max = 10.0,
                  .count = points_per_blob,
                  .z = {0.0, sd}, .amp = {0.0, sd}, .ew = {0.0, sd}};
    SceneRegion b = a;
    b.name = "b";
    b.x_min = 20.0;
    b.x_max = 30.0;
    b.z.mean = separation * sd;
    b.amp.mean = separation * sd;
    b.ew.mean = separation * sd;
    return SceneSpec{{a, b}};
}

SceneSpec garden_scene(std::size_t total_points)
{
    const std::size_t cells = 6;
    const std::size_t base = std::max<std::size_t>(1, total_points / cells);
    std::size_t extra = total_points > base * cells ? total_points - base * cells : 0;
    auto cell = [&](std::string name, int col, int row, Gaussian z, Gaussian amp, Gaussian ew,
                    std::vector<double> ne, std::vector<double> eid) {
        SceneRegion r;
        r.name = std::move(name);
        r.x_min = 30.0 * col;
        r.x_max = 30.0 * (col + 1);
        r.y_min = 30.0 * row;
        r.y_max = 30.0 * (row + 1);
        r.count = base + (extra > 0 ? 1 : 0);
        if (extra > 0) {
            --extra;
        }
        r.z = z;
        r.amp = amp;
        r.ew = ew;
        r.ne_weights = std::move(ne);
        r.eid_weights = std::move(eid);
        return r;
    };
    SceneSpec spec;
    spec.regions.push_back(cell("water", 0, 0, {8.0, 0.05}, {8.0, 2.0}, {3.2, 0.1}, {1.0}, {1.0}));
    spec.regions.push_back(cell("lawn", 1, 0, {10.0, 0.1}, {60.0, 4.0}, {3.6, 0.15}, {1.0}, {1.0}));
    spec.regions.push_back(cell("trees", 2, 0, {24.0, 4.0}, {25.0, 6.0}, {4.9, 0.4},
                                {0.25, 0.4, 0.35}, {0.5, 0.3, 0.2}));
    spec.regions.push_back(cell("building", 0, 1, {22.0, 0.3}, {45.0, 3.0}, {3.9, 0.1},
                                {0.9, 0.1}, {0.9, 0.1}));
    spec.regions.push_back(cell("gravel", 1, 1, {10.2, 0.05}, {80.0, 5.0}, {3.5, 0.1},
                                {1.0}, {1.0}));
    spec.regions.push_back(cell("trees", 2, 1, {24.0, 4.0}, {25.0, 6.0}, {4.9, 0.4},
                                {0.25, 0.4, 0.35}, {0.5, 0.3, 0.2}));
    return spec;
}

SceneSpec builtin_scene(std::string_view name, std::size_t total_points)
{
    if (total_points < 2) {
        throw SceneSpecError("builtin scene needs at least 2 points");
    }
    if (name == "two_patch") {
        return two_patch_scene(total_points / 2);
    }
    if (name == "blobs") {
        return separated_blobs_scene(total_points / 2);
    }
    if (name == "garden") {
        return garden_scene(total_points);
    }
    throw SceneSpecError("unknown scene '" + std::string(name) +
                         "' (expected two_patch, blobs or garden)");
}

}  // namespace alsga
