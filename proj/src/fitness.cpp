#include "alsga/fitness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace alsga {

namespace {

double feature_distance(std::span<const double> a, std::span<const double> b) noexcept
{
    double ss = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        ss += d * d;
    }
    return std::sqrt(ss);
}

bool single_label(std::span<const ClusterId> labels) noexcept
{
    return std::all_of(labels.begin(), labels.end(),
                       [first = labels.empty() ? 0u : labels.front()](ClusterId c) {
                           return c == first;
                       });
}

double dunn_ratio(double min_separation, double max_diameter) noexcept
{
    if (!(max_diameter > 0.0)) {
        return std::numeric_limits<double>::infinity();
    }
    return min_separation / max_diameter;
}

bool reaches_rule(std::size_t disagreeing, std::size_t total, double rule) noexcept
{
    return total > 0 &&
           static_cast<double>(disagreeing) >= rule * static_cast<double>(total) * (1.0 - 1e-12);
}

}  // namespace

void FitnessConfig::validate() const
{
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("fitness.lambda must be finite and >= 0");
    }
    if (neighbor_k < 1) {
        throw std::invalid_argument("fitness.neighbor_k must be >= 1");
    }
    if (!(inhomogeneity_rule > 0.0 && inhomogeneity_rule <= 1.0)) {
        throw std::invalid_argument("fitness.rule must lie in (0, 1]");
    }
    if (!(dunn_cap > 0.0) || !std::isfinite(dunn_cap)) {
        throw std::invalid_argument("fitness.dunn_cap must be finite and > 0");
    }
    if (!std::isfinite(worst_fitness)) {
        throw std::invalid_argument("fitness.worst must be finite");
    }
}

namespace {

std::optional<double> dunn_direct(const FeatureMatrix& features, std::span<const ClusterId> labels)
{
    if (single_label(labels)) {
        return std::nullopt;
    }
    const std::size_t n = features.rows();
    double min_separation = std::numeric_limits<double>::infinity();
    double max_diameter = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto ri = features.row(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = feature_distance(ri, features.row(j));
            if (labels[i] == labels[j]) {
                max_diameter = std::max(max_diameter, d);
            } else {
                min_separation = std::min(min_separation, d);
            }
        }
    }
    return dunn_ratio(min_separation, max_diameter);
}

}  // namespace

std::optional<double> dunn_index(const FeatureMatrix& features, const Labeling& labeling)
{
    if (labeling.size() != features.rows()) {
        throw std::invalid_argument("dunn_index: labeling length does not match feature rows");
    }
    return dunn_direct(features, labeling.labels);
}

SortedPairDunn::SortedPairDunn(const FeatureMatrix& features)
{
    const std::size_t n = features.rows();
    pairs_.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        const auto ri = features.row(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            pairs_.push_back({feature_distance(ri, features.row(j)), static_cast<std::uint32_t>(i),
                              static_cast<std::uint32_t>(j)});
        }
    }
    std::sort(pairs_.begin(), pairs_.end(), [](const Pair& l, const Pair& r) {
        if (l.distance != r.distance) {
            return l.distance < r.distance;
        }
        return l.a != r.a ? l.a < r.a : l.b < r.b;
    });
}

std::optional<double> SortedPairDunn::operator()(std::span<const ClusterId> labels) const
{
    if (single_label(labels)) {
        return std::nullopt;
    }
    double min_separation = std::numeric_limits<double>::infinity();
    for (const Pair& p : pairs_) {
        if (labels[p.a] != labels[p.b]) {
            min_separation = p.distance;
            break;
        }
    }
    double max_diameter = 0.0;
    for (auto it = pairs_.rbegin(); it != pairs_.rend(); ++it) {
        if (labels[it->a] == labels[it->b]) {
            max_diameter = it->distance;
            break;
        }
    }
    return dunn_ratio(min_separation, max_diameter);
}

std::size_t inhomogeneity_penalty(const PlanarIndex& index, const Labeling& labeling,
                                  const FitnessConfig& cfg)
{
    if (labeling.size() != index.size()) {
        throw std::invalid_argument("inhomogeneity_penalty: labeling length does not match index");
    }
    std::size_t count = 0;
    for (PointId i = 0; i < index.size(); ++i) {
        const auto nn = index.k_nearest(i, cfg.neighbor_k);
        std::size_t disagreeing = 0;
        for (PointId j : nn) {
            disagreeing += labeling.labels[j] != labeling.labels[i] ? 1 : 0;
        }
        count += reaches_rule(disagreeing, nn.size(), cfg.inhomogeneity_rule) ? 1 : 0;
    }
    return count;
}

std::size_t inhomogeneity_penalty(const NeighborTable& neighbors, std::span<const ClusterId> labels,
                                  double rule)
{
    if (labels.size() != neighbors.size()) {
        throw std::invalid_argument("inhomogeneity_penalty: labeling length does not match table");
    }
    std::size_t count = 0;
    const std::size_t width = neighbors.width();
    for (PointId i = 0; i < labels.size(); ++i) {
        std::size_t disagreeing = 0;
        for (std::uint32_t j : neighbors.neighbors(i)) {
            disagreeing += labels[j] != labels[i] ? 1 : 0;
        }
        count += reaches_rule(disagreeing, width, rule) ? 1 : 0;
    }
    return count;
}

FitnessValue combine(std::optional<double> dunn, std::size_t penalty_count, std::size_t n,
                     const FitnessConfig& cfg)
{
    FitnessValue value;
    value.penalty_count = penalty_count;
    if (!dunn) {
        value.degenerate = true;
        value.dunn = 0.0;
        value.combined = cfg.worst_fitness;
        return value;
    }
    value.dunn = std::min(*dunn, cfg.dunn_cap);
    const double scaled = cfg.penalty_scale == PenaltyScale::per_point
                              ? static_cast<double>(penalty_count) / static_cast<double>(n)
                              : static_cast<double>(penalty_count);
    value.combined = value.dunn - cfg.lambda * scaled;
    return value;
}

FitnessValue evaluate(const FeatureMatrix& features, const PlanarIndex& index,
                      const Labeling& labeling, const FitnessConfig& cfg)
{
    cfg.validate();
    if (features.rows() != index.size() || labeling.size() != features.rows()) {
        throw std::invalid_argument("evaluate: features, index and labeling lengths differ");
    }
    const auto dunn = dunn_index(features, labeling);
    const auto penalty = inhomogeneity_penalty(index, labeling, cfg);
    return combine(dunn, penalty, labeling.size(), cfg);
}

FitnessEvaluator::FitnessEvaluator(const FeatureMatrix& features, const PlanarIndex& index,
                                   FitnessConfig cfg)
    : features_(&features), cfg_(cfg), neighbors_(index, cfg.neighbor_k)
{
    cfg_.validate();
    if (features.rows() != index.size()) {
        throw std::invalid_argument("FitnessEvaluator: feature rows and index size differ");
    }
    if (features.rows() <= kSortedPairLimit) {
        sorted_ = std::make_unique<SortedPairDunn>(features);
    }
}

FitnessValue FitnessEvaluator::evaluate(std::span<const ClusterId> labels) const
{
    if (labels.size() != point_count()) {
        throw std::invalid_argument("FitnessEvaluator: labeling length does not match data");
    }
    std::optional<double> dunn;
    if (sorted_) {
        dunn = (*sorted_)(labels);
    } else {
        dunn = dunn_direct(*features_, labels);
    }
    const auto penalty = inhomogeneity_penalty(neighbors_, labels, cfg_.inhomogeneity_rule);
    return combine(dunn, penalty, labels.size(), cfg_);
}

FitnessValue FitnessEvaluator::evaluate(const Labeling& labeling) const
{
    return evaluate(std::span<const ClusterId>(labeling.labels));
}

}  // namespace alsga
