#pragma once

// Fitness of a clustering: Dunn index minus a weighted count of points whose
// planar neighborhood is dominated by foreign labels.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "alsga/als_data.hpp"
#include "alsga/encoding.hpp"
#include "alsga/spatial_index.hpp"

namespace alsga {

/// How the inhomogeneous-point count enters the combined fitness.
enum class PenaltyScale
{
    per_point,  ///< lambda * count / N
    raw,        ///< lambda * count
};

struct FitnessConfig
{
    double lambda = 1.0;
    std::size_t neighbor_k = 8;
    /// A point is inhomogeneous when at least this fraction of its neighbors
    /// carries a different label.
    double inhomogeneity_rule = 0.5;
    PenaltyScale penalty_scale = PenaltyScale::per_point;
    double dunn_cap = 1e6;
    double worst_fitness = -1e9;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

struct FitnessValue
{
    double dunn = 0.0;  ///< capped Dunn index; 0 for degenerate labelings
    std::size_t penalty_count = 0;
    double combined = 0.0;
    bool degenerate = false;  ///< fewer than two non-empty clusters

    bool operator==(const FitnessValue&) const = default;
};

/// Dunn index: smallest distance between points of different clusters over
/// the largest distance between points of the same cluster, Euclidean in
/// feature space. Returns nullopt when fewer than two clusters are non-empty
/// and +infinity when every cluster has zero diameter. Direct O(N^2) route.
std::optional<double> dunn_index(const FeatureMatrix& features, const Labeling& labeling);

/// Dunn index over a precomputed, distance-sorted pair list. Typical
/// labelings terminate after scanning a handful of pairs from each end.
class SortedPairDunn
{
  public:
    explicit SortedPairDunn(const FeatureMatrix& features);

    std::optional<double> operator()(std::span<const ClusterId> labels) const;
    std::size_t pair_count() const noexcept { return pairs_.size(); }

  private:
    struct Pair
    {
        double distance;
        std::uint32_t a;
        std::uint32_t b;
    };
    std::vector<Pair> pairs_;
};

/// Count of points whose disagreeing-neighbor fraction reaches
/// cfg.inhomogeneity_rule among their cfg.neighbor_k planar neighbors.
std::size_t inhomogeneity_penalty(const PlanarIndex& index, const Labeling& labeling,
                                  const FitnessConfig& cfg);

/// Same rule over a precomputed neighbor table.
std::size_t inhomogeneity_penalty(const NeighborTable& neighbors, std::span<const ClusterId> labels,
                                  double rule);

/// Combine the two terms according to cfg.
FitnessValue combine(std::optional<double> dunn, std::size_t penalty_count, std::size_t n,
                     const FitnessConfig& cfg);

/// One-shot evaluation through the direct routes.
FitnessValue evaluate(const FeatureMatrix& features, const PlanarIndex& index,
                      const Labeling& labeling, const FitnessConfig& cfg);

/// Reusable evaluator holding the precomputed neighbor table and, for point
/// counts up to kSortedPairLimit, the sorted pair distances. Immutable after
/// construction; evaluate() may be called concurrently.
class FitnessEvaluator
{
  public:
    static constexpr std::size_t kSortedPairLimit = 3000;

    FitnessEvaluator(const FeatureMatrix& features, const PlanarIndex& index, FitnessConfig cfg);

    FitnessValue evaluate(const Labeling& labeling) const;
    FitnessValue evaluate(std::span<const ClusterId> labels) const;

    std::size_t point_count() const noexcept { return features_->rows(); }
    const FitnessConfig& config() const noexcept { return cfg_; }
    const FeatureMatrix& features() const noexcept { return *features_; }

  private:
    const FeatureMatrix* features_;
    FitnessConfig cfg_;
    NeighborTable neighbors_;
    std::unique_ptr<SortedPairDunn> sorted_;
};

}  // namespace alsga
