#pragma once

// Conventional two-step classification: Lloyd k-means in feature space
// followed by planar k-nearest-neighbor majority smoothing.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "alsga/als_data.hpp"
#include "alsga/encoding.hpp"
#include "alsga/spatial_index.hpp"

namespace alsga {

struct KMeansOptions
{
    std::size_t max_iter = 100;
    double tol = 1e-8;  ///< stop when no center moves further than this
};

struct KMeansResult
{
    Labeling labeling;
    std::vector<std::vector<double>> centers;  ///< centers[c] belongs to label c + 1
    double inertia = 0.0;
    std::size_t iterations_used = 0;
    /// Inertia after every assignment step, the last entry equal to inertia.
    std::vector<double> inertia_history;
};

/// Lloyd's algorithm from k distinct random points. Points go to their
/// nearest center, ties to the lowest center id. A center left empty is
/// moved onto the point farthest from its current center. Throws
/// std::invalid_argument when k > N or k == 0.
KMeansResult kmeans(const FeatureMatrix& features, ClusterId k, std::uint64_t seed,
                    const KMeansOptions& options = {});

/// One synchronous majority pass (repeated `repeats` times). Each point takes
/// the modal label among itself and its neighbor_k planar neighbors; a tie
/// keeps the current label when it is modal, else picks the lowest label.
Labeling knn_majority_smooth(const PlanarIndex& index, const Labeling& labeling,
                             std::size_t neighbor_k, std::size_t repeats = 1);

/// Chance-corrected agreement between two labelings of the same points.
/// Returns 1 when both labelings are identical partitions.
double adjusted_rand_index(const Labeling& a, const Labeling& b);

}  // namespace alsga
