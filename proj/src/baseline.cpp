#include "alsga/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "alsga/rng.hpp"

namespace alsga {

namespace {

double squared_distance(std::span<const double> a, const std::vector<double>& b) noexcept
{
    double ss = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        ss += d * d;
    }
    return ss;
}

// Assigns every point to its nearest center; returns per-point squared
// distances.
std::vector<double> assign(const FeatureMatrix& x, const std::vector<std::vector<double>>& centers,
                           std::vector<ClusterId>& labels)
{
    std::vector<double> d2(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        const auto row = x.row(i);
        double best = std::numeric_limits<double>::infinity();
        ClusterId best_c = 0;
        for (std::size_t c = 0; c < centers.size(); ++c) {
            const double d = squared_distance(row, centers[c]);
            if (d < best) {
                best = d;
                best_c = static_cast<ClusterId>(c);
            }
        }
        labels[i] = best_c + 1;
        d2[i] = best;
    }
    return d2;
}

// Moves each empty center onto the point farthest from its own center,
// taking that point from a cluster that keeps at least one member.
void reseed_empty(const FeatureMatrix& x, std::vector<std::vector<double>>& centers,
                  std::vector<ClusterId>& labels, std::vector<double>& d2)
{
    std::vector<std::size_t> sizes(centers.size(), 0);
    for (ClusterId l : labels) {
        ++sizes[l - 1];
    }
    for (std::size_t c = 0; c < centers.size(); ++c) {
        if (sizes[c] != 0) {
            continue;
        }
        std::size_t far = x.rows();
        for (std::size_t i = 0; i < x.rows(); ++i) {
            if (sizes[labels[i] - 1] > 1 && (far == x.rows() || d2[i] > d2[far])) {
                far = i;
            }
        }
        if (far == x.rows()) {
            continue;  // every other cluster is a singleton; nothing to take
        }
        --sizes[labels[far] - 1];
        ++sizes[c];
        labels[far] = static_cast<ClusterId>(c + 1);
        const auto row = x.row(far);
        centers[c].assign(row.begin(), row.end());
        d2[far] = 0.0;
    }
}

}  // namespace

KMeansResult kmeans(const FeatureMatrix& features, ClusterId k, std::uint64_t seed,
                    const KMeansOptions& options)
{
    const std::size_t n = features.rows();
    if (k == 0 || k > n) {
        throw std::invalid_argument("kmeans: cluster count must lie in 1..N");
    }
    if (options.max_iter < 1 || !(options.tol >= 0.0)) {
        throw std::invalid_argument("kmeans: max_iter must be >= 1 and tol >= 0");
    }
    const std::size_t dims = features.cols();

    // k distinct random points (partial Fisher-Yates).
    Rng rng(seed);
    std::vector<std::size_t> ids(n);
    std::iota(ids.begin(), ids.end(), std::size_t{0});
    for (std::size_t c = 0; c < k; ++c) {
        std::swap(ids[c], ids[c + rng.below(n - c)]);
    }
    KMeansResult result;
    result.centers.resize(k);
    for (std::size_t c = 0; c < k; ++c) {
        const auto row = features.row(ids[c]);
        result.centers[c].assign(row.begin(), row.end());
    }

    std::vector<ClusterId> labels(n, 1);
    auto assign_step = [&] {
        auto d2 = assign(features, result.centers, labels);
        reseed_empty(features, result.centers, labels, d2);
        const double inertia = std::accumulate(d2.begin(), d2.end(), 0.0);
        result.inertia_history.push_back(inertia);
        return inertia;
    };

    for (std::size_t iter = 0; iter < options.max_iter; ++iter) {
        assign_step();
        result.iterations_used = iter + 1;

        std::vector<std::vector<double>> sums(k, std::vector<double>(dims, 0.0));
        std::vector<std::size_t> counts(k, 0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto row = features.row(i);
            auto& s = sums[labels[i] - 1];
            for (std::size_t j = 0; j < dims; ++j) {
                s[j] += row[j];
            }
            ++counts[labels[i] - 1];
        }
        double movement = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            if (counts[c] == 0) {
                continue;
            }
            double shift = 0.0;
            for (std::size_t j = 0; j < dims; ++j) {
                const double updated = sums[c][j] / static_cast<double>(counts[c]);
                shift += (updated - result.centers[c][j]) * (updated - result.centers[c][j]);
                result.centers[c][j] = updated;
            }
            movement = std::max(movement, std::sqrt(shift));
        }
        if (movement <= options.tol) {
            break;
        }
    }
    // Final assignment against the final centers.
    result.inertia = assign_step();
    result.labeling = Labeling{std::move(labels), k};
    return result;
}

Labeling knn_majority_smooth(const PlanarIndex& index, const Labeling& labeling,
                             std::size_t neighbor_k, std::size_t repeats)
{
    if (neighbor_k < 1) {
        throw std::invalid_argument("knn_majority_smooth: neighbor_k must be >= 1");
    }
    if (labeling.size() != index.size()) {
        throw std::invalid_argument("knn_majority_smooth: labeling length does not match index");
    }
    validate_labeling(labeling);
    const NeighborTable table(index, neighbor_k);
    Labeling current = labeling;
    std::vector<std::size_t> votes(static_cast<std::size_t>(labeling.k) + 1, 0);
    for (std::size_t pass = 0; pass < repeats; ++pass) {
        Labeling next = current;
        for (PointId i = 0; i < current.size(); ++i) {
            const ClusterId own = current.labels[i];
            ++votes[own];
            for (std::uint32_t j : table.neighbors(i)) {
                ++votes[current.labels[j]];
            }
            std::size_t top = 0;
            for (std::size_t v : votes) {
                top = std::max(top, v);
            }
            ClusterId chosen = own;
            if (votes[own] != top) {
                for (ClusterId c = 1; c < votes.size(); ++c) {
                    if (votes[c] == top) {
                        chosen = c;
                        break;
                    }
                }
            }
            next.labels[i] = chosen;
            votes[own] = 0;
            for (std::uint32_t j : table.neighbors(i)) {
                votes[current.labels[j]] = 0;
            }
        }
        current = std::move(next);
    }
    return current;
}

double adjusted_rand_index(const Labeling& a, const Labeling& b)
{
    if (a.size() != b.size()) {
        throw std::invalid_argument("adjusted_rand_index: labelings differ in length");
    }
    const double n = static_cast<double>(a.size());
    if (a.size() < 2) {
        return 1.0;
    }
    std::map<std::pair<ClusterId, ClusterId>, double> joint;
    std::map<ClusterId, double> rows, cols;
    for (std::size_t i = 0; i < a.size(); ++i) {
        joint[{a.labels[i], b.labels[i]}] += 1.0;
        rows[a.labels[i]] += 1.0;
        cols[b.labels[i]] += 1.0;
    }
    const auto pairs = [](double m) { return m * (m - 1.0) / 2.0; };
    double index = 0.0, sum_rows = 0.0, sum_cols = 0.0;
    for (const auto& [key, m] : joint) {
        index += pairs(m);
    }
    for (const auto& [key, m] : rows) {
        sum_rows += pairs(m);
    }
    for (const auto& [key, m] : cols) {
        sum_cols += pairs(m);
    }
    const double expected = sum_rows * sum_cols / pairs(n);
    const double max_index = 0.5 * (sum_rows + sum_cols);
    if (max_index == expected) {
        return 1.0;  // both partitions trivial (all-in-one or all-singletons)
    }
    return (index - expected) / (max_index - expected);
}

}  // namespace alsga
