#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "alsga/als_data.hpp"

namespace alsga {

using PointId = std::size_t;

struct PlanarPosition
{
    double x = 0.0;
    double y = 0.0;
};

/// Static 2-d tree over planar point positions answering exact k-nearest
/// neighbor queries. Neighbors are ordered by (squared distance, point id);
/// the query point itself is never returned. Immutable after construction,
/// so concurrent queries are safe.
class PlanarIndex
{
  public:
    explicit PlanarIndex(std::vector<PlanarPosition> positions);

    std::size_t size() const noexcept { return positions_.size(); }
    const PlanarPosition& position(PointId id) const { return positions_.at(id); }

    /// The min(k, N - 1) nearest other points of `id`. Throws
    /// std::out_of_range for an invalid id and std::invalid_argument for k = 0.
    std::vector<PointId> k_nearest(PointId id, std::size_t k) const;

  private:
    struct Node
    {
        double split = 0.0;
        std::uint32_t begin = 0;  // range into order_ for leaves
        std::uint32_t end = 0;
        std::int32_t left = -1;
        std::int32_t right = -1;
        std::uint8_t axis = 0;
    };

    std::int32_t build(std::uint32_t begin, std::uint32_t end);

    std::vector<PlanarPosition> positions_;
    std::vector<std::uint32_t> order_;
    std::vector<Node> nodes_;
};

/// Index over the (x, y) coordinates of the cloud. Throws on an empty cloud.
PlanarIndex build_planar_index(const PointCloud& cloud);

/// k-nearest neighbor lists for every point, flattened. Row i holds the
/// neighbors of point i; all rows have the same width min(k, N - 1).
class NeighborTable
{
  public:
    NeighborTable(const PlanarIndex& index, std::size_t k);

    std::size_t size() const noexcept { return points_; }
    std::size_t width() const noexcept { return width_; }
    std::span<const std::uint32_t> neighbors(PointId id) const noexcept
    {
        return {ids_.data() + id * width_, width_};
    }

  private:
    std::size_t points_ = 0;
    std::size_t width_ = 0;
    std::vector<std::uint32_t> ids_;
};

}  // namespace alsga
