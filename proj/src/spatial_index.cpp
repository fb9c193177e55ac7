#include "alsga/spatial_index.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>

namespace alsga {

namespace {

constexpr std::uint32_t kLeafSize = 12;

struct Candidate
{
    double d2;
    std::uint32_t id;
};

// Max-heap order: the "worst" candidate (largest distance, then largest id)
// on top.
struct WorseFirst
{
    bool operator()(const Candidate& a, const Candidate& b) const noexcept
    {
        return a.d2 < b.d2 || (a.d2 == b.d2 && a.id < b.id);
    }
};

bool better(double d2, std::uint32_t id, const Candidate& than) noexcept
{
    return d2 < than.d2 || (d2 == than.d2 && id < than.id);
}

}  // namespace

PlanarIndex::PlanarIndex(std::vector<PlanarPosition> positions) : positions_(std::move(positions))
{
    if (positions_.empty()) {
        throw std::invalid_argument("PlanarIndex: point cloud is empty");
    }
    if (positions_.size() > std::numeric_limits<std::uint32_t>::max() / 2) {
        throw std::invalid_argument("PlanarIndex: too many points");
    }
    order_.resize(positions_.size());
    for (std::uint32_t i = 0; i < order_.size(); ++i) {
        order_[i] = i;
    }
    nodes_.reserve(2 * positions_.size() / kLeafSize + 2);
    build(0, static_cast<std::uint32_t>(order_.size()));
}

std::int32_t PlanarIndex::build(std::uint32_t begin, std::uint32_t end)
{
    const auto self = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back(Node{});
    if (end - begin <= kLeafSize) {
        nodes_[self].begin = begin;
        nodes_[self].end = end;
        return self;
    }

    // Split along the wider extent of this cell.
    double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x;
    double min_y = min_x, max_y = -min_x;
    for (std::uint32_t i = begin; i < end; ++i) {
        const auto& p = positions_[order_[i]];
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const std::uint8_t axis = (max_y - min_y) > (max_x - min_x) ? 1 : 0;

    const std::uint32_t mid = begin + (end - begin) / 2;
    auto coord = [&](std::uint32_t id) { return axis == 0 ? positions_[id].x : positions_[id].y; };
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](std::uint32_t a, std::uint32_t b) { return coord(a) < coord(b); });

    nodes_[self].axis = axis;
    nodes_[self].split = coord(order_[mid]);
    const std::int32_t left = build(begin, mid);
    const std::int32_t right = build(mid, end);
    nodes_[self].left = left;
    nodes_[self].right = right;
    return self;
}

std::vector<PointId> PlanarIndex::k_nearest(PointId id, std::size_t k) const
{
    if (id >= positions_.size()) {
        throw std::out_of_range("k_nearest: invalid point id " + std::to_string(id));
    }
    if (k == 0) {
        throw std::invalid_argument("k_nearest: k must be at least 1");
    }
    const std::size_t want = std::min(k, positions_.size() - 1);
    if (want == 0) {
        return {};
    }

    const PlanarPosition q = positions_[id];
    std::vector<Candidate> heap;
    heap.reserve(want + 1);
    const WorseFirst cmp;

    auto offer = [&](std::uint32_t cand) {
        if (cand == id) {
            return;
        }
        const double dx = positions_[cand].x - q.x;
        const double dy = positions_[cand].y - q.y;
        const double d2 = dx * dx + dy * dy;
        if (heap.size() < want) {
            heap.push_back({d2, cand});
            std::push_heap(heap.begin(), heap.end(), cmp);
        } else if (better(d2, cand, heap.front())) {
            std::pop_heap(heap.begin(), heap.end(), cmp);
            heap.back() = {d2, cand};
            std::push_heap(heap.begin(), heap.end(), cmp);
        }
    };

    // Explicit stack of (node, lower bound on squared distance to its cell).
    std::vector<std::pair<std::int32_t, double>> stack;
    stack.reserve(64);
    stack.emplace_back(0, 0.0);
    while (!stack.empty()) {
        auto [node_id, bound] = stack.back();
        stack.pop_back();
        // Equal bounds must still be visited: a tied point with a smaller id
        // could live there.
        if (heap.size() == want && bound > heap.front().d2) {
            continue;
        }
        const Node& node = nodes_[node_id];
        if (node.left < 0) {
            for (std::uint32_t i = node.begin; i < node.end; ++i) {
                offer(order_[i]);
            }
            continue;
        }
        const double qc = node.axis == 0 ? q.x : q.y;
        const double diff = qc - node.split;
        const std::int32_t near = diff < 0.0 ? node.left : node.right;
        const std::int32_t far = diff < 0.0 ? node.right : node.left;
        stack.emplace_back(far, std::max(bound, diff * diff));
        stack.emplace_back(near, bound);
    }

    std::sort_heap(heap.begin(), heap.end(), cmp);
    std::vector<PointId> out;
    out.reserve(heap.size());
    for (const auto& c : heap) {
        out.push_back(c.id);
    }
    return out;
}

PlanarIndex build_planar_index(const PointCloud& cloud)
{
    std::vector<PlanarPosition> positions;
    positions.reserve(cloud.size());
    for (const auto& p : cloud.points) {
        positions.push_back({p.x, p.y});
    }
    return PlanarIndex(std::move(positions));
}

NeighborTable::NeighborTable(const PlanarIndex& index, std::size_t k)
    : points_(index.size()), width_(std::min(k, index.size() - 1))
{
    if (k == 0) {
        throw std::invalid_argument("NeighborTable: k must be at least 1");
    }
    ids_.resize(points_ * width_);
    for (PointId i = 0; i < points_; ++i) {
        auto nn = index.k_nearest(i, k);
        std::copy(nn.begin(), nn.end(), ids_.begin() + static_cast<std::ptrdiff_t>(i * width_));
    }
}

}  // namespace alsga
