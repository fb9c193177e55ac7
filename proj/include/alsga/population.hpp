#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "alsga/encoding.hpp"
#include "alsga/fitness.hpp"

namespace alsga {

struct Member
{
    Chromosome chromosome;
    FitnessValue fitness;
};

/// Fitness-annotated chromosomes, kept sorted best-first by combined fitness.
class Population
{
  public:
    Population() = default;
    explicit Population(std::vector<Member> members) : members_(std::move(members)) { sort(); }

    /// Stable: members with equal fitness keep their assembly order.
    void sort()
    {
        std::stable_sort(members_.begin(), members_.end(), [](const Member& a, const Member& b) {
            return a.fitness.combined > b.fitness.combined;
        });
    }

    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    const Member& operator[](std::size_t rank) const { return members_[rank]; }
    const Member& best() const { return members_.front(); }
    const std::vector<Member>& members() const noexcept { return members_; }

  private:
    std::vector<Member> members_;
};

}  // namespace alsga
