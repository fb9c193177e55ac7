#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace alsga {

/// Seed used whenever the caller does not supply one.
inline constexpr std::uint64_t kDefaultSeed = 42;

/// SplitMix64 finalizer; bijective mixing of a 64-bit word.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derive an independent stream seed from a master seed and a counter path,
/// e.g. derive_seed(master, {generation, slot}).
///
/// The construction folds each path element into the running state with
/// SplitMix64, so distinct paths give unrelated seeds and the mapping is
/// stable across platforms and releases.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::initializer_list<std::uint64_t> path) noexcept
{
    std::uint64_t state = splitmix64(master);
    for (std::uint64_t element : path) {
        state = splitmix64(state ^ splitmix64(element + 0x632be59bd9b4e019ULL));
    }
    return state;
}

/// Seeded random source. Every consumer in the library draws through this
/// type so that all randomness flows from explicit seeds.
class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept
    {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). n must be positive.
    std::size_t below(std::size_t n)
    {
        std::uniform_int_distribution<std::size_t> dist(0, n - 1);
        return dist(engine_);
    }

    /// Standard normal draw.
    double normal() { return normal_(engine_); }

    std::mt19937_64& engine() noexcept { return engine_; }

  private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace alsga
