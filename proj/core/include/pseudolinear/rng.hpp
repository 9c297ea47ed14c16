#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "pseudolinear/bitlinalg.hpp"

namespace pseudolinear {

/// The engine used everywhere. Only raw 64-bit outputs are consumed, never
/// std:: distributions, so streams are identical across standard libraries.
using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed-splitting rule: the seed for task `index` of stream `stream` under
/// root seed `root` is splitmix64(splitmix64(root ^ splitmix64(stream)) + index).
/// Serial and parallel runs therefore draw identical per-task streams.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream, std::uint64_t index) noexcept;

/// Stream tags used by the library.
namespace streams {
inline constexpr std::uint64_t kGenerator = 1;
inline constexpr std::uint64_t kTrialSetup = 2;
inline constexpr std::uint64_t kAttack = 3;
inline constexpr std::uint64_t kFamily = 4;
inline constexpr std::uint64_t kSampler = 5;
}  // namespace streams

/// Uniform integer in [0, bound) by rejection sampling. bound must be > 0.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

/// Uniform double in [0, 1) from the top 53 bits of one draw.
double uniform_unit(Rng& rng);

/// Uniformly random k-subset of [0, n), sorted ascending.
std::vector<std::size_t> random_subset(Rng& rng, std::size_t n, std::size_t k);

/// Vector of `length` independent fair bits.
BitVector random_bits(Rng& rng, std::size_t length);

}  // namespace pseudolinear
