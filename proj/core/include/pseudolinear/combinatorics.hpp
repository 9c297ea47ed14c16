#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

#include "pseudolinear/bitlinalg.hpp"

namespace pseudolinear {

/// C(n, k) as a double; exact while the result fits in 53 bits.
double binomial(std::uint64_t n, std::uint64_t k);

/// C(n, k) exactly; throws InvalidArgument on 64-bit overflow.
std::uint64_t binomial_exact(std::uint64_t n, std::uint64_t k);

/// Calls visit(indices) for each k-subset of [0, n) in lexicographic order;
/// indices are strictly increasing. Stops early when visit returns false.
/// Returns false iff stopped early.
bool for_each_combination(std::size_t n, std::size_t k,
                          const std::function<bool(std::span<const std::size_t>)>& visit);

/// Number of strings in the Hamming ball of radius t in {0,1}^n.
double ball_size(std::size_t n, std::size_t t);

/// Visits every e in {0,1}^n with weight(e) <= t, by increasing weight and
/// lexicographic support within a weight. Stops early when visit returns false.
bool for_each_in_ball(std::size_t n, std::size_t t, const std::function<bool(const BitVector&)>& visit);

}  // namespace pseudolinear
