#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "pseudolinear/bitlinalg.hpp"

namespace pseudolinear {

/// Subsets S_1..S_S of a universe [0, U), each a membership mask of length U.
///
/// Separating means every ordered pair (u, u') of distinct elements has some
/// i with u in S_i and u' outside it. Families used with codes index the
/// universe by message value, so U = 2^Rn.
struct SeparatingFamily {
  std::size_t universe_size = 0;
  std::vector<BitVector> subsets;

  std::size_t size() const noexcept { return subsets.size(); }
  bool contains(std::size_t i, std::uint64_t u) const { return subsets.at(i).test(u); }
};

/// An ordered pair no subset separates.
struct SeparationFailure {
  SeparatingFamily family;
  std::uint64_t u = 0;
  std::uint64_t u_prime = 0;
};

inline constexpr double kDefaultSeparationGuard = 1e10;

/// First unseparated ordered pair, in lexicographic (u, u') order.
/// Rejects with GuardExceeded when U (U - 1) S > guard.
std::optional<std::pair<std::uint64_t, std::uint64_t>> find_unseparated_pair(
    const SeparatingFamily& family, double guard = kDefaultSeparationGuard);

bool verify(const SeparatingFamily& family, double guard = kDefaultSeparationGuard);

/// Each element joins each subset independently with probability 1/2. The
/// result is verified before returning; a failure is reported, not retried.
std::variant<SeparatingFamily, SeparationFailure> build_random(std::size_t universe_size, std::size_t count,
                                                               std::uint64_t seed,
                                                               double guard = kDefaultSeparationGuard);

/// Bit-indicator family over Rn-bit strings: S_i = {u : bit i of u is 1} and
/// S_{Rn+i} = {u : bit i of u is 0}. Separating by construction.
SeparatingFamily build_deterministic(unsigned message_bits);

/// Union bound 2^(2 Rn) (3/4)^S on the failure probability of build_random.
double failure_bound(unsigned message_bits, std::size_t count);

/// Text form: "separating-family v1", "U <size>", "S <count>", then one hex
/// membership row per subset.
void write_family(std::ostream& out, const SeparatingFamily& family);
SeparatingFamily read_family(std::istream& in);

}  // namespace pseudolinear
