#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pseudolinear/bitlinalg.hpp"
#include "pseudolinear/finite_field.hpp"

namespace pseudolinear {

/// Binary parity-check matrix of blocklength 2^w - 1 in which any k columns
/// are linearly independent.
///
/// Column u (1 <= u <= 2^w - 1) is the stack bits(b^1), bits(b^2), ...,
/// bits(b^k) with b = alpha^(u-1): row (j-1)*w + i holds bit i of b^j. This
/// is the unreduced Vandermonde-style BCH check matrix, so m = k*w. Columns
/// are computed on demand; the full matrix is never held.
class ParityCheck {
 public:
  ParityCheck(unsigned width, unsigned k, std::optional<std::uint32_t> polynomial = std::nullopt);

  unsigned width() const noexcept { return field_.width(); }
  unsigned k() const noexcept { return k_; }
  std::size_t rows() const noexcept { return static_cast<std::size_t>(k_) * field_.width(); }
  /// Number of nonzero columns, 2^w - 1.
  std::uint64_t columns() const noexcept { return field_.order(); }
  const FiniteField& field() const noexcept { return field_; }

  /// h(u). u = 0 yields the zero vector; 1 <= u <= 2^w - 1 yields column u.
  BitVector column(std::uint64_t u) const;

  /// The field element indexing message u >= 1.
  FiniteField::Element element_for(std::uint64_t u) const;

  /// H with columns 1..2^w-1 (matrix column c holds h(c+1)). Rejects widths
  /// whose column count exceeds `max_columns`.
  BitMatrix matrix(std::uint64_t max_columns = std::uint64_t{1} << 20) const;

  /// One hex-encoded row of H per line, for golden files.
  std::vector<std::string> hex_rows(std::uint64_t max_columns = std::uint64_t{1} << 20) const;

 private:
  FiniteField field_;
  unsigned k_;
};

ParityCheck build_parity_check(unsigned width, unsigned k,
                               std::optional<std::uint32_t> polynomial = std::nullopt);

inline constexpr double kDefaultSubsetGuard = 1e7;

/// True iff every k-subset of the given columns is linearly independent.
/// Rejects with GuardExceeded when C(#columns, k) > guard.
bool all_k_subsets_independent(std::span<const BitVector> columns, std::size_t k,
                               double guard = kDefaultSubsetGuard);

/// Exhaustive check that every k-subset of H's columns is independent.
bool verify_design_distance(const ParityCheck& pc, double guard = kDefaultSubsetGuard);

/// Same check on an explicit matrix and subset size.
bool verify_design_distance(const BitMatrix& h, std::size_t k, double guard = kDefaultSubsetGuard);

}  // namespace pseudolinear
