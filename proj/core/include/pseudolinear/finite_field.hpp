#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace pseudolinear {

/// GF(2^w) for 2 <= w <= 16 with exp/log tables.
///
/// Elements are integers in [0, 2^w) whose bit i is the coefficient of x^i;
/// the primitive element alpha is x, encoded as 2.
class FiniteField {
 public:
  using Element = std::uint32_t;

  static constexpr unsigned kMinWidth = 2;
  static constexpr unsigned kMaxWidth = 16;

  /// Field of the given width using the built-in primitive polynomial, or
  /// `polynomial` when supplied. The polynomial includes the x^w term
  /// (x^3 + x + 1 is 0b1011) and must be primitive.
  explicit FiniteField(unsigned width, std::optional<std::uint32_t> polynomial = std::nullopt);

  /// Built-in primitive polynomial for a width.
  static std::uint32_t default_polynomial(unsigned width);

  unsigned width() const noexcept { return width_; }
  std::uint32_t polynomial() const noexcept { return polynomial_; }
  std::uint32_t size() const noexcept { return 1U << width_; }
  /// Order of the multiplicative group, 2^w - 1.
  std::uint32_t order() const noexcept { return size() - 1; }
  Element alpha() const noexcept { return 2; }

  Element add(Element a, Element b) const { return check(a) ^ check(b); }
  Element mul(Element a, Element b) const;
  Element inv(Element a) const;
  /// a^e. Rejects 0^0.
  Element pow(Element a, std::uint64_t e) const;
  /// alpha^e.
  Element exp(std::uint64_t e) const { return exp_[e % order()]; }
  /// Discrete log base alpha; rejects 0.
  std::uint32_t log(Element a) const;

 private:
  Element check(Element a) const;

  unsigned width_;
  std::uint32_t polynomial_;
  std::vector<Element> exp_;
  std::vector<std::uint32_t> log_;
};

/// field_pow(F, a, e) = a^e.
inline FiniteField::Element field_pow(const FiniteField& f, FiniteField::Element a, std::uint64_t e) {
  return f.pow(a, e);
}

}  // namespace pseudolinear
