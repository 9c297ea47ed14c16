#include "pseudolinear/finite_field.hpp"

#include <array>
#include <bit>

#include "pseudolinear/errors.hpp"

namespace pseudolinear {

namespace {

// Index w holds a primitive polynomial of degree w over GF(2).
constexpr std::array<std::uint32_t, 17> kPrimitivePolynomials = {
    0,       0,       0x7,     0xB,     0x13,    0x25,   0x43,   0x89,   0x11D,
    0x211,   0x409,   0x805,   0x1053,  0x201B,  0x4443, 0x8003, 0x1100B,
};

}  // namespace

std::uint32_t FiniteField::default_polynomial(unsigned width) {
  if (width < kMinWidth || width > kMaxWidth) throw InvalidArgument("field width must be in [2, 16]");
  return kPrimitivePolynomials[width];
}

FiniteField::FiniteField(unsigned width, std::optional<std::uint32_t> polynomial)
    : width_(width), polynomial_(polynomial.value_or(default_polynomial(width))) {
  if (std::bit_width(polynomial_) != width_ + 1) {
    throw InvalidArgument("primitive polynomial must have degree equal to the field width");
  }
  if ((polynomial_ & 1U) == 0) throw InvalidArgument("primitive polynomial must have a constant term");

  const std::uint32_t n = order();
  exp_.assign(n, 0);
  log_.assign(size(), 0);
  Element x = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (i > 0 && x == 1) throw InvalidArgument("polynomial is not primitive");
    exp_[i] = x;
    log_[x] = i;
    x <<= 1;
    if (x & size()) x ^= polynomial_;
  }
  if (x != 1) throw InvalidArgument("polynomial is not primitive");
}

FiniteField::Element FiniteField::check(Element a) const {
  if (a >= size()) throw InvalidArgument("field element out of range");
  return a;
}

FiniteField::Element FiniteField::mul(Element a, Element b) const {
  if (check(a) == 0 || check(b) == 0) return 0;
  return exp_[(log_[a] + log_[b]) % order()];
}

FiniteField::Element FiniteField::inv(Element a) const {
  if (check(a) == 0) throw InvalidArgument("zero has no multiplicative inverse");
  return exp_[(order() - log_[a]) % order()];
}

FiniteField::Element FiniteField::pow(Element a, std::uint64_t e) const {
  if (check(a) == 0) {
    if (e == 0) throw InvalidArgument("0^0 is undefined");
    return 0;
  }
  const std::uint64_t l = (static_cast<std::uint64_t>(log_[a]) * (e % order())) % order();
  return exp_[l];
}

std::uint32_t FiniteField::log(Element a) const {
  if (check(a) == 0) throw InvalidArgument("log of zero");
  return log_[a];
}

}  // namespace pseudolinear
