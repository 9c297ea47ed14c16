#include "pseudolinear/combinatorics.hpp"

#include <numeric>
#include <vector>

#include "pseudolinear/errors.hpp"

namespace pseudolinear {

double binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0.0;
  if (k > n - k) k = n - k;
  double r = 1.0;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

std::uint64_t binomial_exact(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // r * (n - k + i) / i is an integer; cancel gcd(r, i) first so the
    // division is exact before multiplying.
    const std::uint64_t g = std::gcd(r, i);
    const std::uint64_t num = (n - k + i) / (i / g);
    if (__builtin_mul_overflow(r / g, num, &r)) throw InvalidArgument("binomial coefficient overflows 64 bits");
  }
  return r;
}

bool for_each_combination(std::size_t n, std::size_t k,
                          const std::function<bool(std::span<const std::size_t>)>& visit) {
  if (k > n) return true;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!visit(idx)) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

double ball_size(std::size_t n, std::size_t t) {
  double total = 0.0;
  for (std::size_t j = 0; j <= t && j <= n; ++j) total += binomial(n, j);
  return total;
}

bool for_each_in_ball(std::size_t n, std::size_t t, const std::function<bool(const BitVector&)>& visit) {
  for (std::size_t w = 0; w <= t && w <= n; ++w) {
    const bool finished = for_each_combination(n, w, [&](std::span<const std::size_t> support) {
      BitVector e(n);
      for (std::size_t i : support) e.set(i);
      return visit(e);
    });
    if (!finished) return false;
  }
  return true;
}

}  // namespace pseudolinear
