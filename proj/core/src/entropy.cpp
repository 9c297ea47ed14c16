#include "pseudolinear/entropy.hpp"

#include <cmath>

#include "pseudolinear/errors.hpp"

namespace pseudolinear {

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw InvalidArgument("binary_entropy needs x in [0, 1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double capacity(double p) { return 1.0 - binary_entropy(p); }

bool less_noisy(double p, double r) { return p >= 0.0 && p < 0.5 && r >= 0.0 && r < capacity(p); }

}  // namespace pseudolinear
