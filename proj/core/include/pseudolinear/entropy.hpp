#pragma once

namespace pseudolinear {

/// H2(x) in bits, with H2(0) = H2(1) = 0. Rejects x outside [0, 1].
double binary_entropy(double x);

/// BSC capacity 1 - H2(p).
double capacity(double p);

/// The less-noisy region p < 1/2, r < 1 - H2(p).
bool less_noisy(double p, double r);

}  // namespace pseudolinear
