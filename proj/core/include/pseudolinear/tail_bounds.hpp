#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>

#include "pseudolinear/independence_lab.hpp"
#include "pseudolinear/rng.hpp"

namespace pseudolinear {

/// lambda (lambda - 1) ... (lambda - k + 1) / k!, signed.
double gen_binomial(double lambda, unsigned k);

/// 1 / C(lambda, k) for the moment method, or +inf when lambda <= k - 1.
///
/// Below k - 1 the falling factorial is non-positive or, for an even number
/// of negative factors, positive but no longer a lower bound for C(V, k) on
/// V >= lambda; either way no Markov bound follows.
double inverse_moment_denominator(double lambda, unsigned k);

/// C(M, k) (mu/M)^k / C(mu (1 + gamma), k), for k-wise independent bits
/// with sum of means mu. +inf when the denominator is unusable.
double lemma2_bound(std::uint64_t m, unsigned k, double mu, double gamma);

/// c_k C(M1 M2, k) (mu/(M1 M2))^k / C(mu (1 + gamma), k) for bits that are
/// k-wise independent over every forest. Requires mu >= 1.
double lemma3_bound(std::uint64_t m1, std::uint64_t m2, unsigned k, double mu, double gamma, double ck);

/// E[C(sum V, k)] computed from outcome weights.
double binomial_moment(const JointDistribution& dist, unsigned k);

/// (1 / C(lambda, k)) sum over k-subsets E of E[prod_{e in E} V_e], with the
/// sum enumerated explicitly.
double sss_moment_value(const JointDistribution& dist, double lambda, unsigned k,
                        double guard = kDefaultEdgeSubsetGuard);

/// Each product in sss_moment_value replaced by the product of the means
/// over the maximum spanning forest of its edge set. Bipartite only.
double forest_relaxed_value(const JointDistribution& dist, double lambda, unsigned k,
                            double guard = kDefaultEdgeSubsetGuard);

/// s -> number of k-edge subsets of V1 x V2 with s fundamental cycles.
std::map<std::size_t, std::uint64_t> partition_by_cycles(std::size_t m1, std::size_t m2, std::size_t k,
                                                         double guard = kDefaultEdgeSubsetGuard);

struct CkOracle {
  std::map<std::size_t, std::uint64_t> histogram;
  /// s -> largest number of k-edge sets with s cycles sharing one spanning forest.
  std::map<std::size_t, std::uint64_t> max_per_forest;
  std::uint64_t bk = 0;
  /// b_k sum_s C(M, k-s) M^s / C(M, k): valid for any means summing to mu >= 1.
  double ck = 0.0;
  /// sum_s |P_s| M^s / C(M, k): the least constant valid for uniform means
  /// with mu >= 1.
  double ck_uniform = 0.0;
};

CkOracle ck_oracle(std::size_t m1, std::size_t m2, std::size_t k, double guard = kDefaultEdgeSubsetGuard);

/// e_d(x): sum over d-subsets of the product of entries.
double elementary_symmetric(std::span<const double> x, std::size_t d);

/// g over the means of a (k - s)-edge sum, which is e_{k-s}(mu).
inline double g_value(std::span<const double> means, std::size_t edges) { return elementary_symmetric(means, edges); }

/// alpha_k 2^(-n (k theta - r)).
double lemma5_bound(double n, unsigned k, double theta, double r, double alpha_k);

/// gamma_k (10 n)^(1 + floor(k/2)) / delta * 2^(-floor(k/2) (eps/2) n).
double lemma10_bound(double n, unsigned k, double epsilon, double delta, double gamma_k);

/// 1 + H2(p) + r - floor(k/2) eps / 2.
double theorem1_exponent(unsigned k, double p, double r, double epsilon);

/// log2 of c_k (10 n)^(1 + floor(k/2)) / delta * 2^(theorem1_exponent n).
double theorem1_log2_bound(double n, unsigned k, double p, double r, double epsilon, double delta, double ck);
double theorem1_bound(double n, unsigned k, double p, double r, double epsilon, double delta, double ck);

/// Smallest k, necessarily even, with theorem1_exponent(k) < 0.
unsigned theorem1_threshold_k(double p, double r, double epsilon);

struct BoundReport {
  double bound = 0.0;
  double empirical = 0.0;
  std::uint64_t trials = 0;
  double standard_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  bool exact = false;
  /// empirical - 3 stderr <= bound.
  bool pass = false;
};

/// Exact P(sum V > threshold) from the table; stderr 0.
BoundReport empirical_tail(const JointDistribution& dist, double threshold, double bound);

/// Monte-Carlo P(sample > threshold) over `trials` draws from Rng seeded by
/// derive_seed(seed, kSampler, 0).
BoundReport empirical_tail(const std::function<double(Rng&)>& sampler, double threshold, double bound,
                           std::uint64_t trials, std::uint64_t seed);

}  // namespace pseudolinear
