#include "pseudolinear/tail_bounds.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <vector>

#include "pseudolinear/awtc.hpp"
#include "pseudolinear/combinatorics.hpp"
#include "pseudolinear/entropy.hpp"
#include "pseudolinear/errors.hpp"

namespace pseudolinear {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double gen_binomial(double lambda, unsigned k) {
  double value = 1.0;
  for (unsigned i = 0; i < k; ++i) value *= (lambda - i) / static_cast<double>(i + 1);
  return value;
}

double inverse_moment_denominator(double lambda, unsigned k) {
  if (k == 0) return 1.0;
  if (!(lambda > static_cast<double>(k) - 1.0)) return kInf;
  return 1.0 / gen_binomial(lambda, k);
}

double lemma2_bound(std::uint64_t m, unsigned k, double mu, double gamma) {
  if (m == 0) throw InvalidArgument("M must be positive");
  if (!(mu >= 0.0 && mu <= static_cast<double>(m))) throw InvalidArgument("mu must be in [0, M]");
  if (!(gamma > 0.0)) throw InvalidArgument("gamma must be positive");
  const double inv = inverse_moment_denominator(mu * (1.0 + gamma), k);
  if (std::isinf(inv)) return kInf;
  return binomial(m, k) * std::pow(mu / static_cast<double>(m), k) * inv;
}

double lemma3_bound(std::uint64_t m1, std::uint64_t m2, unsigned k, double mu, double gamma, double ck) {
  if (!(mu >= 1.0)) throw InvalidArgument("lemma3_bound requires mu >= 1");
  if (!(ck > 0.0)) throw InvalidArgument("c_k must be positive");
  return ck * lemma2_bound(m1 * m2, k, mu, gamma);
}

double binomial_moment(const JointDistribution& dist, unsigned k) {
  double total = 0.0;
  for (const auto& o : dist.outcomes()) total += binomial(std::popcount(o.assignment), k) * o.probability;
  return total;
}

double sss_moment_value(const JointDistribution& dist, double lambda, unsigned k, double guard) {
  const double subsets = binomial(dist.variables(), k);
  if (subsets > guard) throw GuardExceeded("too many k-subsets for the moment sum", subsets, guard);
  const double inv = inverse_moment_denominator(lambda, k);
  double sum = 0.0;
  for_each_combination(dist.variables(), k, [&](std::span<const std::size_t> vars) {
    sum += dist.all_ones(vars);
    return true;
  });
  if (sum == 0.0) return 0.0;
  return sum * inv;
}

double forest_relaxed_value(const JointDistribution& dist, double lambda, unsigned k, double guard) {
  if (!dist.is_bipartite()) throw InvalidArgument("forest relaxation needs a bipartite-indexed distribution");
  const double inv = inverse_moment_denominator(lambda, k);
  double sum = 0.0;
  for_each_edge_subset(
      dist.m1(), dist.m2(), k,
      [&](const BipartiteEdgeSet& es) {
        double product = 1.0;
        const BipartiteEdgeSet forest = maximum_spanning_forest(es);
        for (const Edge& e : forest.edges()) product *= dist.marginal(forest.variable(e));
        sum += product;
      },
      guard);
  if (sum == 0.0) return 0.0;
  return sum * inv;
}

std::map<std::size_t, std::uint64_t> partition_by_cycles(std::size_t m1, std::size_t m2, std::size_t k,
                                                         double guard) {
  std::map<std::size_t, std::uint64_t> hist;
  for_each_edge_subset(m1, m2, k, [&](const BipartiteEdgeSet& es) { ++hist[fundamental_cycle_count(es)]; }, guard);
  return hist;
}

CkOracle ck_oracle(std::size_t m1, std::size_t m2, std::size_t k, double guard) {
  if (k == 0) throw InvalidArgument("k must be positive");
  CkOracle out;
  std::map<std::size_t, std::map<std::vector<Edge>, std::uint64_t>> per_forest;
  for_each_edge_subset(
      m1, m2, k,
      [&](const BipartiteEdgeSet& es) {
        const std::size_t s = fundamental_cycle_count(es);
        ++out.histogram[s];
        const BipartiteEdgeSet forest = maximum_spanning_forest(es);
        ++per_forest[s][std::vector<Edge>(forest.edges().begin(), forest.edges().end())];
      },
      guard);
  for (const auto& [s, counts] : per_forest) {
    std::uint64_t best = 0;
    for (const auto& [forest, c] : counts) best = std::max(best, c);
    out.max_per_forest[s] = best;
    out.bk = std::max(out.bk, best);
  }
  const std::uint64_t m = m1 * m2;
  const double all = binomial(m, k);
  double general = 0.0;
  double uniform = 0.0;
  for (const auto& [s, size] : out.histogram) {
    const double weight = std::pow(static_cast<double>(m), static_cast<double>(s));
    general += binomial(m, k - s) * weight;
    uniform += static_cast<double>(size) * weight;
  }
  out.ck = static_cast<double>(out.bk) * general / all;
  out.ck_uniform = uniform / all;
  return out;
}

double elementary_symmetric(std::span<const double> x, std::size_t d) {
  std::vector<double> e(d + 1, 0.0);
  e[0] = 1.0;
  for (double v : x) {
    for (std::size_t j = d; j >= 1; --j) e[j] += e[j - 1] * v;
  }
  return e[d];
}

double lemma5_bound(double n, unsigned k, double theta, double r, double alpha_k) {
  return alpha_k * std::exp2(-n * (static_cast<double>(k) * theta - r));
}

double lemma10_bound(double n, unsigned k, double epsilon, double delta, double gamma_k) {
  const double half = std::floor(k / 2.0);
  const double log2_value = std::log2(gamma_k) + (1.0 + half) * std::log2(10.0 * n) - std::log2(delta) -
                            half * (epsilon / 2.0) * n;
  return std::exp2(log2_value);
}

double theorem1_exponent(unsigned k, double p, double r, double epsilon) {
  return 1.0 + binary_entropy(p) + r - std::floor(k / 2.0) * epsilon / 2.0;
}

double theorem1_log2_bound(double n, unsigned k, double p, double r, double epsilon, double delta, double ck) {
  const double half = std::floor(k / 2.0);
  return std::log2(ck) + (1.0 + half) * std::log2(10.0 * n) - std::log2(delta) +
         theorem1_exponent(k, p, r, epsilon) * n;
}

double theorem1_bound(double n, unsigned k, double p, double r, double epsilon, double delta, double ck) {
  return std::exp2(theorem1_log2_bound(n, k, p, r, epsilon, delta, ck));
}

unsigned theorem1_threshold_k(double p, double r, double epsilon) {
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  const double c = 1.0 + binary_entropy(p) + r;
  // floor(k/2) must strictly exceed 2c / eps. Start from the floating
  // estimate and settle the boundary on the exponent itself.
  auto half = static_cast<unsigned>(std::floor(2.0 * c / epsilon));
  while (half > 0 && theorem1_exponent(2 * half, p, r, epsilon) < 0.0) --half;
  while (theorem1_exponent(2 * half, p, r, epsilon) >= 0.0) ++half;
  return 2 * half;
}

BoundReport empirical_tail(const JointDistribution& dist, double threshold, double bound) {
  BoundReport report;
  report.bound = bound;
  report.exact = true;
  report.empirical = dist.tail(threshold);
  report.ci_low = report.ci_high = report.empirical;
  report.pass = report.empirical <= bound;
  return report;
}

BoundReport empirical_tail(const std::function<double(Rng&)>& sampler, double threshold, double bound,
                           std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) throw InvalidArgument("trials must be at least 1");
  Rng rng(derive_seed(seed, streams::kSampler, 0));
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < trials; ++t) hits += sampler(rng) > threshold;
  BoundReport report;
  report.bound = bound;
  report.trials = trials;
  report.empirical = static_cast<double>(hits) / static_cast<double>(trials);
  report.standard_error = std::sqrt(report.empirical * (1.0 - report.empirical) / static_cast<double>(trials));
  std::tie(report.ci_low, report.ci_high) = wilson_interval(hits, trials);
  report.pass = report.empirical - 3.0 * report.standard_error <= bound;
  return report;
}

}  // namespace pseudolinear
