#include "pseudolinear/independence_lab.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>

#include "pseudolinear/combinatorics.hpp"
#include "pseudolinear/errors.hpp"

namespace pseudolinear {

BipartiteEdgeSet::BipartiteEdgeSet(std::size_t m1, std::size_t m2, std::vector<Edge> edges)
    : m1_(m1), m2_(m2), edges_(std::move(edges)) {
  for (const Edge& e : edges_) {
    if (e.left >= m1_ || e.right >= m2_) throw InvalidArgument("edge endpoint out of range");
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw InvalidArgument("duplicate edge");
  }
}

std::vector<std::size_t> BipartiteEdgeSet::variables() const {
  std::vector<std::size_t> out;
  out.reserve(edges_.size());
  for (const Edge& e : edges_) out.push_back(variable(e));
  return out;
}

DisjointSets::DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t DisjointSets::find(std::size_t x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool DisjointSets::unite(std::size_t x, std::size_t y) {
  x = find(x);
  y = find(y);
  if (x == y) return false;
  if (size_[x] < size_[y]) std::swap(x, y);
  parent_[y] = x;
  size_[x] += size_[y];
  return true;
}

bool is_forest(const BipartiteEdgeSet& es) {
  DisjointSets ds(es.m1() + es.m2());
  for (const Edge& e : es.edges()) {
    if (!ds.unite(e.left, es.m1() + e.right)) return false;
  }
  return true;
}

void for_each_edge_subset(std::size_t m1, std::size_t m2, std::size_t k,
                          const std::function<void(const BipartiteEdgeSet&)>& visit, double guard) {
  const std::size_t total = m1 * m2;
  const double subsets = binomial(total, k);
  if (subsets > guard) throw GuardExceeded("too many edge subsets to enumerate", subsets, guard);
  for_each_combination(total, k, [&](std::span<const std::size_t> idx) {
    std::vector<Edge> edges;
    edges.reserve(idx.size());
    for (std::size_t e : idx) edges.push_back({e / m2, e % m2});
    visit(BipartiteEdgeSet(m1, m2, std::move(edges)));
    return true;
  });
}

void for_each_forest(std::size_t m1, std::size_t m2, std::size_t k,
                     const std::function<void(const BipartiteEdgeSet&)>& visit, double guard) {
  for_each_edge_subset(
      m1, m2, k,
      [&](const BipartiteEdgeSet& es) {
        if (is_forest(es)) visit(es);
      },
      guard);
}

std::vector<BipartiteEdgeSet> enumerate_forests(std::size_t m1, std::size_t m2, std::size_t k, double guard) {
  std::vector<BipartiteEdgeSet> out;
  for_each_forest(m1, m2, k, [&](const BipartiteEdgeSet& es) { out.push_back(es); }, guard);
  return out;
}

BipartiteEdgeSet maximum_spanning_forest(const BipartiteEdgeSet& es) {
  DisjointSets ds(es.m1() + es.m2());
  std::vector<Edge> kept;
  for (const Edge& e : es.edges()) {
    if (ds.unite(e.left, es.m1() + e.right)) kept.push_back(e);
  }
  return BipartiteEdgeSet(es.m1(), es.m2(), std::move(kept));
}

std::size_t fundamental_cycle_count(const BipartiteEdgeSet& es) {
  const std::size_t vertices = es.m1() + es.m2();
  DisjointSets ds(vertices);
  std::vector<bool> touched(vertices, false);
  for (const Edge& e : es.edges()) {
    touched[e.left] = true;
    touched[es.m1() + e.right] = true;
    ds.unite(e.left, es.m1() + e.right);
  }
  std::size_t non_isolated = 0;
  std::size_t components = 0;
  for (std::size_t v = 0; v < vertices; ++v) {
    if (!touched[v]) continue;
    ++non_isolated;
    if (ds.find(v) == v) ++components;
  }
  return es.size() - non_isolated + components;
}

JointDistribution::JointDistribution(std::size_t variables, std::size_t m1, std::size_t m2,
                                     std::vector<std::pair<std::uint64_t, double>> table)
    : variables_(variables), m1_(m1), m2_(m2), marginals_(variables, 0.0) {
  if (variables > 64) throw InvalidArgument("joint distributions support at most 64 variables");
  const std::uint64_t support_mask = variables == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << variables) - 1;
  std::map<std::uint64_t, double> merged;
  double total = 0.0;
  for (const auto& [assignment, p] : table) {
    if ((assignment & ~support_mask) != 0) throw InvalidArgument("outcome outside the variable range");
    if (!(p >= 0.0)) throw InvalidArgument("probabilities must be non-negative");
    merged[assignment] += p;
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidArgument("probabilities must sum to 1");
  outcomes_.reserve(merged.size());
  for (const auto& [assignment, p] : merged) {
    if (p == 0.0) continue;
    outcomes_.push_back({assignment, p});
    for (std::size_t v = 0; v < variables_; ++v) {
      if ((assignment >> v) & 1U) marginals_[v] += p;
    }
  }
}

JointDistribution JointDistribution::flat(std::size_t variables,
                                          std::vector<std::pair<std::uint64_t, double>> table) {
  return JointDistribution(variables, 0, 0, std::move(table));
}

JointDistribution JointDistribution::bipartite(std::size_t m1, std::size_t m2,
                                               std::vector<std::pair<std::uint64_t, double>> table) {
  if (m1 == 0 || m2 == 0) throw InvalidArgument("bipartite parts must be non-empty");
  return JointDistribution(m1 * m2, m1, m2, std::move(table));
}

double JointDistribution::marginal(std::size_t v) const {
  if (v >= variables_) throw InvalidArgument("variable index out of range");
  return marginals_[v];
}

std::vector<double> JointDistribution::projection(std::span<const std::size_t> vars) const {
  if (vars.size() > 24) throw InvalidArgument("projection onto more than 24 variables");
  for (std::size_t v : vars) {
    if (v >= variables_) throw InvalidArgument("variable index out of range");
  }
  std::vector<double> p(std::size_t{1} << vars.size(), 0.0);
  for (const Outcome& o : outcomes_) {
    std::size_t a = 0;
    for (std::size_t i = 0; i < vars.size(); ++i) a |= ((o.assignment >> vars[i]) & 1U) << i;
    p[a] += o.probability;
  }
  return p;
}

double JointDistribution::all_ones(std::span<const std::size_t> vars) const {
  std::uint64_t mask = 0;
  for (std::size_t v : vars) {
    if (v >= variables_) throw InvalidArgument("variable index out of range");
    mask |= std::uint64_t{1} << v;
  }
  double p = 0.0;
  for (const Outcome& o : outcomes_) {
    if ((o.assignment & mask) == mask) p += o.probability;
  }
  return p;
}

double JointDistribution::mean_sum() const { return std::accumulate(marginals_.begin(), marginals_.end(), 0.0); }

double JointDistribution::tail(double threshold) const {
  double p = 0.0;
  for (const Outcome& o : outcomes_) {
    if (static_cast<double>(std::popcount(o.assignment)) > threshold) p += o.probability;
  }
  return p;
}

IndependenceVerdict test_mutually_independent(const JointDistribution& dist, std::span<const std::size_t> vars,
                                              double tolerance) {
  const std::vector<double> joint = dist.projection(vars);
  for (std::size_t a = 0; a < joint.size(); ++a) {
    double product = 1.0;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      const double p1 = dist.marginal(vars[i]);
      product *= ((a >> i) & 1U) ? p1 : 1.0 - p1;
    }
    if (std::abs(joint[a] - product) > tolerance) {
      IndependenceWitness w;
      w.variables.assign(vars.begin(), vars.end());
      w.assignment = a;
      w.lhs = joint[a];
      w.rhs = product;
      return {false, std::move(w)};
    }
  }
  return {};
}

IndependenceVerdict test_kwise_independent(const JointDistribution& dist, std::size_t k, double tolerance) {
  if (k == 0 || k > dist.variables()) throw InvalidArgument("k must be in [1, #variables]");
  IndependenceVerdict verdict;
  for_each_combination(dist.variables(), k, [&](std::span<const std::size_t> vars) {
    verdict = test_mutually_independent(dist, vars, tolerance);
    return verdict.holds;
  });
  return verdict;
}

IndependenceVerdict test_kwise_ioef(const JointDistribution& dist, std::size_t k, double tolerance, double guard) {
  if (!dist.is_bipartite()) throw InvalidArgument("IOEF test needs a bipartite-indexed distribution");
  IndependenceVerdict verdict;
  for_each_forest(
      dist.m1(), dist.m2(), k,
      [&](const BipartiteEdgeSet& forest) {
        if (!verdict.holds) return;
        const std::vector<std::size_t> vars = forest.variables();
        verdict = test_mutually_independent(dist, vars, tolerance);
        if (!verdict.holds) verdict.witness->edges.assign(forest.edges().begin(), forest.edges().end());
      },
      guard);
  return verdict;
}

JointDistribution xor_family(std::size_t m1, std::size_t m2) {
  if (m1 == 0 || m2 == 0) throw InvalidArgument("xor_family parts must be non-empty");
  if (m1 + m2 > 20) throw InvalidArgument("xor_family requires M1 + M2 <= 20");
  if (m1 * m2 > 64) throw InvalidArgument("xor_family requires M1 * M2 <= 64");
  const std::uint64_t seeds = std::uint64_t{1} << (m1 + m2);
  const double weight = 1.0 / static_cast<double>(seeds);
  std::vector<std::pair<std::uint64_t, double>> table;
  table.reserve(seeds);
  for (std::uint64_t s = 0; s < seeds; ++s) {
    std::uint64_t assignment = 0;
    for (std::size_t i = 0; i < m1; ++i) {
      for (std::size_t j = 0; j < m2; ++j) {
        const std::uint64_t bit = ((s >> i) ^ (s >> (m1 + j))) & 1U;
        assignment |= bit << (i * m2 + j);
      }
    }
    table.emplace_back(assignment, weight);
  }
  return JointDistribution::bipartite(m1, m2, std::move(table));
}

}  // namespace pseudolinear
