#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace pseudolinear {

/// Edge (i, j) of a bipartite graph, i in V1 = [0, M1) and j in V2 = [0, M2).
struct Edge {
  std::size_t left = 0;
  std::size_t right = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Edge subset of V1 x V2, kept sorted lexicographically and duplicate-free.
class BipartiteEdgeSet {
 public:
  BipartiteEdgeSet(std::size_t m1, std::size_t m2, std::vector<Edge> edges = {});

  std::size_t m1() const noexcept { return m1_; }
  std::size_t m2() const noexcept { return m2_; }
  std::size_t size() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  /// Edge (i, j) <-> variable index i * M2 + j.
  std::size_t variable(const Edge& e) const noexcept { return e.left * m2_ + e.right; }
  std::vector<std::size_t> variables() const;

  friend bool operator==(const BipartiteEdgeSet&, const BipartiteEdgeSet&) = default;

 private:
  std::size_t m1_;
  std::size_t m2_;
  std::vector<Edge> edges_;
};

/// Union-find with path halving and union by size.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n);
  std::size_t find(std::size_t x);
  /// Returns false when x and y were already in one set.
  bool unite(std::size_t x, std::size_t y);

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

bool is_forest(const BipartiteEdgeSet& es);

inline constexpr double kDefaultEdgeSubsetGuard = 1e7;

/// Visits every k-edge subset of V1 x V2 in lexicographic order.
void for_each_edge_subset(std::size_t m1, std::size_t m2, std::size_t k,
                          const std::function<void(const BipartiteEdgeSet&)>& visit,
                          double guard = kDefaultEdgeSubsetGuard);

/// Visits the acyclic k-edge subsets only.
void for_each_forest(std::size_t m1, std::size_t m2, std::size_t k,
                     const std::function<void(const BipartiteEdgeSet&)>& visit,
                     double guard = kDefaultEdgeSubsetGuard);

std::vector<BipartiteEdgeSet> enumerate_forests(std::size_t m1, std::size_t m2, std::size_t k,
                                                double guard = kDefaultEdgeSubsetGuard);

/// Kruskal over the edges in lexicographic order: the first edge closing a
/// cycle is dropped. Deterministic.
BipartiteEdgeSet maximum_spanning_forest(const BipartiteEdgeSet& es);

/// |E| - |non-isolated vertices| + #components.
std::size_t fundamental_cycle_count(const BipartiteEdgeSet& es);

/// Exact law of a family of binary variables.
///
/// An outcome is a bitmask whose bit v is the value of variable v. Bipartite
/// families index variable (i, j) as i * M2 + j. Exact fixtures store dyadic
/// probabilities, which doubles represent exactly.
class JointDistribution {
 public:
  struct Outcome {
    std::uint64_t assignment;
    double probability;
  };

  static JointDistribution flat(std::size_t variables, std::vector<std::pair<std::uint64_t, double>> table);
  static JointDistribution bipartite(std::size_t m1, std::size_t m2,
                                     std::vector<std::pair<std::uint64_t, double>> table);

  std::size_t variables() const noexcept { return variables_; }
  bool is_bipartite() const noexcept { return m1_ != 0; }
  std::size_t m1() const noexcept { return m1_; }
  std::size_t m2() const noexcept { return m2_; }
  std::size_t variable(std::size_t i, std::size_t j) const noexcept { return i * m2_ + j; }
  std::span<const Outcome> outcomes() const noexcept { return outcomes_; }

  /// P(X_v = 1).
  double marginal(std::size_t v) const;
  /// P(X_{vars[i]} = bit i of assignment, for all i), for every assignment;
  /// entry a of the result holds assignment a.
  std::vector<double> projection(std::span<const std::size_t> vars) const;
  /// E[prod_{v in vars} X_v].
  double all_ones(std::span<const std::size_t> vars) const;
  /// E[sum_v X_v].
  double mean_sum() const;
  /// P(sum_v X_v > threshold).
  double tail(double threshold) const;

 private:
  JointDistribution(std::size_t variables, std::size_t m1, std::size_t m2,
                    std::vector<std::pair<std::uint64_t, double>> table);

  std::size_t variables_;
  std::size_t m1_;
  std::size_t m2_;
  std::vector<Outcome> outcomes_;
  std::vector<double> marginals_;
};

inline constexpr double kIndependenceTolerance = 1e-9;

/// Where a factorization check failed: joint probability `lhs` of the
/// assignment versus the product of marginals `rhs`.
struct IndependenceWitness {
  std::vector<std::size_t> variables;
  std::vector<Edge> edges;
  std::uint64_t assignment = 0;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct IndependenceVerdict {
  bool holds = true;
  std::optional<IndependenceWitness> witness;
  explicit operator bool() const noexcept { return holds; }
};

/// Mutual independence of the selected variables.
IndependenceVerdict test_mutually_independent(const JointDistribution& dist, std::span<const std::size_t> vars,
                                              double tolerance = kIndependenceTolerance);

/// Every k-subset of variables mutually independent.
IndependenceVerdict test_kwise_independent(const JointDistribution& dist, std::size_t k,
                                           double tolerance = kIndependenceTolerance);

/// Every k-edge forest's variables mutually independent. Requires a
/// bipartite-indexed distribution.
IndependenceVerdict test_kwise_ioef(const JointDistribution& dist, std::size_t k,
                                    double tolerance = kIndependenceTolerance,
                                    double guard = kDefaultEdgeSubsetGuard);

/// V_{i,j} = X_i xor Y_j over independent fair bits X_i, Y_j.
JointDistribution xor_family(std::size_t m1, std::size_t m2);

}  // namespace pseudolinear
