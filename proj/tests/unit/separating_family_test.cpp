#include <gtest/gtest.h>

#include <pseudolinear/errors.hpp>
#include <pseudolinear/separating_family.hpp>

#include <cmath>
#include <sstream>

using namespace pseudolinear;

namespace {

// Ordered-pair check straight from the definition, one subset at a time.
bool separates_all(const SeparatingFamily& f) {
  for (std::size_t u = 0; u < f.universe_size; ++u) {
    for (std::size_t v = 0; v < f.universe_size; ++v) {
      if (u == v) continue;
      bool found = false;
      for (std::size_t i = 0; i < f.size() && !found; ++i) found = f.contains(i, u) && !f.contains(i, v);
      if (!found) return false;
    }
  }
  return true;
}

}  // namespace

TEST(BuildRandom, SmallUniverseVerifies) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto result = build_random(4, 40, seed);
    ASSERT_TRUE(std::holds_alternative<SeparatingFamily>(result)) << seed;
    const auto& fam = std::get<SeparatingFamily>(result);
    EXPECT_EQ(fam.size(), 40u);
    EXPECT_TRUE(separates_all(fam));
  }
  EXPECT_NEAR(failure_bound(2, 40), 16.0 * std::pow(0.75, 40), 1e-18);
}

TEST(BuildRandom, EmptyFamilyFailsAndSingletonPasses) {
  const auto fail = build_random(4, 0, 3);
  ASSERT_TRUE(std::holds_alternative<SeparationFailure>(fail));
  const auto& report = std::get<SeparationFailure>(fail);
  EXPECT_EQ(report.u, 0u);
  EXPECT_EQ(report.u_prime, 1u);
  EXPECT_TRUE(std::holds_alternative<SeparatingFamily>(build_random(1, 0, 3)));
  EXPECT_TRUE(std::holds_alternative<SeparatingFamily>(build_random(1, 5, 3)));
}

TEST(BuildRandom, Reproducible) {
  const auto a = std::get<SeparatingFamily>(build_random(8, 60, 11));
  const auto b = std::get<SeparatingFamily>(build_random(8, 60, 11));
  EXPECT_EQ(a.subsets, b.subsets);
}

TEST(BuildRandom, FailureReportPointsAtUnseparatedPair) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto result = build_random(16, 6, seed);
    if (const auto* f = std::get_if<SeparationFailure>(&result)) {
      bool separated = false;
      for (std::size_t i = 0; i < f->family.size(); ++i) {
        separated = separated || (f->family.contains(i, f->u) && !f->family.contains(i, f->u_prime));
      }
      EXPECT_FALSE(separated);
      EXPECT_FALSE(separates_all(f->family));
    } else {
      EXPECT_TRUE(separates_all(std::get<SeparatingFamily>(result)));
    }
  }
}

TEST(BuildRandom, EmpiricalFailureRateWithinUnionBound) {
  // Rn = 2 (U = 4) at S = 20: the union bound is about 0.05.
  const unsigned rn = 2;
  const std::size_t s = 20;
  const int trials = 1000;
  int failures = 0;
  for (int seed = 0; seed < trials; ++seed) {
    failures += std::holds_alternative<SeparationFailure>(build_random(4, s, static_cast<std::uint64_t>(seed)));
  }
  const double bound = failure_bound(rn, s);
  EXPECT_NEAR(bound, 16.0 * std::pow(0.75, 20), 1e-15);
  EXPECT_NEAR(bound, 0.0507, 1e-4);
  const double rate = failures / static_cast<double>(trials);
  const double se = std::sqrt(bound * (1.0 - bound) / trials);
  EXPECT_LE(rate, bound + 3.0 * se);
}

TEST(BuildDeterministic, KnownExamples) {
  const auto two = build_deterministic(2);
  EXPECT_EQ(two.size(), 4u);
  EXPECT_EQ(two.universe_size, 4u);
  EXPECT_TRUE(two.contains(0, 0b01));
  EXPECT_FALSE(two.contains(0, 0b10));
  EXPECT_TRUE(two.contains(2, 0b10));
  const auto one = build_deterministic(1);
  EXPECT_EQ(one.size(), 2u);
  EXPECT_TRUE(verify(one));
  EXPECT_THROW(build_deterministic(0), InvalidArgument);
}

TEST(BuildDeterministic, VerifiesExhaustivelyUpToTen) {
  for (unsigned rn = 1; rn <= 10; ++rn) {
    const auto fam = build_deterministic(rn);
    EXPECT_EQ(fam.size(), 2u * rn);
    EXPECT_TRUE(verify(fam)) << rn;
    if (rn <= 6) EXPECT_TRUE(separates_all(fam)) << rn;
  }
}

TEST(Verify, FullSubsetsNeverSeparate) {
  SeparatingFamily fam;
  fam.universe_size = 8;
  BitVector all(8);
  for (std::size_t i = 0; i < 8; ++i) all.set(i);
  fam.subsets.assign(5, all);
  EXPECT_FALSE(verify(fam));
  const auto pair = find_unseparated_pair(fam);
  ASSERT_TRUE(pair.has_value());
  EXPECT_EQ(*pair, (std::pair<std::uint64_t, std::uint64_t>{0, 1}));
}

TEST(Verify, DirectionMatters) {
  // {0} separates (0, 1) but nothing separates (1, 0).
  SeparatingFamily fam;
  fam.universe_size = 2;
  fam.subsets.push_back(BitVector::from_string("10"));
  const auto pair = find_unseparated_pair(fam);
  ASSERT_TRUE(pair.has_value());
  EXPECT_EQ(*pair, (std::pair<std::uint64_t, std::uint64_t>{1, 0}));
}

TEST(Verify, GuardAndShapeChecks) {
  EXPECT_THROW(verify(build_deterministic(10), 1e5), GuardExceeded);
  SeparatingFamily bad;
  bad.universe_size = 4;
  bad.subsets.push_back(BitVector(3));
  EXPECT_THROW(verify(bad), InvalidArgument);
}

TEST(FailureBound, KnownValues) {
  EXPECT_NEAR(failure_bound(2, 20), 0.0507, 1e-4);
  EXPECT_DOUBLE_EQ(failure_bound(3, 0), 64.0);
  EXPECT_LT(failure_bound(2, 80), 1e-8);
}

TEST(FailureBound, TenNSubsetsAlwaysBelowOne) {
  for (unsigned n = 4; n <= 64; ++n) {
    for (unsigned rn = 1; rn <= n; ++rn) ASSERT_LT(failure_bound(rn, 10 * n), 1.0) << n << " " << rn;
  }
}

TEST(Serialization, RoundTrip) {
  const auto fam = std::get<SeparatingFamily>(build_random(32, 70, 4));
  std::stringstream ss;
  write_family(ss, fam);
  const auto back = read_family(ss);
  EXPECT_EQ(back.universe_size, fam.universe_size);
  EXPECT_EQ(back.subsets, fam.subsets);
  std::stringstream bad("separating-family v1\nU 4\nS 2\nf\n");
  EXPECT_THROW(read_family(bad), ParseError);
}
