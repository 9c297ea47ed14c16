#include <gtest/gtest.h>

#include <pseudolinear/combinatorics.hpp>
#include <pseudolinear/confusability.hpp>
#include <pseudolinear/errors.hpp>
#include <pseudolinear/rng.hpp>

#include <algorithm>
#include <cmath>
#include <map>

#include "support/convert.hpp"
#include "support/oracles.hpp"

using namespace pseudolinear;
using testing_support::from_bits;
using testing_support::to_bits;

namespace {

AnalysisContext context(std::size_t n, unsigned rn, unsigned k, std::uint64_t seed, double p, double r,
                        MessageMode mode = MessageMode::ZeroFree) {
  auto cb = std::make_shared<const Codebook>(sample_code(n, rn, k, mode, seed));
  return AnalysisContext(std::move(cb), ChannelParams(n, p, r), build_deterministic(rn));
}

AnalysisContext constant_code_context(std::size_t n, unsigned rn, double p, double r) {
  const PseudolinearCode code(n, rn, 2, MessageMode::ZeroFree, BitMatrix(n, 2 * rn));
  return AnalysisContext(std::make_shared<const Codebook>(code), ChannelParams(n, p, r), build_deterministic(rn));
}

struct Words {
  std::vector<oracle::Bits> x;
  std::vector<Message> msg;
};

Words words_of(const Codebook& cb) {
  Words w;
  for (std::size_t pos = 0; pos < cb.size(); ++pos) {
    w.x.push_back(to_bits(cb.codeword(pos)));
    w.msg.push_back(cb.message(pos));
  }
  return w;
}

oracle::Bits restrict_to(const oracle::Bits& x, const CoordinateSet& z) {
  oracle::Bits out;
  for (std::size_t c : z) out.push_back(x[c]);
  return out;
}

std::vector<Message> oracle_confusable(const Words& w, const oracle::Bits& e, int t) {
  std::vector<Message> out;
  for (std::size_t a = 0; a < w.x.size(); ++a) {
    for (std::size_t b = 0; b < w.x.size(); ++b) {
      if (a != b && oracle::distance(oracle::xor_bits(w.x[a], e), w.x[b]) <= t) {
        out.push_back(w.msg[a]);
        break;
      }
    }
  }
  return out;
}

std::vector<Message> oracle_consistent(const Words& w, const CoordinateSet& z, const oracle::Bits& obs) {
  std::vector<Message> out;
  for (std::size_t a = 0; a < w.x.size(); ++a) {
    if (restrict_to(w.x[a], z) == obs) out.push_back(w.msg[a]);
  }
  return out;
}

std::uint64_t oracle_v(const Words& w, const SeparatingFamily& fam, const std::vector<Message>& consistent,
                       const oracle::Bits& e, int t) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    for (std::size_t a = 0; a < w.x.size(); ++a) {
      const Message u = w.msg[a];
      if (!fam.contains(i, u) || std::find(consistent.begin(), consistent.end(), u) == consistent.end()) continue;
      for (std::size_t b = 0; b < w.x.size(); ++b) {
        if (fam.contains(i, w.msg[b])) continue;
        v += oracle::distance(oracle::xor_bits(w.x[a], e), w.x[b]) <= t;
      }
    }
  }
  return v;
}

std::vector<CoordinateSet> all_subsets(std::size_t n, std::size_t size) {
  std::vector<CoordinateSet> out;
  for_each_combination(n, size, [&](std::span<const std::size_t> idx) {
    out.emplace_back(idx.begin(), idx.end());
    return true;
  });
  return out;
}

}  // namespace

TEST(AnalysisContext, FamilyMustMatchMessageSpace) {
  auto cb = std::make_shared<const Codebook>(sample_code(8, 3, 2, MessageMode::ZeroFree, 1));
  EXPECT_THROW(AnalysisContext(cb, ChannelParams(8, 0.1, 0.25), build_deterministic(4)), InvalidArgument);
  EXPECT_THROW(AnalysisContext(cb, ChannelParams(9, 0.1, 0.25), build_deterministic(3)), InvalidArgument);
  EXPECT_NO_THROW(AnalysisContext(cb, ChannelParams(8, 0.1, 0.25), build_deterministic(3)));
}

TEST(ConfusableSet, FarApartCodewordsGiveEmptySet) {
  // Sample until the minimum distance exceeds twice the budget.
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto ctx = context(24, 3, 2, seed, 0.05, 0.25);
    if (ctx.codebook().minimum_distance() <= 2 * ctx.params().flip_budget()) continue;
    Rng rng(seed);
    for (int i = 0; i < 20; ++i) {
      BitVector e(24);
      e.set(uniform_below(rng, 24));
      EXPECT_TRUE(confusable_set(ctx, e).empty());
    }
    return;
  }
  FAIL() << "no well-separated code found";
}

TEST(ConfusableSet, IdenticalCodewordsAlwaysConfused) {
  const auto ctx = constant_code_context(6, 3, 0.2, 0.34);
  Rng rng(1);
  for (int i = 0; i < 10; ++i) {
    BitVector e(6);
    e.set(uniform_below(rng, 6));
    EXPECT_EQ(confusable_set(ctx, e).size(), 7u);
  }
  EXPECT_THROW(confusable_set(ctx, BitVector::from_string("110000")), InvalidArgument);
  EXPECT_THROW(confusable_set(ctx, BitVector(5)), InvalidArgument);
}

TEST(ConfusableSet, MatchesDoubleLoopOracle) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto ctx = context(8, 4, 2, seed, 0.25, 0.25);
    const Words w = words_of(ctx.codebook());
    const int t = static_cast<int>(ctx.params().flip_budget());
    for (const auto& e : oracle::ball(8, t)) {
      ASSERT_EQ(confusable_set(ctx, from_bits(e)), oracle_confusable(w, e, t));
    }
  }
}

TEST(ConsistencySet, ExtremesAndPartition) {
  const auto none = context(10, 4, 3, 5, 0.1, 0.0);
  EXPECT_EQ(consistency_set(none, {}, BitVector(0)).size(), 15u);

  const auto full = context(10, 4, 3, 5, 0.1, 1.0);
  CoordinateSet all(10);
  for (std::size_t i = 0; i < 10; ++i) all[i] = i;
  std::map<std::string, int> seen;
  for (Message u = 1; u < 16; ++u) ++seen[full.codebook().codeword_of(u).to_string()];
  for (Message u = 1; u < 16; ++u) {
    const auto o = consistency_set(full, all, full.codebook().codeword_of(u));
    if (seen[full.codebook().codeword_of(u).to_string()] == 1) EXPECT_EQ(o, std::vector<Message>{u});
  }

  const auto ctx = context(9, 4, 2, 6, 0.2, 0.34);
  const Words w = words_of(ctx.codebook());
  for (const auto& z : all_subsets(9, 3)) {
    const auto bins = consistency_bins(ctx, z);
    std::size_t total = 0;
    for (const auto& [key, msgs] : bins) {
      total += msgs.size();
      EXPECT_EQ(msgs, oracle_consistent(w, z, to_bits(BitVector::from_string(key))));
      EXPECT_EQ(msgs, consistency_set(ctx, z, BitVector::from_string(key)));
    }
    EXPECT_EQ(total, ctx.codebook().size());
  }
  EXPECT_THROW(consistency_set(ctx, {0, 1}, BitVector(2)), InvalidArgument);
}

TEST(VSum, MatchesTripleLoopOracleAndBoundsConfusedConsistentSet) {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto ctx = context(8, 3, 2, seed, 0.25, 0.25);
    const Words w = words_of(ctx.codebook());
    const int t = static_cast<int>(ctx.params().flip_budget());
    const auto ball = oracle::ball(8, t);
    for (const auto& z : all_subsets(8, 2)) {
      for (const auto& [key, msgs] : consistency_bins(ctx, z)) {
        const BitVector obs = BitVector::from_string(key);
        for (const auto& e : ball) {
          const VSum v = v_sum(ctx, z, obs, from_bits(e));
          ASSERT_EQ(v.total, oracle_v(w, ctx.family(), msgs, e, t));
          std::uint64_t sum = 0;
          for (auto c : v.components) sum += c;
          ASSERT_EQ(sum, v.total);
          const auto a = oracle_confusable(w, e, t);
          std::size_t both = 0;
          for (Message u : msgs) both += std::binary_search(a.begin(), a.end(), u);
          ASSERT_GE(v.total, both);
        }
      }
    }
  }
}

TEST(VSum, ZeroWhenNothingReachable) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto ctx = context(24, 3, 2, seed, 0.05, 0.25);
    if (ctx.codebook().minimum_distance() <= 2 * ctx.params().flip_budget()) continue;
    const CoordinateSet z{0, 1, 2, 3, 4, 5};
    const BitVector e = BitVector::from_string("100000000000000000000000");
    EXPECT_EQ(v_sum(ctx, z, observe(ctx.codebook(), 1, z), e).total, 0u);
    return;
  }
  FAIL() << "no well-separated code found";
}

TEST(SufficientCondition, VacuousForLargeDelta) {
  const auto ctx = context(8, 3, 2, 1, 0.25, 0.25);
  // |U| 2^-(Rn - read) = 7 / 2.
  const auto result = check_sufficient_condition(ctx, 3.5);
  EXPECT_TRUE(result.holds);
  EXPECT_TRUE(result.exhaustive);
  EXPECT_DOUBLE_EQ(result.bound, 3.5 * 2.0);
  EXPECT_GT(result.triples_checked, 0u);
}

TEST(SufficientCondition, DuplicatedCodewordsFailWithWitness) {
  const auto ctx = constant_code_context(6, 3, 0.2, 0.34);
  const auto result = check_sufficient_condition(ctx, 0.01);
  EXPECT_FALSE(result.holds);
  ASSERT_TRUE(result.witness.has_value());
  EXPECT_EQ(result.witness->count, 7u);
  EXPECT_EQ(result.witness->z_set.size(), 2u);
  EXPECT_LE(result.witness->error.weight(), 1u);
  const auto sampled = check_sufficient_condition_sampled(ctx, 0.01, 10, 2);
  EXPECT_FALSE(sampled.holds);
  EXPECT_FALSE(sampled.exhaustive);
}

TEST(SufficientCondition, AgreesWithExhaustiveOracle) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto ctx = context(7, 3, 2, seed, 0.15, 0.15);
    const Words w = words_of(ctx.codebook());
    const int t = static_cast<int>(ctx.params().flip_budget());
    std::size_t worst = 0;
    for (const auto& z : all_subsets(7, ctx.params().read_size())) {
      for (const auto& e : oracle::ball(7, t)) {
        const auto a = oracle_confusable(w, e, t);
        std::map<oracle::Bits, std::size_t> per_bin;
        for (std::size_t pos = 0; pos < w.x.size(); ++pos) {
          per_bin[restrict_to(w.x[pos], z)] += std::binary_search(a.begin(), a.end(), w.msg[pos]);
        }
        for (const auto& [obs, c] : per_bin) worst = std::max(worst, c);
      }
    }
    for (double delta : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      const auto result = check_sufficient_condition(ctx, delta);
      EXPECT_EQ(result.holds, static_cast<double>(worst) <= result.bound) << seed << " " << delta;
    }
  }
  EXPECT_THROW(check_sufficient_condition(context(20, 4, 2, 0, 0.2, 0.5), 0.1, 1e6), GuardExceeded);
}

TEST(EventH, ThresholdExtremes) {
  const auto ctx = context(10, 4, 2, 2, 0.1, 0.3);
  const CoordinateSet z{0, 4, 9};
  // 2^(4 - 3 + 10 theta) >= 15 once theta >= 0.29.
  EXPECT_FALSE(event_h_holds(ctx, z, 0.3));
  const auto blind = context(10, 4, 2, 2, 0.1, 0.0);
  // With nothing read the single bin holds all 15 messages, so H needs a
  // threshold below that, i.e. a negative slack.
  EXPECT_DOUBLE_EQ(event_h_threshold(blind, 0.0), 16.0);
  EXPECT_FALSE(event_h_holds(blind, {}, 0.0));
  EXPECT_TRUE(event_h_holds(blind, {}, -0.1));
  EXPECT_DOUBLE_EQ(event_h_threshold(ctx, 0.1), 4.0);
}

TEST(EventH, MatchesBinningOracle) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto ctx = context(9, 4, 2, seed, 0.1, 0.34);
    const Words w = words_of(ctx.codebook());
    for (double theta : {0.0, 0.05, 0.1, 0.2}) {
      const double threshold = std::exp2(4.0 - 3.0 + theta * 9.0);
      for (const auto& z : all_subsets(9, 3)) {
        std::map<oracle::Bits, std::size_t> bins;
        for (const auto& x : w.x) ++bins[restrict_to(x, z)];
        bool want = false;
        for (const auto& [obs, c] : bins) want = want || static_cast<double>(c) > threshold;
        ASSERT_EQ(event_h_holds(ctx, z, theta), want);
      }
    }
    EXPECT_EQ(event_h_holds(ctx, {1, 2, 3}), event_h_holds(ctx, {1, 2, 3}, ctx.params().theta()));
  }
}

TEST(Entropy, KnownValues) {
  EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
  EXPECT_DOUBLE_EQ(binary_entropy(0.0), 0.0);
  EXPECT_DOUBLE_EQ(binary_entropy(1.0), 0.0);
  EXPECT_NEAR(binary_entropy(0.11), 0.499916, 1e-6);
  EXPECT_NEAR(capacity(0.11), 0.5, 1e-3);
  EXPECT_THROW(binary_entropy(-0.1), InvalidArgument);
  EXPECT_THROW(binary_entropy(1.1), InvalidArgument);
  for (double x = 0.01; x < 1.0; x += 0.01) EXPECT_NEAR(binary_entropy(x), oracle::entropy(x), 1e-12);
  EXPECT_TRUE(less_noisy(0.1, 0.5));
  EXPECT_FALSE(less_noisy(0.1, 0.54));
  EXPECT_FALSE(less_noisy(0.5, 0.0));
}

TEST(HammingBall, VolumesAndEntropyBound) {
  EXPECT_EQ(hamming_ball_volume(3, 1), 4u);
  EXPECT_NEAR(entropy_bound(3, 1), 6.75, 1e-12);
  EXPECT_EQ(hamming_ball_volume(7, 0), 1u);
  EXPECT_EQ(hamming_ball_volume(10, 10), 1024u);
  EXPECT_EQ(hamming_ball_volume(62, 62), std::uint64_t{1} << 62);
  EXPECT_DOUBLE_EQ(entropy_bound(0, 0), 1.0);
  EXPECT_THROW(hamming_ball_volume(63, 1), InvalidArgument);
  EXPECT_THROW(hamming_ball_volume(4, 5), InvalidArgument);
  for (unsigned q = 1; q <= 20; ++q) {
    for (unsigned t = 0; t <= q; ++t) {
      std::uint64_t want = 0;
      for (unsigned j = 0; j <= t; ++j) want += oracle::choose(q, j);
      EXPECT_EQ(hamming_ball_volume(q, t), want);
      if (2 * t <= q) EXPECT_LE(static_cast<double>(want), entropy_bound(q, t) * (1 + 1e-12));
    }
  }
}

TEST(Exponent, IdentityAtPeak) {
  const auto check = exponent_max_check(100, 0.1, 0.2, 0.05, 0.0125);
  EXPECT_TRUE(check.identity_ok) << check.identity_error;
  EXPECT_LT(check.identity_error, 1e-9);
  EXPECT_TRUE(check.argmax_ok);
  EXPECT_TRUE(check.concave);
  EXPECT_TRUE(check.ok());
  EXPECT_DOUBLE_EQ(check.peak, 2.0);
}

TEST(Exponent, ArgmaxAtZeroTheta) {
  for (double r : {0.1, 0.2, 0.3}) {
    const auto check = exponent_max_check(200, 0.08, r, 0.02, 0.0, 2000);
    EXPECT_TRUE(check.argmax_ok) << r;
    EXPECT_NEAR(check.grid_argmax, check.peak, check.grid_step + 1e-12);
  }
}

TEST(Exponent, ConcaveOnRandomLessNoisyParameters) {
  Rng rng(404);
  int tested = 0;
  while (tested < 20) {
    const double p = 0.01 + 0.3 * uniform_unit(rng);
    const double r = 0.05 + 0.9 * uniform_unit(rng);
    if (!less_noisy(p, r)) continue;
    const double eps = 0.01 + 0.05 * uniform_unit(rng);
    const double n = 50.0 + std::floor(200.0 * uniform_unit(rng));
    const auto check = exponent_max_check(n, p, r, eps, eps / 4.0, 1000);
    EXPECT_TRUE(check.concave) << p << " " << r << " " << check.max_second_difference;
    EXPECT_TRUE(check.identity_ok) << check.identity_error;
    // Midpoint concavity on random triples.
    const double upper = std::min(p * n, r * n);
    for (int i = 0; i < 10; ++i) {
      const double a = upper * uniform_unit(rng);
      const double b = upper * uniform_unit(rng);
      const double mid = exponent_e((a + b) / 2, n, check.rate, r, p, eps / 4);
      const double avg = (exponent_e(a, n, check.rate, r, p, eps / 4) + exponent_e(b, n, check.rate, r, p, eps / 4)) / 2;
      EXPECT_GE(mid, avg - 1e-9);
    }
    ++tested;
  }
}

TEST(Exponent, LimitConventions) {
  // r = 0 drops the read term; r = 1 drops the unread one.
  const double n = 40;
  const double p = 0.1;
  const double at_zero = exponent_e(0, n, 0.4, 0.0, p, 0.0);
  EXPECT_NEAR(at_zero, 2 * 0.4 * n - n * (1 - oracle::entropy(p)), 1e-9);
  const double at_one = exponent_e(4, n, 0.4, 1.0, p, 0.0);
  EXPECT_NEAR(at_one, n * oracle::entropy(0.1) + 2 * (0.4 - 1.0) * n, 1e-9);
}

TEST(ConditionalUnobserved, PairStaysUniformGivenObservation) {
  const std::vector<Message> msgs{1, 2};
  const CoordinateSet z{0};
  for (std::uint64_t a = 0; a < 4; ++a) {
    const std::vector<BitVector> obs{BitVector::from_word(a & 1U, 1), BitVector::from_word(a >> 1, 1)};
    const auto dist = conditional_unobserved_distribution(2, 2, 2, MessageMode::ZeroFree, z, msgs, obs);
    EXPECT_EQ(dist.m1(), 2u);
    EXPECT_EQ(dist.m2(), 1u);
    EXPECT_EQ(dist.outcomes().size(), 4u);
    for (const auto& o : dist.outcomes()) EXPECT_DOUBLE_EQ(o.probability, 0.25);
  }
  const std::vector<BitVector> wrong{BitVector(1)};
  EXPECT_THROW(conditional_unobserved_distribution(2, 2, 2, MessageMode::ZeroFree, z, msgs, wrong),
               InvalidArgument);
  const std::vector<BitVector> full{BitVector(2), BitVector(2)};
  EXPECT_THROW(conditional_unobserved_distribution(2, 2, 2, MessageMode::ZeroFree, {0, 1}, msgs, full),
               InvalidArgument);
}
