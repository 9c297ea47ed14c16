#include "pseudolinear/awtc.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "pseudolinear/combinatorics.hpp"
#include "pseudolinear/entropy.hpp"
#include "pseudolinear/errors.hpp"

namespace pseudolinear {

namespace {

std::size_t floored_budget(double fraction, std::size_t n) {
  return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n) + 1e-9));
}

}  // namespace

ChannelParams::ChannelParams(std::size_t n, double p, double r, double delta, double epsilon,
                             std::optional<double> theta)
    : n_(n), p_(p), r_(r), delta_(delta), epsilon_(epsilon), theta_(theta.value_or(epsilon / 4.0)) {
  if (n == 0) throw InvalidArgument("blocklength n must be positive");
  if (!(p >= 0.0 && p < 0.5)) throw InvalidArgument("p must be in [0, 1/2)");
  if (!(r >= 0.0 && r <= 1.0)) throw InvalidArgument("r must be in [0, 1]");
  if (!(delta > 0.0)) throw InvalidArgument("delta must be positive");
  if (!(epsilon >= 0.0)) throw InvalidArgument("epsilon must be non-negative");
  if (!(theta_ >= 0.0)) throw InvalidArgument("theta must be non-negative");
  flip_budget_ = std::min(floored_budget(p, n), n);
  read_size_ = std::min(floored_budget(r, n), n);
}

bool ChannelParams::less_noisy() const noexcept { return pseudolinear::less_noisy(p_, r_); }

void validate_coordinate_set(const ChannelParams& params, const CoordinateSet& z_set) {
  if (z_set.size() != params.read_size()) {
    throw InvalidArgument("coordinate set has " + std::to_string(z_set.size()) + " entries, expected " +
                          std::to_string(params.read_size()));
  }
  for (std::size_t i = 0; i < z_set.size(); ++i) {
    if (z_set[i] >= params.n()) throw InvalidArgument("coordinate out of range");
    if (i > 0 && z_set[i] <= z_set[i - 1]) throw InvalidArgument("coordinate set must be strictly increasing");
  }
}

namespace {

void validate_coordinates(std::size_t n, const CoordinateSet& z_set) {
  for (std::size_t i = 0; i < z_set.size(); ++i) {
    if (z_set[i] >= n) throw InvalidArgument("coordinate out of range");
    if (i > 0 && z_set[i] <= z_set[i - 1]) throw InvalidArgument("coordinate set must be strictly increasing");
  }
}

}  // namespace

BitVector observe(const Codebook& codebook, Message u, const CoordinateSet& z_set) {
  validate_coordinates(codebook.n(), z_set);
  return codebook.codeword_of(u).select(z_set);
}

BitVector observe(const PseudolinearCode& code, Message u, const CoordinateSet& z_set) {
  validate_coordinates(code.n(), z_set);
  return code.encode(u).select(z_set);
}

std::string_view to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::ObliviousRandom:
      return "oblivious-random";
    case StrategyKind::MyopicGreedy:
      return "myopic-greedy";
    case StrategyKind::ExhaustiveWorstCase:
      return "exhaustive-worst-case";
  }
  return "unknown";
}

StrategyKind parse_strategy_kind(std::string_view text) {
  if (text == "oblivious-random") return StrategyKind::ObliviousRandom;
  if (text == "myopic-greedy") return StrategyKind::MyopicGreedy;
  if (text == "exhaustive-worst-case") return StrategyKind::ExhaustiveWorstCase;
  throw InvalidArgument("unknown strategy '" + std::string(text) + "'");
}

AdversaryStrategy::AdversaryStrategy(std::shared_ptr<const Codebook> codebook, ChannelParams params)
    : codebook_(std::move(codebook)), params_(params) {
  if (!codebook_) throw InvalidArgument("strategy needs a codebook");
  if (codebook_->n() != params_.n()) throw InvalidArgument("channel blocklength differs from the code's");
}

BitVector ObliviousRandom::attack(const CoordinateSet&, const BitVector&, Rng& rng) const {
  BitVector e(params().n());
  for (std::size_t c : random_subset(rng, params().n(), params().flip_budget())) e.set(c);
  return e;
}

std::vector<Message> consistent_messages(const Codebook& codebook, const CoordinateSet& z_set, const BitVector& z) {
  validate_coordinates(codebook.n(), z_set);
  if (z.size() != z_set.size()) throw InvalidArgument("observation length differs from |Z|");
  std::vector<Message> out;
  for (std::size_t pos = 0; pos < codebook.size(); ++pos) {
    if (codebook.codeword(pos).select(z_set) == z) out.push_back(codebook.message(pos));
  }
  return out;
}

namespace {

/// For each consistent message u, the codewords within 2t of X(u), stored as
/// difference vectors X(u) xor X(u'). Both attack objectives over a
/// weight-<=t error only ever involve these neighbours.
class NeighbourTable {
 public:
  NeighbourTable(const Codebook& cb, const std::vector<std::size_t>& positions, std::size_t t)
      : stride_(cb.words_per_codeword()) {
    offsets_.reserve(positions.size() + 1);
    offsets_.push_back(0);
    for (std::size_t pos : positions) {
      const auto x = cb.words(pos);
      for (std::size_t other = 0; other < cb.size(); ++other) {
        if (other == pos) continue;
        const auto y = cb.words(other);
        if (hamming_distance(x, y) > 2 * t) continue;
        for (std::size_t w = 0; w < stride_; ++w) diffs_.push_back(x[w] ^ y[w]);
        earlier_.push_back(other < pos);
      }
      offsets_.push_back(earlier_.size());
    }
  }

  std::size_t messages() const noexcept { return offsets_.size() - 1; }

  struct Outcome {
    bool confused = false;
    bool misdecoded = false;
  };

  Outcome evaluate(std::size_t i, std::span<const BitVector::Word> e, std::size_t weight, std::size_t t) const {
    Outcome out;
    for (std::size_t j = offsets_[i]; j < offsets_[i + 1]; ++j) {
      std::size_t dist = 0;
      const BitVector::Word* d = diffs_.data() + j * stride_;
      for (std::size_t w = 0; w < stride_; ++w) dist += static_cast<std::size_t>(std::popcount(d[w] ^ e[w]));
      if (dist <= t) out.confused = true;
      if (dist < weight || (dist == weight && earlier_[j])) out.misdecoded = true;
      if (out.confused && out.misdecoded) break;
    }
    return out;
  }

 private:
  std::size_t stride_;
  std::vector<std::size_t> offsets_;
  std::vector<BitVector::Word> diffs_;
  std::vector<bool> earlier_;
};

std::vector<std::size_t> consistent_positions(const Codebook& cb, const CoordinateSet& z_set, const BitVector& z) {
  if (z.size() != z_set.size()) throw InvalidArgument("observation length differs from |Z|");
  std::vector<std::size_t> out;
  for (std::size_t pos = 0; pos < cb.size(); ++pos) {
    if (cb.codeword(pos).select(z_set) == z) out.push_back(pos);
  }
  return out;
}

}  // namespace

MyopicGreedy::MyopicGreedy(std::shared_ptr<const Codebook> codebook, ChannelParams params, StrategyOptions options)
    : AdversaryStrategy(std::move(codebook), params), options_(options) {
  const std::size_t n = this->params().n();
  const std::size_t t = this->params().flip_budget();
  if (ball_size(n, t) <= static_cast<double>(options_.candidate_pool)) {
    whole_ball_ = true;
    for_each_in_ball(n, t, [&](const BitVector& e) {
      ball_.push_back(e);
      return true;
    });
  }
}

std::vector<BitVector> MyopicGreedy::candidates(const CoordinateSet& z_set, Rng& rng) const {
  if (whole_ball_) return ball_;
  const std::size_t n = params().n();
  const std::size_t t = params().flip_budget();
  std::vector<BitVector> pool;
  pool.reserve(2 * options_.candidate_pool + n);
  for (std::size_t i = 0; i < options_.candidate_pool; ++i) {
    BitVector e(n);
    for (std::size_t c : random_subset(rng, n, t)) e.set(c);
    pool.push_back(std::move(e));
  }

  CoordinateSet outside;
  for (std::size_t c = 0, zi = 0; c < n; ++c) {
    if (zi < z_set.size() && z_set[zi] == c) {
      ++zi;
    } else {
      outside.push_back(c);
    }
  }
  const std::size_t off_weight = std::min(t, outside.size());
  std::size_t added = 0;
  for_each_combination(outside.size(), off_weight, [&](std::span<const std::size_t> idx) {
    BitVector e(n);
    for (std::size_t i : idx) e.set(outside[i]);
    pool.push_back(std::move(e));
    return ++added < options_.candidate_pool;
  });

  for (std::size_t start = 0; start < n; ++start) {
    BitVector e(n);
    for (std::size_t i = 0; i < t; ++i) e.set((start + i) % n);
    pool.push_back(std::move(e));
  }
  return pool;
}

BitVector MyopicGreedy::attack(const CoordinateSet& z_set, const BitVector& z, Rng& rng) const {
  const std::size_t n = params().n();
  const std::size_t t = params().flip_budget();
  if (t == 0) return BitVector(n);
  const std::vector<BitVector> pool = candidates(z_set, rng);
  const std::vector<std::size_t> positions = consistent_positions(codebook(), z_set, z);
  if (positions.empty()) return BitVector(n);
  const NeighbourTable table(codebook(), positions, t);

  std::size_t best_index = 0;
  std::size_t best_confused = 0;
  std::size_t best_errors = 0;
  bool have_best = false;
  const std::size_t target = positions.size();
  for (std::size_t c = 0; c < pool.size(); ++c) {
    const auto e = pool[c].words();
    const std::size_t weight = pool[c].weight();
    std::size_t confused = 0;
    std::size_t errors = 0;
    for (std::size_t i = 0; i < table.messages(); ++i) {
      const auto outcome = table.evaluate(i, e, weight, t);
      confused += outcome.confused;
      errors += outcome.misdecoded;
    }
    if (!have_best || confused > best_confused || (confused == best_confused && errors > best_errors)) {
      have_best = true;
      best_index = c;
      best_confused = confused;
      best_errors = errors;
      if (best_confused == target && best_errors == target) break;
    }
  }
  return pool[best_index];
}

ExhaustiveWorstCase::ExhaustiveWorstCase(std::shared_ptr<const Codebook> codebook, ChannelParams params,
                                         StrategyOptions options)
    : AdversaryStrategy(std::move(codebook), params) {
  const double ball = ball_size(this->params().n(), this->params().flip_budget());
  if (ball > options.exhaustive_guard) {
    throw GuardExceeded("error ball too large for exhaustive attack", ball, options.exhaustive_guard);
  }
}

BitVector ExhaustiveWorstCase::attack(const CoordinateSet& z_set, const BitVector& z, Rng&) const {
  const std::size_t n = params().n();
  const std::size_t t = params().flip_budget();
  BitVector best(n);
  if (t == 0) return best;
  const std::vector<std::size_t> positions = consistent_positions(codebook(), z_set, z);
  if (positions.empty()) return best;
  const NeighbourTable table(codebook(), positions, t);

  std::size_t best_errors = 0;
  bool have_best = false;
  for_each_in_ball(n, t, [&](const BitVector& e) {
    std::size_t errors = 0;
    const std::size_t weight = e.weight();
    for (std::size_t i = 0; i < table.messages(); ++i) errors += table.evaluate(i, e.words(), weight, t).misdecoded;
    if (!have_best || errors > best_errors) {
      have_best = true;
      best_errors = errors;
      best = e;
    }
    return best_errors < positions.size();
  });
  return best;
}

std::unique_ptr<AdversaryStrategy> make_strategy(StrategyKind kind, std::shared_ptr<const Codebook> codebook,
                                                 const ChannelParams& params, StrategyOptions options) {
  switch (kind) {
    case StrategyKind::ObliviousRandom:
      return std::make_unique<ObliviousRandom>(std::move(codebook), params);
    case StrategyKind::MyopicGreedy:
      return std::make_unique<MyopicGreedy>(std::move(codebook), params, options);
    case StrategyKind::ExhaustiveWorstCase:
      return std::make_unique<ExhaustiveWorstCase>(std::move(codebook), params, options);
  }
  throw InvalidArgument("unknown strategy kind");
}

TrialRecord transmit(const AdversaryStrategy& strategy, Message u, const CoordinateSet& z_set,
                     std::uint64_t attack_seed) {
  validate_coordinate_set(strategy.params(), z_set);
  const Codebook& cb = strategy.codebook();
  const BitVector& x = cb.codeword_of(u);
  TrialRecord rec;
  rec.message = u;
  rec.z_set = z_set;
  rec.observation = x.select(z_set);
  Rng rng(attack_seed);
  rec.error = strategy.attack(z_set, rec.observation, rng);
  if (rec.error.size() != x.size() || rec.error.weight() > strategy.params().flip_budget()) {
    throw std::logic_error("adversary exceeded its flip budget");
  }
  rec.received = x ^ rec.error;
  rec.decoded = cb.decode(rec.received);
  rec.is_error = rec.decoded != u;
  return rec;
}

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (phat + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

ErrorEstimate estimate_error_probability(const AdversaryStrategy& strategy, const ZPolicy& policy,
                                         std::uint64_t trials, std::uint64_t seed, const EstimationOptions& options) {
  if (trials == 0) throw InvalidArgument("trials must be at least 1");
  const ChannelParams& params = strategy.params();
  if (policy.kind == ZPolicy::Kind::Fixed) validate_coordinate_set(params, policy.fixed);
  const PseudolinearCode& code = strategy.codebook().code();

  const bool keep = static_cast<bool>(options.on_trial);
  std::vector<std::uint8_t> outcomes(trials, 0);
  std::vector<TrialRecord> records(keep ? trials : 0);

  auto run_trial = [&](std::uint64_t t) {
    Rng setup(derive_seed(seed, streams::kTrialSetup, t));
    const Message u = code.message_at(uniform_below(setup, code.message_count()));
    CoordinateSet z_set = policy.kind == ZPolicy::Kind::Fixed ? policy.fixed
                                                              : random_subset(setup, params.n(), params.read_size());
    TrialRecord rec = transmit(strategy, u, z_set, derive_seed(seed, streams::kAttack, t));
    outcomes[t] = rec.is_error ? 1 : 0;
    if (keep) records[t] = std::move(rec);
  };

  unsigned threads = options.threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : options.threads;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, trials));
  if (threads <= 1) {
    for (std::uint64_t t = 0; t < trials; ++t) run_trial(t);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        try {
          for (std::uint64_t t = next++; t < trials; t = next++) run_trial(t);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = trials;
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  ErrorEstimate est;
  est.trials = trials;
  for (std::uint8_t o : outcomes) est.errors += o;
  est.estimate = static_cast<double>(est.errors) / static_cast<double>(trials);
  std::tie(est.ci_low, est.ci_high) = wilson_interval(est.errors, trials);
  est.seed = seed;
  est.strategy = strategy.kind();
  if (keep) {
    for (std::uint64_t t = 0; t < trials; ++t) options.on_trial(t, records[t]);
  }
  return est;
}

}  // namespace pseudolinear
