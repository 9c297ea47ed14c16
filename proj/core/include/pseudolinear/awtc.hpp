#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "pseudolinear/bitlinalg.hpp"
#include "pseudolinear/plcode.hpp"
#include "pseudolinear/rng.hpp"

namespace pseudolinear {

/// Parameters of AWTC_{p,r} at blocklength n.
///
/// Budgets are floored: the adversary flips at most floor(p n) bits and reads
/// floor(r n) coordinates. A 1e-9 allowance absorbs representation error, so
/// p = 0.125, n = 24 gives exactly 3 flips.
class ChannelParams {
 public:
  ChannelParams(std::size_t n, double p, double r, double delta = 0.1, double epsilon = 0.05,
                std::optional<double> theta = std::nullopt);

  std::size_t n() const noexcept { return n_; }
  double p() const noexcept { return p_; }
  double r() const noexcept { return r_; }
  double delta() const noexcept { return delta_; }
  double epsilon() const noexcept { return epsilon_; }
  double theta() const noexcept { return theta_; }
  std::size_t flip_budget() const noexcept { return flip_budget_; }
  std::size_t read_size() const noexcept { return read_size_; }
  /// r < 1 - H2(p).
  bool less_noisy() const noexcept;

 private:
  std::size_t n_;
  double p_;
  double r_;
  double delta_;
  double epsilon_;
  double theta_;
  std::size_t flip_budget_;
  std::size_t read_size_;
};

/// Sorted, duplicate-free coordinate indices.
using CoordinateSet = std::vector<std::size_t>;

/// Throws unless Z is strictly increasing, inside [0, n) and of size read_size.
void validate_coordinate_set(const ChannelParams& params, const CoordinateSet& z_set);

/// The codeword of u restricted to Z, in ascending coordinate order.
BitVector observe(const Codebook& codebook, Message u, const CoordinateSet& z_set);
BitVector observe(const PseudolinearCode& code, Message u, const CoordinateSet& z_set);

enum class StrategyKind { ObliviousRandom, MyopicGreedy, ExhaustiveWorstCase };

std::string_view to_string(StrategyKind kind);
StrategyKind parse_strategy_kind(std::string_view text);

struct StrategyOptions {
  /// Random weight-budget candidates drawn by MyopicGreedy when the whole
  /// ball is larger than this; also the cap on the off-Z candidates.
  std::size_t candidate_pool = 4096;
  /// Largest ball ExhaustiveWorstCase agrees to scan.
  double exhaustive_guard = 1 << 20;
};

/// An adversary holding full knowledge of the code.
///
/// attack() sees only the read coordinates and their values; any randomness
/// comes from the caller's generator so trials are reproducible. Every
/// returned error has weight at most flip_budget.
class AdversaryStrategy {
 public:
  AdversaryStrategy(std::shared_ptr<const Codebook> codebook, ChannelParams params);
  virtual ~AdversaryStrategy() = default;

  virtual StrategyKind kind() const noexcept = 0;
  virtual BitVector attack(const CoordinateSet& z_set, const BitVector& z, Rng& rng) const = 0;

  const Codebook& codebook() const noexcept { return *codebook_; }
  std::shared_ptr<const Codebook> shared_codebook() const noexcept { return codebook_; }
  const ChannelParams& params() const noexcept { return params_; }

 private:
  std::shared_ptr<const Codebook> codebook_;
  ChannelParams params_;
};

/// Flips a uniformly random flip_budget-subset of coordinates, ignoring z.
class ObliviousRandom final : public AdversaryStrategy {
 public:
  using AdversaryStrategy::AdversaryStrategy;
  StrategyKind kind() const noexcept override { return StrategyKind::ObliviousRandom; }
  BitVector attack(const CoordinateSet& z_set, const BitVector& z, Rng& rng) const override;
};

/// Searches a candidate pool for the error confusing the most consistent
/// messages, i.e. maximizing |A(e) ∩ O(Z, z)|.
///
/// Ties go to the candidate causing more decoding errors over O(Z, z), then
/// to the earlier candidate. The pool is the whole ball when it fits in
/// `candidate_pool`; otherwise it is that many seeded weight-budget strings,
/// plus every weight-budget string supported off Z (capped), plus cyclic
/// windows of flip_budget consecutive ones.
class MyopicGreedy final : public AdversaryStrategy {
 public:
  MyopicGreedy(std::shared_ptr<const Codebook> codebook, ChannelParams params, StrategyOptions options = {});
  StrategyKind kind() const noexcept override { return StrategyKind::MyopicGreedy; }
  BitVector attack(const CoordinateSet& z_set, const BitVector& z, Rng& rng) const override;

 private:
  std::vector<BitVector> candidates(const CoordinateSet& z_set, Rng& rng) const;

  StrategyOptions options_;
  std::vector<BitVector> ball_;
  bool whole_ball_ = false;
};

/// Scans the whole flip_budget ball for the error maximizing decoding errors
/// over the messages consistent with z (the adversary's posterior under a
/// uniform prior). Deterministic: ties go to the first error in ball order.
class ExhaustiveWorstCase final : public AdversaryStrategy {
 public:
  ExhaustiveWorstCase(std::shared_ptr<const Codebook> codebook, ChannelParams params, StrategyOptions options = {});
  StrategyKind kind() const noexcept override { return StrategyKind::ExhaustiveWorstCase; }
  BitVector attack(const CoordinateSet& z_set, const BitVector& z, Rng& rng) const override;
};

std::unique_ptr<AdversaryStrategy> make_strategy(StrategyKind kind, std::shared_ptr<const Codebook> codebook,
                                                 const ChannelParams& params, StrategyOptions options = {});

/// Messages whose codeword restricted to Z equals z, ascending.
std::vector<Message> consistent_messages(const Codebook& codebook, const CoordinateSet& z_set, const BitVector& z);

struct TrialRecord {
  Message message = 0;
  CoordinateSet z_set;
  BitVector observation;
  BitVector error;
  BitVector received;
  Message decoded = 0;
  bool is_error = false;
};

/// One channel use: y = X(u) xor attack(Z, X(u)|_Z), decoded by minimum
/// distance. The attack draws from Rng(attack_seed).
TrialRecord transmit(const AdversaryStrategy& strategy, Message u, const CoordinateSet& z_set,
                     std::uint64_t attack_seed);

struct ZPolicy {
  enum class Kind { Fixed, Uniform };
  Kind kind = Kind::Uniform;
  CoordinateSet fixed;

  static ZPolicy uniform() { return {}; }
  static ZPolicy fixed_set(CoordinateSet z_set) { return {Kind::Fixed, std::move(z_set)}; }
};

struct ErrorEstimate {
  std::uint64_t trials = 0;
  std::uint64_t errors = 0;
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t seed = 0;
  StrategyKind strategy = StrategyKind::ObliviousRandom;
  /// Implemented strategies cannot realize the supremum over all adversaries,
  /// so the estimate lower-bounds the true worst-case error.
  bool adversary_lower_bound = true;
};

/// 95% Wilson score interval.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

struct EstimationOptions {
  /// 0 picks the hardware concurrency.
  unsigned threads = 1;
  /// Receives every trial in trial order after the run.
  std::function<void(std::uint64_t, const TrialRecord&)> on_trial;
};

/// Trial t draws U uniform over the message set and Z per the policy from
/// derive_seed(seed, kTrialSetup, t), and attacks with derive_seed(seed,
/// kAttack, t). Results do not depend on the thread count.
ErrorEstimate estimate_error_probability(const AdversaryStrategy& strategy, const ZPolicy& policy,
                                         std::uint64_t trials, std::uint64_t seed,
                                         const EstimationOptions& options = {});

}  // namespace pseudolinear
