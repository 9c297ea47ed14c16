#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pseudolinear/awtc.hpp"
#include "pseudolinear/entropy.hpp"
#include "pseudolinear/independence_lab.hpp"
#include "pseudolinear/plcode.hpp"
#include "pseudolinear/separating_family.hpp"

namespace pseudolinear {

/// A code, the channel it faces and a separating family over its messages.
/// The family's universe must be indexed by message value (size 2^Rn).
class AnalysisContext {
 public:
  AnalysisContext(std::shared_ptr<const Codebook> codebook, ChannelParams params, SeparatingFamily family);

  const Codebook& codebook() const noexcept { return *codebook_; }
  const ChannelParams& params() const noexcept { return params_; }
  const SeparatingFamily& family() const noexcept { return family_; }

 private:
  std::shared_ptr<const Codebook> codebook_;
  ChannelParams params_;
  SeparatingFamily family_;
};

inline constexpr double kDefaultAnalysisGuard = 1e9;

/// A(e): messages u with some u' != u whose codeword lies within flip_budget
/// of X(u) xor e. Ascending.
std::vector<Message> confusable_set(const AnalysisContext& ctx, const BitVector& e,
                                    double guard = kDefaultAnalysisGuard);

/// O(Z, z), ascending.
std::vector<Message> consistency_set(const AnalysisContext& ctx, const CoordinateSet& z_set, const BitVector& z);

/// Every nonempty consistency set for Z, keyed by the observation's bit string.
std::map<std::string, std::vector<Message>> consistency_bins(const AnalysisContext& ctx,
                                                             const CoordinateSet& z_set);

struct VSum {
  std::uint64_t total = 0;
  /// components[i] counts pairs split by S_i; they sum to total.
  std::vector<std::uint64_t> components;
};

/// Sum over i of #{(u, u') : u in O(Z, z) ∩ S_i, u' in U \ S_i, X(u') within
/// flip_budget of X(u) xor e}.
VSum v_sum(const AnalysisContext& ctx, const CoordinateSet& z_set, const BitVector& z, const BitVector& e);

struct SufficientConditionWitness {
  CoordinateSet z_set;
  BitVector observation;
  BitVector error;
  std::size_t count = 0;
};

struct SufficientConditionResult {
  bool holds = true;
  /// False when only a sample of (Z, e) was examined.
  bool exhaustive = true;
  double bound = 0.0;
  std::uint64_t triples_checked = 0;
  std::optional<SufficientConditionWitness> witness;
};

/// Checks |A(e) ∩ O(Z, z)| <= delta 2^(Rn - read_size) over every Z, every
/// observed z and every e in the flip ball. Rejects with GuardExceeded when
/// C(n, read_size) |ball| 2^Rn exceeds the guard.
SufficientConditionResult check_sufficient_condition(const AnalysisContext& ctx, double delta,
                                                     double guard = kDefaultAnalysisGuard);

/// Same condition on `samples` random (Z, e) pairs; flagged non-exhaustive.
SufficientConditionResult check_sufficient_condition_sampled(const AnalysisContext& ctx, double delta,
                                                             std::uint64_t samples, std::uint64_t seed);

/// Threshold 2^(Rn - read_size + theta n) for the event H(Z).
double event_h_threshold(const AnalysisContext& ctx, double theta);

/// H(Z): some observation's consistency set exceeds the threshold.
bool event_h_holds(const AnalysisContext& ctx, const CoordinateSet& z_set, double theta);
bool event_h_holds(const AnalysisContext& ctx, const CoordinateSet& z_set);

/// sum_{j <= t} C(q, j), exact for q <= 62.
std::uint64_t hamming_ball_volume(unsigned q, unsigned t);

/// 2^(q H2(t/q)); 1 when q = 0.
double entropy_bound(unsigned q, unsigned t);

/// E(j) = rn H2(j/(rn)) + 2(R-r)n + 2 theta n - (1-r)n (1 - H2((pn-j)/((1-r)n))).
/// A term whose weight rn or (1-r)n is zero is dropped.
double exponent_e(double j, double n, double rate, double r, double p, double theta);

struct ExponentCheck {
  double rate = 0.0;
  double peak = 0.0;
  double e_at_peak = 0.0;
  /// |E(rpn) - ((R - r)n - eps n + 2 theta n)|.
  double identity_error = 0.0;
  double grid_step = 0.0;
  double grid_argmax = 0.0;
  double max_second_difference = 0.0;
  bool identity_ok = false;
  bool argmax_ok = false;
  bool concave = false;
  bool ok() const noexcept { return identity_ok && argmax_ok && concave; }
};

/// With R = 1 - H2(p) - eps, evaluates E on a uniform grid of `steps` + 1
/// points over [0, min(pn, rn)] and checks the peak identity (1e-9), that
/// the grid maximum lies within one step of rpn, and that second differences
/// are at most 1e-9.
ExponentCheck exponent_max_check(double n, double p, double r, double epsilon, double theta, std::size_t steps = 1000);

/// Exact law of the codeword bits outside Z for the given messages,
/// conditioned on their bits on Z equal to `observed` (one BitVector of
/// length |Z| per message), over every generator of a tiny (n, Rn, k) code.
/// Variables are indexed (message, position within the complement of Z).
JointDistribution conditional_unobserved_distribution(std::size_t n, unsigned message_bits, unsigned k,
                                                      MessageMode mode, const CoordinateSet& z_set,
                                                      std::span<const Message> messages,
                                                      std::span<const BitVector> observed,
                                                      double guard = kDefaultGeneratorGuard);

}  // namespace pseudolinear
