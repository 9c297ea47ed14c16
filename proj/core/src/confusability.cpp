#include "pseudolinear/confusability.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "pseudolinear/combinatorics.hpp"
#include "pseudolinear/errors.hpp"
#include "pseudolinear/rng.hpp"

namespace pseudolinear {

AnalysisContext::AnalysisContext(std::shared_ptr<const Codebook> codebook, ChannelParams params,
                                 SeparatingFamily family)
    : codebook_(std::move(codebook)), params_(params), family_(std::move(family)) {
  if (!codebook_) throw InvalidArgument("analysis context needs a codebook");
  if (codebook_->n() != params_.n()) throw InvalidArgument("channel blocklength differs from the code's");
  const std::size_t universe = std::size_t{1} << codebook_->code().message_bits();
  if (family_.universe_size != universe) {
    throw InvalidArgument("separating family universe must be 2^Rn, indexed by message value");
  }
  for (const BitVector& s : family_.subsets) {
    if (s.size() != universe) throw InvalidArgument("subset mask length differs from universe size");
  }
}

namespace {

bool within(std::span<const BitVector::Word> a, std::span<const BitVector::Word> b,
            std::span<const BitVector::Word> e, std::size_t t) {
  std::size_t d = 0;
  for (std::size_t w = 0; w < a.size(); ++w) {
    d += static_cast<std::size_t>(std::popcount(a[w] ^ b[w] ^ e[w]));
    if (d > t) return false;
  }
  return true;
}

void check_error(const AnalysisContext& ctx, const BitVector& e) {
  if (e.size() != ctx.params().n()) throw InvalidArgument("error string has wrong length");
  if (e.weight() > ctx.params().flip_budget()) throw InvalidArgument("error string exceeds the flip budget");
}

// Mask over codebook positions: entry a is true iff message at a is in A(e).
std::vector<bool> confusable_mask(const Codebook& cb, const BitVector& e, std::size_t t) {
  std::vector<bool> mask(cb.size(), false);
  const auto ew = e.words();
  for (std::size_t a = 0; a < cb.size(); ++a) {
    for (std::size_t b = 0; b < cb.size(); ++b) {
      if (a != b && within(cb.words(a), cb.words(b), ew, t)) {
        mask[a] = true;
        break;
      }
    }
  }
  return mask;
}

std::map<std::string, std::vector<std::size_t>> position_bins(const Codebook& cb, const CoordinateSet& z_set) {
  std::map<std::string, std::vector<std::size_t>> bins;
  for (std::size_t pos = 0; pos < cb.size(); ++pos) bins[cb.codeword(pos).select(z_set).to_string()].push_back(pos);
  return bins;
}

}  // namespace

std::vector<Message> confusable_set(const AnalysisContext& ctx, const BitVector& e, double guard) {
  check_error(ctx, e);
  const double u = static_cast<double>(ctx.codebook().size());
  if (u * u > guard) throw GuardExceeded("confusable set scan too large", u * u, guard);
  const std::vector<bool> mask = confusable_mask(ctx.codebook(), e, ctx.params().flip_budget());
  std::vector<Message> out;
  for (std::size_t pos = 0; pos < mask.size(); ++pos) {
    if (mask[pos]) out.push_back(ctx.codebook().message(pos));
  }
  return out;
}

std::vector<Message> consistency_set(const AnalysisContext& ctx, const CoordinateSet& z_set, const BitVector& z) {
  validate_coordinate_set(ctx.params(), z_set);
  return consistent_messages(ctx.codebook(), z_set, z);
}

std::map<std::string, std::vector<Message>> consistency_bins(const AnalysisContext& ctx, const CoordinateSet& z_set) {
  validate_coordinate_set(ctx.params(), z_set);
  std::map<std::string, std::vector<Message>> out;
  for (const auto& [key, positions] : position_bins(ctx.codebook(), z_set)) {
    auto& msgs = out[key];
    for (std::size_t pos : positions) msgs.push_back(ctx.codebook().message(pos));
  }
  return out;
}

VSum v_sum(const AnalysisContext& ctx, const CoordinateSet& z_set, const BitVector& z, const BitVector& e) {
  check_error(ctx, e);
  const Codebook& cb = ctx.codebook();
  const SeparatingFamily& fam = ctx.family();
  const std::size_t t = ctx.params().flip_budget();
  const std::vector<Message> consistent = consistency_set(ctx, z_set, z);
  const auto ew = e.words();

  VSum out;
  out.components.assign(fam.size(), 0);
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const BitVector& s = fam.subsets[i];
    for (Message u : consistent) {
      if (!s.test(u)) continue;
      const auto xu = cb.words(cb.code().position_of(u));
      for (std::size_t b = 0; b < cb.size(); ++b) {
        if (s.test(cb.message(b))) continue;
        if (within(xu, cb.words(b), ew, t)) ++out.components[i];
      }
    }
    out.total += out.components[i];
  }
  return out;
}

SufficientConditionResult check_sufficient_condition(const AnalysisContext& ctx, double delta, double guard) {
  const Codebook& cb = ctx.codebook();
  const ChannelParams& params = ctx.params();
  const std::size_t n = params.n();
  const std::size_t t = params.flip_budget();
  const std::size_t read = params.read_size();
  const double ball = ball_size(n, t);
  const double u = static_cast<double>(cb.size());
  const double required = std::max(binomial(n, read) * ball * std::ldexp(1.0, cb.code().message_bits()), ball * u * u);
  if (required > guard) throw GuardExceeded("sufficient-condition check too large", required, guard);

  SufficientConditionResult result;
  const int exponent = static_cast<int>(cb.code().message_bits()) - static_cast<int>(read);
  result.bound = delta * std::ldexp(1.0, exponent);

  std::vector<BitVector> errors;
  std::vector<std::vector<bool>> masks;
  for_each_in_ball(n, t, [&](const BitVector& e) {
    errors.push_back(e);
    masks.push_back(confusable_mask(cb, e, t));
    return true;
  });

  for_each_combination(n, read, [&](std::span<const std::size_t> idx) {
    const CoordinateSet z_set(idx.begin(), idx.end());
    const auto bins = position_bins(cb, z_set);
    for (std::size_t ei = 0; ei < errors.size(); ++ei) {
      for (const auto& [key, positions] : bins) {
        ++result.triples_checked;
        std::size_t count = 0;
        for (std::size_t pos : positions) count += masks[ei][pos];
        if (static_cast<double>(count) > result.bound) {
          result.holds = false;
          result.witness = SufficientConditionWitness{z_set, BitVector::from_string(key), errors[ei], count};
          return false;
        }
      }
    }
    return true;
  });
  return result;
}

SufficientConditionResult check_sufficient_condition_sampled(const AnalysisContext& ctx, double delta,
                                                             std::uint64_t samples, std::uint64_t seed) {
  const Codebook& cb = ctx.codebook();
  const ChannelParams& params = ctx.params();
  SufficientConditionResult result;
  result.exhaustive = false;
  const int exponent = static_cast<int>(cb.code().message_bits()) - static_cast<int>(params.read_size());
  result.bound = delta * std::ldexp(1.0, exponent);
  Rng rng(derive_seed(seed, streams::kSampler, 0));
  for (std::uint64_t s = 0; s < samples; ++s) {
    const CoordinateSet z_set = random_subset(rng, params.n(), params.read_size());
    BitVector e(params.n());
    for (std::size_t c : random_subset(rng, params.n(), params.flip_budget())) e.set(c);
    const std::vector<bool> mask = confusable_mask(cb, e, params.flip_budget());
    for (const auto& [key, positions] : position_bins(cb, z_set)) {
      ++result.triples_checked;
      std::size_t count = 0;
      for (std::size_t pos : positions) count += mask[pos];
      if (static_cast<double>(count) > result.bound) {
        result.holds = false;
        result.witness = SufficientConditionWitness{z_set, BitVector::from_string(key), e, count};
        return result;
      }
    }
  }
  return result;
}

double event_h_threshold(const AnalysisContext& ctx, double theta) {
  const double exponent = static_cast<double>(ctx.codebook().code().message_bits()) -
                          static_cast<double>(ctx.params().read_size()) + theta * static_cast<double>(ctx.params().n());
  return std::exp2(exponent);
}

bool event_h_holds(const AnalysisContext& ctx, const CoordinateSet& z_set, double theta) {
  validate_coordinate_set(ctx.params(), z_set);
  const double threshold = event_h_threshold(ctx, theta);
  for (const auto& [key, positions] : position_bins(ctx.codebook(), z_set)) {
    if (static_cast<double>(positions.size()) > threshold) return true;
  }
  return false;
}

bool event_h_holds(const AnalysisContext& ctx, const CoordinateSet& z_set) {
  return event_h_holds(ctx, z_set, ctx.params().theta());
}

std::uint64_t hamming_ball_volume(unsigned q, unsigned t) {
  if (q > 62) throw InvalidArgument("hamming_ball_volume supports q <= 62");
  if (t > q) throw InvalidArgument("radius must not exceed q");
  std::uint64_t total = 0;
  for (unsigned j = 0; j <= t; ++j) total += binomial_exact(q, j);
  return total;
}

double entropy_bound(unsigned q, unsigned t) {
  if (t > q) throw InvalidArgument("radius must not exceed q");
  if (q == 0) return 1.0;
  return std::exp2(static_cast<double>(q) * binary_entropy(static_cast<double>(t) / static_cast<double>(q)));
}

namespace {

double clamp_unit(double x) {
  if (x < 0.0 && x > -1e-12) return 0.0;
  if (x > 1.0 && x < 1.0 + 1e-12) return 1.0;
  return x;
}

}  // namespace

double exponent_e(double j, double n, double rate, double r, double p, double theta) {
  const double read = r * n;
  const double unread = (1.0 - r) * n;
  double value = 2.0 * (rate - r) * n + 2.0 * theta * n;
  if (read > 0.0) value += read * binary_entropy(clamp_unit(j / read));
  if (unread > 0.0) value -= unread * (1.0 - binary_entropy(clamp_unit((p * n - j) / unread)));
  return value;
}

ExponentCheck exponent_max_check(double n, double p, double r, double epsilon, double theta, std::size_t steps) {
  if (steps == 0) throw InvalidArgument("exponent grid needs at least one step");
  ExponentCheck check;
  check.rate = capacity(p) - epsilon;
  check.peak = r * p * n;
  check.e_at_peak = exponent_e(check.peak, n, check.rate, r, p, theta);
  const double expected = (check.rate - r) * n - epsilon * n + 2.0 * theta * n;
  check.identity_error = std::abs(check.e_at_peak - expected);
  check.identity_ok = check.identity_error <= 1e-9;

  const double upper = std::min(p * n, r * n);
  check.grid_step = upper / static_cast<double>(steps);
  std::vector<double> values(steps + 1);
  std::size_t best = 0;
  for (std::size_t i = 0; i <= steps; ++i) {
    values[i] = exponent_e(check.grid_step * static_cast<double>(i), n, check.rate, r, p, theta);
    if (values[i] > values[best]) best = i;
  }
  check.grid_argmax = check.grid_step * static_cast<double>(best);
  check.argmax_ok = std::abs(check.grid_argmax - check.peak) <= check.grid_step + 1e-12;

  check.max_second_difference = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 <= steps; ++i) {
    check.max_second_difference =
        std::max(check.max_second_difference, values[i - 1] - 2.0 * values[i] + values[i + 1]);
  }
  check.concave = steps < 2 || check.max_second_difference <= 1e-9;
  return check;
}

JointDistribution conditional_unobserved_distribution(std::size_t n, unsigned message_bits, unsigned k,
                                                      MessageMode mode, const CoordinateSet& z_set,
                                                      std::span<const Message> messages,
                                                      std::span<const BitVector> observed, double guard) {
  if (observed.size() != messages.size()) throw InvalidArgument("need one observation per message");
  for (std::size_t i = 0; i < z_set.size(); ++i) {
    if (z_set[i] >= n || (i > 0 && z_set[i] <= z_set[i - 1])) throw InvalidArgument("invalid coordinate set");
  }
  for (const BitVector& z : observed) {
    if (z.size() != z_set.size()) throw InvalidArgument("observation length differs from |Z|");
  }
  CoordinateSet unread;
  for (std::size_t c = 0; c < n; ++c) {
    if (!std::binary_search(z_set.begin(), z_set.end(), c)) unread.push_back(c);
  }
  if (unread.empty()) throw InvalidArgument("Z covers every coordinate; nothing is unobserved");

  const CodewordHistogram hist = joint_codeword_distribution(n, message_bits, k, mode, messages, guard);
  std::map<std::uint64_t, std::uint64_t> kept;
  std::uint64_t total = 0;
  for (const auto& [outcome, count] : hist.counts) {
    bool matches = true;
    for (std::size_t i = 0; i < messages.size() && matches; ++i) {
      for (std::size_t c = 0; c < z_set.size() && matches; ++c) {
        matches = (((outcome >> (i * n + z_set[c])) & 1U) != 0) == observed[i].test(c);
      }
    }
    if (!matches) continue;
    std::uint64_t projected = 0;
    for (std::size_t i = 0; i < messages.size(); ++i) {
      for (std::size_t c = 0; c < unread.size(); ++c) {
        projected |= ((outcome >> (i * n + unread[c])) & 1U) << (i * unread.size() + c);
      }
    }
    kept[projected] += count;
    total += count;
  }
  if (total == 0) throw InvalidArgument("conditioning event has probability zero");
  std::vector<std::pair<std::uint64_t, double>> table;
  for (const auto& [outcome, count] : kept) {
    table.emplace_back(outcome, static_cast<double>(count) / static_cast<double>(total));
  }
  return JointDistribution::bipartite(messages.size(), unread.size(), std::move(table));
}

}  // namespace pseudolinear
