#include "commands.hpp"
#include "grid.hpp"

#include <pseudolinear/awtc.hpp>
#include <pseudolinear/plcode.hpp>

#include <fstream>
#include <memory>

namespace pseudolinear::cli {

namespace {

PseudolinearCode load_code(const SimulateOptions& o) {
  const bool inline_build = o.n || o.rn || o.rate || o.k || o.code_seed;
  if (!o.code.empty()) {
    if (inline_build) throw UsageError("--code cannot be combined with inline build parameters");
    std::ifstream file(o.code);
    if (!file) throw UsageError("cannot read " + o.code);
    return read_code(file);
  }
  if (!o.n || !o.k) throw UsageError("give --code or inline --n, --rn/--rate and --k");
  if (!o.code_seed) throw UsageError("--code-seed is required to build a code inline");
  const unsigned rn = resolve_message_bits(*o.n, o.rn, o.rate);
  return sample_code(*o.n, rn, *o.k, parse_message_mode(o.mode), *o.code_seed);
}

ZPolicy parse_z(const std::string& text) {
  if (text.empty() || text == "uniform") return ZPolicy::uniform();
  CoordinateSet z;
  if (text != "none") {
    for (auto v : parse_integer_grid(text)) z.push_back(static_cast<std::size_t>(v));
  }
  return ZPolicy::fixed_set(std::move(z));
}

Json code_summary(const PseudolinearCode& code) {
  Json j;
  j["n"] = code.n();
  j["rn"] = code.message_bits();
  j["k"] = code.k();
  j["mode"] = to_string(code.mode());
  j["seed"] = code.seed() ? Json(*code.seed()) : Json(nullptr);
  j["rate"] = code.rate();
  return j;
}

}  // namespace

int cmd_simulate(const SimulateOptions& options, std::ostream& out) {
  if (!options.seed) throw UsageError("--seed is required");
  if (options.trials == 0) throw UsageError("--trials must be positive");
  const auto kind = parse_strategy_kind(options.strategy);
  auto code = load_code(options);
  const ChannelParams params(code.n(), options.p, options.r, options.delta, options.epsilon, options.theta);
  const auto policy = parse_z(options.z);
  if (policy.kind == ZPolicy::Kind::Fixed) validate_coordinate_set(params, policy.fixed);

  const Json code_json = code_summary(code);
  auto book = std::make_shared<const Codebook>(std::move(code));
  StrategyOptions strategy_options;
  strategy_options.candidate_pool = options.candidate_pool;
  const auto strategy = make_strategy(kind, book, params, strategy_options);

  std::ofstream log;
  EstimationOptions estimation;
  estimation.threads = options.threads;
  if (!options.trial_log.empty()) {
    log.open(options.trial_log);
    if (!log) throw UsageError("cannot write " + options.trial_log);
    estimation.on_trial = [&log](std::uint64_t t, const TrialRecord& rec) {
      Json j;
      j["schema"] = kSchema;
      j["type"] = "trial";
      j["trial"] = t;
      j["message"] = rec.message;
      j["z"] = rec.z_set;
      j["observation"] = rec.observation.to_string();
      j["error"] = rec.error.to_string();
      j["decoded"] = rec.decoded;
      j["decoding_error"] = rec.is_error;
      log << j.dump() << '\n';
    };
  }
  const auto estimate = estimate_error_probability(*strategy, policy, options.trials, *options.seed, estimation);

  Json channel;
  channel["p"] = params.p();
  channel["r"] = params.r();
  channel["delta"] = params.delta();
  channel["epsilon"] = params.epsilon();
  channel["theta"] = params.theta();
  channel["flip_budget"] = params.flip_budget();
  channel["read_size"] = params.read_size();
  channel["less_noisy"] = params.less_noisy();

  Json summary;
  summary["schema"] = kSchema;
  summary["type"] = "summary";
  summary["command"] = "simulate";
  summary["code"] = code_json;
  summary["channel"] = channel;
  summary["strategy"] = to_string(kind);
  summary["z_policy"] = policy.kind == ZPolicy::Kind::Uniform ? Json("uniform") : Json(policy.fixed);
  summary["trials"] = estimate.trials;
  summary["errors"] = estimate.errors;
  summary["estimate"] = estimate.estimate;
  summary["ci_low"] = estimate.ci_low;
  summary["ci_high"] = estimate.ci_high;
  summary["confidence"] = 0.95;
  summary["seed"] = estimate.seed;
  summary["adversary_lower_bound"] = estimate.adversary_lower_bound;
  summary["trial_log"] = options.trial_log.empty() ? Json(nullptr) : Json(options.trial_log);
  out << summary.dump(2) << '\n';
  return kExitSuccess;
}

}  // namespace pseudolinear::cli
