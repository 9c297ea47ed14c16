#include "cli.hpp"

#include "commands.hpp"
#include "json_config.hpp"

#include <algorithm>
#include <memory>

namespace pseudolinear::cli {

namespace {

const std::vector<std::string> kModes{"zero-free", "paper-faithful"};
const std::vector<std::string> kStrategies{"oblivious-random", "myopic-greedy", "exhaustive-worst-case"};

void add_build(CLI::App& app, BuildOptions& o) {
  auto* sub = app.add_subcommand("build", "Sample a code, audit its parity check and write the code file");
  sub->add_option("--n", o.n, "Blocklength")->required()->check(CLI::PositiveNumber);
  auto* rn = sub->add_option("--rn", o.rn, "Message bits Rn");
  sub->add_option("--rate", o.rate, "Rate R; Rn = floor(R n)")->excludes(rn);
  sub->add_option("--k", o.k, "Independence order k")->required()->check(CLI::PositiveNumber);
  sub->add_option("--mode", o.mode, "Message set")->check(CLI::IsMember(kModes))->capture_default_str();
  sub->add_option("--seed", o.seed, "Root seed for the generator matrix")->required();
  sub->add_option("--polynomial", o.polynomial, "Primitive polynomial with the x^w term, e.g. 0x43");
  sub->add_option("--out", o.out, "Code file to write");
  sub->add_option("--audit-guard", o.audit_guard, "Largest number of column subsets the audit checks")
      ->capture_default_str();
}

void add_simulate(CLI::App& app, SimulateOptions& o) {
  auto* sub = app.add_subcommand("simulate", "Estimate the decoding error probability against an adversary");
  sub->add_option("--code", o.code, "Code file written by build");
  sub->add_option("--n", o.n, "Blocklength of an inline code");
  auto* rn = sub->add_option("--rn", o.rn, "Message bits of an inline code");
  sub->add_option("--rate", o.rate, "Rate of an inline code")->excludes(rn);
  sub->add_option("--k", o.k, "Independence order of an inline code");
  sub->add_option("--mode", o.mode, "Message set of an inline code")->check(CLI::IsMember(kModes))->capture_default_str();
  sub->add_option("--code-seed", o.code_seed, "Generator seed of an inline code");
  sub->add_option("--p", o.p, "Flip fraction")->required();
  sub->add_option("--r", o.r, "Read fraction")->required();
  sub->add_option("--delta", o.delta, "Target error ceiling")->capture_default_str();
  sub->add_option("--eps", o.epsilon, "Rate backoff epsilon")->capture_default_str();
  sub->add_option("--theta", o.theta, "Slack theta (default eps/4)");
  sub->add_option("--strategy", o.strategy, "Adversary")->check(CLI::IsMember(kStrategies))->capture_default_str();
  sub->add_option("--trials", o.trials, "Number of channel uses")->capture_default_str();
  sub->add_option("--seed", o.seed, "Root seed for messages, read sets and attacks")->required();
  sub->add_option("--threads", o.threads, "Worker threads; 0 uses every core")->capture_default_str();
  sub->add_option("--z", o.z, "Read set: 'uniform' (default), 'none' or a comma list of coordinates");
  sub->add_option("--candidate-pool", o.candidate_pool, "Greedy candidate pool size")->capture_default_str();
  sub->add_option("--trial-log", o.trial_log, "Write one JSON record per trial to this file");
}

void add_verify(CLI::App& app, VerifyOptions& o) {
  auto* sub = app.add_subcommand("verify", "Run a named verification suite");
  std::string names;
  for (const auto& s : verify_suites()) names += " " + s;
  sub->add_option("suite", o.suite, "Suite:" + names)->required();
  sub->add_option("--n", o.n, "Blocklength (lemma1-exhaustive: 2; separating-family: 4)");
  sub->add_option("--rn", o.rn, "Message bits (default 2)");
  sub->add_option("--k", o.k, "Independence order (default 2)");
  sub->add_option("--mode", o.mode, "Message set")->check(CLI::IsMember(kModes))->capture_default_str();
  sub->add_option("--seed", o.seed, "Root seed; required by randomized suites");
  sub->add_option("--widths", o.widths, "Field widths for design-distance")->capture_default_str();
  sub->add_option("--ks", o.ks, "Orders for design-distance")->capture_default_str();
  sub->add_option("--rn-max", o.rn_max, "Largest Rn for the deterministic family")->capture_default_str();
  sub->add_option("--trials", o.trials, "Random families to draw")->capture_default_str();
  sub->add_option("--m1", o.m1, "Left side of the xor family")->capture_default_str();
  sub->add_option("--m2", o.m2, "Right side of the xor family")->capture_default_str();
  sub->add_option("--m-max", o.m_max, "Largest side for cycle-partition")->capture_default_str();
  sub->add_option("--k-max", o.k_max, "Largest edge count for cycle-partition")->capture_default_str();
  sub->add_option("--sets", o.sets, "Parameter sets for exponent-check")->capture_default_str();
  sub->add_option("--q-max", o.q_max, "Largest length for hamming-ball")->capture_default_str();
  sub->add_option("--p", o.p, "Flip fractions for threshold-k")->capture_default_str();
  sub->add_option("--r", o.r, "Read fractions for threshold-k")->capture_default_str();
  sub->add_option("--eps", o.eps, "Epsilons for threshold-k")->capture_default_str();
  sub->add_option("--records", o.records, "Write assertion records here instead of stdout");
}

void add_bounds(CLI::App& app, BoundsOptions& o) {
  auto* sub = app.add_subcommand("bounds", "Evaluate bound tables over parameter grids");
  std::string names;
  for (const auto& t : bounds_tables()) names += " " + t;
  sub->add_option("table", o.table, "Table:" + names)->required();
  sub->add_option("--format", o.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}))->capture_default_str();
  sub->add_option("--out", o.out, "Write the table here instead of stdout");
  for (const auto& column : bounds_grid_columns()) {
    std::string flag = "--" + column;
    std::replace(flag.begin(), flag.end(), '_', '-');
    sub->add_option(flag, o.grids[column], "Grid for " + column + ": list of values and lo:hi[:step] ranges");
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pseudolinear codes over the adversarial wiretap channel", "plcode"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.fallthrough();
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.config_formatter(std::make_shared<JsonConfig>(&app));
  app.set_config("--config", "", "JSON file of option values; flags given on the command line win");

  BuildOptions build;
  SimulateOptions simulate;
  VerifyOptions verify;
  BoundsOptions bounds;
  add_build(app, build);
  add_simulate(app, simulate);
  add_verify(app, verify);
  add_bounds(app, bounds);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitSuccess : kExitUsage;
  }

  try {
    if (app.got_subcommand("build")) return cmd_build(build, out);
    if (app.got_subcommand("simulate")) return cmd_simulate(simulate, out);
    if (app.got_subcommand("verify")) return cmd_verify(verify, out);
    return cmd_bounds(bounds, out);
  } catch (const std::exception& e) {
    // Usage errors, rejected parameters, guards and unreadable files alike.
    err << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace pseudolinear::cli
