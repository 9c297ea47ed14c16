#include "commands.hpp"
#include "grid.hpp"

#include <pseudolinear/bch_parity.hpp>
#include <pseudolinear/combinatorics.hpp>
#include <pseudolinear/confusability.hpp>
#include <pseudolinear/entropy.hpp>
#include <pseudolinear/independence_lab.hpp>
#include <pseudolinear/plcode.hpp>
#include <pseudolinear/rng.hpp>
#include <pseudolinear/separating_family.hpp>
#include <pseudolinear/tail_bounds.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>

namespace pseudolinear::cli {

namespace {

class Reporter {
 public:
  Reporter(std::string suite, std::ostream& out) : suite_(std::move(suite)), out_(out) {}

  void record(const std::string& assertion, bool pass, Json detail = Json::object()) {
    Json j;
    j["schema"] = kSchema;
    j["type"] = "assertion";
    j["suite"] = suite_;
    j["assertion"] = assertion;
    j["pass"] = pass;
    j["detail"] = std::move(detail);
    out_ << j.dump() << '\n';
    ++count_;
    failures_ += !pass;
  }

  std::uint64_t count() const { return count_; }
  std::uint64_t failures() const { return failures_; }

 private:
  std::string suite_;
  std::ostream& out_;
  std::uint64_t count_ = 0;
  std::uint64_t failures_ = 0;
};

using Suite = std::function<Json(const VerifyOptions&, Reporter&)>;

std::uint64_t require_seed(const VerifyOptions& o) {
  if (!o.seed) throw UsageError("suite '" + o.suite + "' is randomized; --seed is required");
  return *o.seed;
}

Json witness_json(const IndependenceWitness& w) {
  Json edges = Json::array();
  for (const auto& e : w.edges) edges.push_back({e.left, e.right});
  return {{"variables", w.variables}, {"edges", edges}, {"assignment", w.assignment}, {"joint", w.lhs},
          {"product", w.rhs}};
}

Json joint_uniformity(const VerifyOptions& o, Reporter& rep) {
  const std::size_t n = o.n.value_or(2);
  const unsigned rn = o.rn.value_or(2);
  const unsigned k = o.k.value_or(2);
  const auto mode = parse_message_mode(o.mode);
  const Message first = mode == MessageMode::ZeroFree ? 1 : 0;
  const std::uint64_t count = (std::uint64_t{1} << rn) - first;
  if (k > count) throw UsageError("k exceeds the number of messages");
  if (binomial(count, k) > 1e5) throw UsageError("too many message subsets to enumerate");
  const double outcomes = std::ldexp(1.0, static_cast<int>(n * k));
  for_each_combination(count, k, [&](std::span<const std::size_t> idx) {
    std::vector<Message> msgs;
    for (std::size_t i : idx) msgs.push_back(first + i);
    const auto hist = joint_codeword_distribution(n, rn, k, mode, msgs);
    const double expected = static_cast<double>(hist.total) / outcomes;
    Json detail{{"messages", msgs}, {"generators", hist.total}, {"expected_count", expected}};
    bool ok = static_cast<double>(hist.counts.size()) == outcomes;
    for (const auto& [outcome, c] : hist.counts) {
      if (static_cast<double>(c) != expected) {
        ok = false;
        detail["witness"] = {{"outcome", outcome}, {"count", c}};
        break;
      }
    }
    if (!ok && !detail.contains("witness")) detail["witness"] = {{"support", hist.counts.size()}};
    rep.record("uniform joint law", ok, detail);
    return true;
  });
  return {{"n", n}, {"rn", rn}, {"k", k}, {"mode", to_string(mode)}};
}

Json design_distance(const VerifyOptions& o, Reporter& rep) {
  const auto widths = parse_integer_grid(o.widths);
  const auto ks = parse_integer_grid(o.ks);
  for (auto w : widths) {
    for (auto k : ks) {
      if (k == 0 || (std::uint64_t{1} << w) - 1 < k) continue;
      const ParityCheck pc(static_cast<unsigned>(w), static_cast<unsigned>(k));
      rep.record("k-subsets independent", verify_design_distance(pc),
                 {{"width", w}, {"k", k}, {"m", pc.rows()}, {"subsets", binomial(pc.columns(), k)}});
    }
  }
  return {{"widths", widths}, {"ks", ks}};
}

Json separating(const VerifyOptions& o, Reporter& rep) {
  const std::uint64_t seed = require_seed(o);
  for (unsigned rn = 1; rn <= o.rn_max; ++rn) {
    const auto fam = build_deterministic(rn);
    const auto pair = find_unseparated_pair(fam);
    Json detail{{"rn", rn}, {"subsets", fam.size()}};
    if (pair) detail["witness"] = {pair->first, pair->second};
    rep.record("deterministic family separates", !pair, detail);
  }
  const unsigned rn = o.rn.value_or(2);
  const std::size_t n = o.n.value_or(4);
  const std::size_t s = 10 * n;
  std::uint64_t failures = 0;
  for (std::uint64_t t = 0; t < o.trials; ++t) {
    failures += std::holds_alternative<SeparationFailure>(
        build_random(std::size_t{1} << rn, s, derive_seed(seed, streams::kFamily, t)));
  }
  const double rate = static_cast<double>(failures) / static_cast<double>(o.trials);
  const double se = std::sqrt(rate * (1.0 - rate) / static_cast<double>(o.trials));
  const double bound = failure_bound(rn, s);
  rep.record("random failure rate within union bound", rate <= bound + 3.0 * se,
             {{"rn", rn}, {"subsets", s}, {"trials", o.trials}, {"failures", failures}, {"rate", rate},
              {"stderr", se}, {"bound", bound}});
  return {{"rn_max", o.rn_max}, {"rn", rn}, {"n", n}, {"trials", o.trials}, {"seed", seed}};
}

Json ioef_xor(const VerifyOptions& o, Reporter& rep) {
  const auto dist = xor_family(o.m1, o.m2);
  const std::size_t largest_forest = o.m1 + o.m2 - 1;
  for (std::size_t k = 1; k <= std::min<std::size_t>(largest_forest, 4); ++k) {
    const auto v = test_kwise_ioef(dist, k);
    Json detail{{"k", k}};
    if (v.witness) detail["witness"] = witness_json(*v.witness);
    rep.record("independent over every forest", v.holds, detail);
  }
  if (o.m1 >= 2 && o.m2 >= 2) {
    const auto v = test_kwise_independent(dist, 4);
    Json detail{{"k", 4}};
    if (v.witness) detail["witness"] = witness_json(*v.witness);
    rep.record("not 4-wise independent", !v.holds, detail);
    // Edges (0,0), (0,1), (1,0), (1,1) close a 4-cycle; odd parity is impossible.
    const std::vector<std::size_t> cycle{dist.variable(0, 0), dist.variable(0, 1), dist.variable(1, 0),
                                         dist.variable(1, 1)};
    const double joint = dist.projection(cycle).at(1);
    double product = 1.0;
    for (auto v : cycle) product *= dist.marginal(v);
    rep.record("odd cycle assignment has probability zero", joint == 0.0 && product == 1.0 / 16.0,
               {{"variables", cycle}, {"assignment", 1}, {"joint", joint}, {"product", product}});
  }
  return {{"m1", o.m1}, {"m2", o.m2}};
}

Json moment_chain(const VerifyOptions&, Reporter& rep) {
  const std::vector<Message> msgs{1, 2, 3};
  const std::vector<std::pair<std::string, JointDistribution>> fixtures{
      {"xor 2x2", xor_family(2, 2)},
      {"xor 2x3", xor_family(2, 3)},
      {"codeword 3x2", joint_codeword_distribution(2, 2, 2, MessageMode::ZeroFree, msgs).to_distribution()}};
  const double slack = 1e-9;
  for (const auto& [name, dist] : fixtures) {
    const double mu = dist.mean_sum();
    for (unsigned k = 2; k <= std::min<std::size_t>(4, dist.variables()); ++k) {
      if (!test_kwise_ioef(dist, k)) continue;
      const auto c = ck_oracle(dist.m1(), dist.m2(), k);
      for (double gamma : {0.5, 1.0, 2.0}) {
        const double lambda = mu * (1.0 + gamma);
        const double tail = dist.tail(lambda);
        const double sss = sss_moment_value(dist, lambda, k);
        const double relaxed = forest_relaxed_value(dist, lambda, k);
        const double bound = lemma3_bound(dist.m1(), dist.m2(), k, mu, gamma, c.ck);
        const Json base{{"fixture", name}, {"k", k}, {"gamma", gamma}, {"lambda", lambda}};
        auto with = [&](double lhs, double rhs) {
          Json d = base;
          d["lhs"] = lhs;
          d["rhs"] = std::isinf(rhs) ? Json("inf") : Json(rhs);
          return d;
        };
        rep.record("tail <= moment value", tail <= sss + slack, with(tail, sss));
        rep.record("moment value <= forest relaxation", sss <= relaxed + slack, with(sss, relaxed));
        rep.record("forest relaxation <= bound", relaxed <= bound + slack, with(relaxed, bound));
      }
    }
  }
  return {{"slack", slack}};
}

Json cycle_partition(const VerifyOptions& o, Reporter& rep) {
  using Partition = std::map<std::size_t, std::uint64_t>;
  auto as_json = [](const Partition& p) {
    Json j = Json::object();
    for (const auto& [s, c] : p) j[std::to_string(s)] = c;
    return j;
  };
  const auto four = partition_by_cycles(2, 2, 4);
  rep.record("2x2 with 4 edges is one cycle", four == Partition{{1, 1}}, {{"partition", as_json(four)}});
  const auto three = partition_by_cycles(2, 2, 3);
  rep.record("2x2 with 3 edges is acyclic", three == Partition{{0, 4}}, {{"partition", as_json(three)}});
  for (std::size_t m1 = 1; m1 <= o.m_max; ++m1) {
    for (std::size_t m2 = 1; m2 <= o.m_max; ++m2) {
      for (std::size_t k = 0; k <= std::min(o.k_max, m1 * m2); ++k) {
        const auto part = partition_by_cycles(m1, m2, k);
        std::uint64_t total = 0;
        for (const auto& [s, c] : part) total += c;
        const std::uint64_t want = binomial_exact(m1 * m2, k);
        rep.record("class sizes sum to C(M1 M2, k)", total == want,
                   {{"m1", m1}, {"m2", m2}, {"k", k}, {"sum", total}, {"expected", want}});
      }
    }
  }
  return {{"m_max", o.m_max}, {"k_max", o.k_max}};
}

Json exponent(const VerifyOptions& o, Reporter& rep) {
  const std::uint64_t seed = require_seed(o);
  Rng rng(derive_seed(seed, streams::kSampler, 0));
  std::size_t done = 0;
  while (done < o.sets) {
    const double p = 0.01 + 0.29 * uniform_unit(rng);
    const double eps = 0.01 + 0.04 * uniform_unit(rng);
    const double rate = 1.0 - binary_entropy(p) - eps;
    if (rate <= 0.02) continue;
    const double r = 0.01 + (rate - 0.02) * uniform_unit(rng);
    const double n = 100.0 + std::floor(900.0 * uniform_unit(rng));
    if (!less_noisy(p, r)) continue;
    const auto c = exponent_max_check(n, p, r, eps, eps / 4.0);
    rep.record("peak identity, argmax and concavity", c.ok(),
               {{"n", n}, {"p", p}, {"r", r}, {"epsilon", eps}, {"identity_error", c.identity_error},
                {"grid_argmax", c.grid_argmax}, {"peak", c.peak}, {"grid_step", c.grid_step},
                {"max_second_difference", c.max_second_difference}});
    ++done;
  }
  return {{"sets", o.sets}, {"seed", seed}};
}

Json hamming(const VerifyOptions& o, Reporter& rep) {
  for (unsigned q = 0; q <= o.q_max; ++q) {
    for (unsigned t = 0; 2 * t <= q; ++t) {
      const auto volume = hamming_ball_volume(q, t);
      const double bound = entropy_bound(q, t);
      rep.record("volume <= entropy bound", static_cast<double>(volume) <= bound,
                 {{"q", q}, {"t", t}, {"volume", volume}, {"bound", bound}});
    }
  }
  return {{"q_max", o.q_max}};
}

Json threshold(const VerifyOptions& o, Reporter& rep) {
  const auto ps = parse_grid(o.p);
  const auto rs = parse_grid(o.r);
  const auto es = parse_grid(o.eps);
  for (double p : ps) {
    for (double r : rs) {
      for (double eps : es) {
        const double limit = 2.0 * (1.0 + binary_entropy(p) + r) / eps;
        unsigned half = 0;
        while (!(static_cast<double>(half) > limit)) ++half;
        const unsigned got = theorem1_threshold_k(p, r, eps);
        rep.record("threshold k matches direct count", got == 2 * half,
                   {{"p", p}, {"r", r}, {"epsilon", eps}, {"threshold_k", got}, {"expected", 2 * half},
                    {"exponent", theorem1_exponent(got, p, r, eps)}});
      }
    }
  }
  return {{"p", ps}, {"r", rs}, {"epsilon", es}};
}

const std::vector<std::pair<std::string, Suite>>& registry() {
  static const std::vector<std::pair<std::string, Suite>> suites{
      {"lemma1-exhaustive", joint_uniformity}, {"design-distance", design_distance},
      {"separating-family", separating},       {"ioef-xor", ioef_xor},
      {"moment-chain", moment_chain},          {"cycle-partition", cycle_partition},
      {"exponent-check", exponent},            {"hamming-ball", hamming},
      {"threshold-k", threshold},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, suite] : registry()) v.push_back(name);
    return v;
  }();
  return names;
}

int cmd_verify(const VerifyOptions& options, std::ostream& out) {
  const auto& suites = registry();
  const auto it = std::find_if(suites.begin(), suites.end(), [&](const auto& s) { return s.first == options.suite; });
  if (it == suites.end()) {
    std::string list;
    for (const auto& name : verify_suites()) list += "\n  " + name;
    throw UsageError("unknown suite '" + options.suite + "'; available suites:" + list);
  }
  std::ofstream file;
  if (!options.records.empty()) {
    file.open(options.records);
    if (!file) throw UsageError("cannot write " + options.records);
  }
  Reporter reporter(options.suite, options.records.empty() ? out : file);
  const Json parameters = it->second(options, reporter);

  Json summary;
  summary["schema"] = kSchema;
  summary["type"] = "summary";
  summary["command"] = "verify";
  summary["suite"] = options.suite;
  summary["parameters"] = parameters;
  summary["assertions"] = reporter.count();
  summary["failures"] = reporter.failures();
  summary["pass"] = reporter.failures() == 0;
  summary["records"] = options.records.empty() ? Json(nullptr) : Json(options.records);
  out << summary.dump() << '\n';
  return reporter.failures() == 0 ? kExitSuccess : kExitVerificationFailure;
}

}  // namespace pseudolinear::cli
