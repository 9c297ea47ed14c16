#include "commands.hpp"

#include <pseudolinear/bch_parity.hpp>
#include <pseudolinear/combinatorics.hpp>
#include <pseudolinear/plcode.hpp>

#include <cmath>
#include <fstream>

namespace pseudolinear::cli {

unsigned resolve_message_bits(std::size_t n, std::optional<unsigned> rn, std::optional<double> rate) {
  if (rn.has_value() == rate.has_value()) throw UsageError("give exactly one of --rn and --rate");
  if (rn) return *rn;
  if (!(*rate > 0.0)) throw UsageError("--rate must be positive");
  const double bits = std::floor(*rate * static_cast<double>(n) + 1e-9);
  if (bits < 1.0 || bits > 64.0) throw UsageError("--rate gives no usable message length");
  return static_cast<unsigned>(bits);
}

int cmd_build(const BuildOptions& options, std::ostream& out) {
  const unsigned rn = resolve_message_bits(options.n, options.rn, options.rate);
  if (!options.seed) throw UsageError("--seed is required");
  const auto mode = parse_message_mode(options.mode);
  const auto code = sample_code(options.n, rn, options.k, mode, *options.seed, options.polynomial);
  const auto& pc = code.parity_check();

  Json audit;
  const double subsets = binomial(pc.columns(), pc.k());
  audit["subsets"] = subsets;
  audit["guard"] = options.audit_guard;
  bool audit_failed = false;
  if (subsets <= options.audit_guard) {
    const bool ok = verify_design_distance(pc, options.audit_guard);
    audit["status"] = ok ? "pass" : "fail";
    audit_failed = !ok;
  } else {
    audit["status"] = "skipped";
  }

  if (!options.out.empty()) {
    std::ofstream file(options.out);
    if (!file) throw UsageError("cannot write " + options.out);
    write_code(file, code);
  }

  Json summary;
  summary["schema"] = kSchema;
  summary["type"] = "summary";
  summary["command"] = "build";
  summary["n"] = code.n();
  summary["rn"] = code.message_bits();
  summary["k"] = code.k();
  summary["m"] = code.m();
  summary["width"] = pc.width();
  summary["mode"] = to_string(mode);
  summary["messages"] = code.message_count();
  summary["rate"] = code.rate();
  summary["seed"] = *options.seed;
  summary["polynomial"] = pc.field().polynomial();
  summary["design_distance"] = audit;
  summary["code_file"] = options.out.empty() ? Json(nullptr) : Json(options.out);
  out << summary.dump(2) << '\n';
  return audit_failed ? kExitVerificationFailure : kExitSuccess;
}

}  // namespace pseudolinear::cli
