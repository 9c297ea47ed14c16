#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pseudolinear::cli {

using Json = nlohmann::ordered_json;

/// Version tag carried by every summary document and record.
inline constexpr const char* kSchema = "pseudolinear-cli/1";

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitUsage = 2;

/// A configuration the command cannot run with. Maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BuildOptions {
  std::size_t n = 0;
  std::optional<unsigned> rn;
  std::optional<double> rate;
  unsigned k = 0;
  std::string mode = "zero-free";
  std::optional<std::uint64_t> seed;
  std::optional<std::uint32_t> polynomial;
  std::string out;
  double audit_guard = 1e7;
};

struct SimulateOptions {
  std::string code;
  std::optional<std::size_t> n;
  std::optional<unsigned> rn;
  std::optional<double> rate;
  std::optional<unsigned> k;
  std::string mode = "zero-free";
  std::optional<std::uint64_t> code_seed;
  double p = 0.0;
  double r = 0.0;
  double delta = 0.1;
  double epsilon = 0.05;
  std::optional<double> theta;
  std::string strategy = "myopic-greedy";
  std::uint64_t trials = 1000;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::string z;
  std::size_t candidate_pool = 4096;
  std::string trial_log;
};

struct VerifyOptions {
  std::string suite;
  std::optional<std::size_t> n;
  std::optional<unsigned> rn;
  std::optional<unsigned> k;
  std::string mode = "zero-free";
  std::optional<std::uint64_t> seed;
  std::string widths = "2,3,4";
  std::string ks = "2,3,4";
  unsigned rn_max = 10;
  std::uint64_t trials = 1000;
  std::size_t m1 = 2;
  std::size_t m2 = 2;
  std::size_t m_max = 3;
  std::size_t k_max = 5;
  std::size_t sets = 20;
  unsigned q_max = 20;
  std::string p = "0.01,0.05,0.1,0.2";
  std::string r = "0.05,0.2";
  std::string eps = "0.05,0.1";
  std::string records;
};

struct BoundsOptions {
  std::string table;
  std::string format = "csv";
  std::string out;
  /// Grid text per column name ("mu", "gamma_k", ...); empty means the
  /// table's default grid.
  std::map<std::string, std::string> grids;
};

int cmd_build(const BuildOptions& options, std::ostream& out);
int cmd_simulate(const SimulateOptions& options, std::ostream& out);
int cmd_verify(const VerifyOptions& options, std::ostream& out);
int cmd_bounds(const BoundsOptions& options, std::ostream& out);

/// Suite names accepted by cmd_verify, in listing order.
const std::vector<std::string>& verify_suites();

/// Table names accepted by cmd_bounds, and every grid column any table reads.
const std::vector<std::string>& bounds_tables();
const std::vector<std::string>& bounds_grid_columns();

/// Rn from an explicit bit count or a rate: floor(R n), with the same 1e-9
/// allowance as the channel budgets. Exactly one must be given.
unsigned resolve_message_bits(std::size_t n, std::optional<unsigned> rn, std::optional<double> rate);

}  // namespace pseudolinear::cli
