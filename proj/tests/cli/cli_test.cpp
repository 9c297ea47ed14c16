#include <gtest/gtest.h>

#include <cli.hpp>
#include <commands.hpp>
#include <grid.hpp>

#include <pseudolinear/awtc.hpp>
#include <pseudolinear/bch_parity.hpp>
#include <pseudolinear/plcode.hpp>
#include <pseudolinear/tail_bounds.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using pseudolinear::cli::Json;
using pseudolinear::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<Json> json_lines(const std::string& text) {
  std::vector<Json> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) lines.push_back(Json::parse(line));
  }
  return lines;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream cs(line);
    for (std::string cell; std::getline(cs, cell, ',');) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("plcode-cli-test-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                         "-" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

// Compares against tests/golden/<name>; PSEUDOLINEAR_UPDATE_GOLDEN=1 rewrites it.
void expect_golden(const std::string& name, const std::string& actual) {
  const fs::path path = fs::path(PSEUDOLINEAR_GOLDEN_DIR) / name;
  if (std::getenv("PSEUDOLINEAR_UPDATE_GOLDEN")) {
    std::ofstream(path) << actual;
    return;
  }
  ASSERT_TRUE(fs::exists(path)) << path;
  EXPECT_EQ(slurp(path), actual) << "golden mismatch: " << name;
}

}  // namespace

TEST(Golden, BuildSummaryAndCodeFile) {
  TempDir tmp;
  const auto r = invoke({"build", "--n", "24", "--rn", "6", "--k", "4", "--seed", "1", "--out", tmp.file("code.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto summary = Json::parse(r.out);
  summary["code_file"] = "code.txt";
  expect_golden("build_summary.json", summary.dump(2) + "\n");
  expect_golden("build_code.txt", slurp(tmp.file("code.txt")));
}

TEST(Golden, SimulateSummary) {
  const auto r = invoke({"simulate", "--n", "8", "--rn", "4", "--k", "2", "--code-seed", "2", "--p", "0.125", "--r",
                         "0.25", "--strategy", "exhaustive-worst-case", "--trials", "300", "--seed", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  expect_golden("simulate_summary.json", r.out);
}

TEST(Golden, VerifyIoefXorRecords) {
  const auto r = invoke({"verify", "ioef-xor"});
  ASSERT_EQ(r.code, 0) << r.err;
  expect_golden("verify_ioef_xor.jsonl", r.out);
}

TEST(Golden, BoundsErrorExponentTable) {
  const auto r = invoke({"bounds", "theorem1"});
  ASSERT_EQ(r.code, 0) << r.err;
  expect_golden("bounds_theorem1.csv", r.out);
}

TEST(Build, AuditPassesAndMatchesLibrary) {
  const auto r = invoke({"build", "--n", "24", "--rn", "6", "--k", "4", "--seed", "11"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["m"], 24);
  EXPECT_EQ(j["design_distance"]["status"], "pass");
  EXPECT_TRUE(pseudolinear::verify_design_distance(pseudolinear::ParityCheck(6, 4)));
  EXPECT_EQ(j["schema"], pseudolinear::cli::kSchema);
}

TEST(Build, SameSeedSameFile) {
  TempDir tmp;
  for (const char* name : {"a.txt", "b.txt"}) {
    ASSERT_EQ(invoke({"build", "--n", "20", "--rn", "5", "--k", "3", "--seed", "77", "--out", tmp.file(name)}).code, 0);
  }
  EXPECT_EQ(slurp(tmp.file("a.txt")), slurp(tmp.file("b.txt")));
  ASSERT_EQ(invoke({"build", "--n", "20", "--rn", "5", "--k", "3", "--seed", "78", "--out", tmp.file("c.txt")}).code, 0);
  EXPECT_NE(slurp(tmp.file("a.txt")), slurp(tmp.file("c.txt")));
  std::ifstream in(tmp.file("a.txt"));
  const auto code = pseudolinear::read_code(in);
  EXPECT_EQ(code.generator(), pseudolinear::sample_code(20, 5, 3, pseudolinear::MessageMode::ZeroFree, 77).generator());
}

TEST(Build, RejectsBadRanges) {
  const auto r = invoke({"build", "--n", "4", "--rn", "6", "--k", "2", "--seed", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("Rn"), std::string::npos);
  EXPECT_EQ(invoke({"build", "--n", "4", "--rn", "2", "--k", "2"}).code, 2);
  EXPECT_EQ(invoke({"build", "--n", "4", "--rn", "2", "--rate", "0.5", "--k", "2", "--seed", "1"}).code, 2);
  EXPECT_EQ(invoke({"build", "--n", "4", "--rn", "2", "--k", "2", "--seed", "1", "--mode", "odd"}).code, 2);
}

TEST(Build, RateSelectsFlooredMessageBits) {
  const auto r = invoke({"build", "--n", "24", "--rate", "0.3", "--k", "2", "--seed", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["rn"], 7);
}

TEST(Simulate, ZeroFlipBudgetNeverErrs) {
  const auto r = invoke({"simulate", "--n", "12", "--rn", "4", "--k", "2", "--code-seed", "3", "--p", "0", "--r", "0.5",
                         "--trials", "200", "--seed", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["channel"]["flip_budget"], 0);
  EXPECT_EQ(j["errors"], 0);
  EXPECT_EQ(j["estimate"], 0.0);
}

TEST(Simulate, SeedReproducibleAcrossThreads) {
  const std::vector<std::string> base{"simulate", "--n", "16", "--rn", "5", "--k", "2", "--code-seed", "9", "--p",
                                      "0.125", "--r", "0.25", "--trials", "150", "--seed", "21"};
  auto one = base;
  one.insert(one.end(), {"--threads", "1"});
  auto three = base;
  three.insert(three.end(), {"--threads", "3"});
  const auto a = invoke(one);
  const auto b = invoke(three);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, invoke(one).out);
}

TEST(Simulate, TinyInstanceMatchesExhaustiveComputation) {
  using namespace pseudolinear;
  TempDir tmp;
  const std::string log = tmp.file("trials.jsonl");
  const auto r = invoke({"simulate", "--n", "6", "--rn", "3", "--k", "2", "--code-seed", "5", "--p", "0.17", "--r",
                         "0.17", "--strategy", "exhaustive-worst-case", "--z", "2", "--trials", "4000", "--seed", "8",
                         "--trial-log", log});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto summary = Json::parse(r.out);

  // The strategy is deterministic and Z is fixed, so the error event is a
  // function of the message; average it over the message set.
  auto book = std::make_shared<const Codebook>(sample_code(6, 3, 2, MessageMode::ZeroFree, 5));
  const ChannelParams params(6, 0.17, 0.17);
  ASSERT_EQ(params.flip_budget(), 1u);
  const auto strategy = make_strategy(StrategyKind::ExhaustiveWorstCase, book, params);
  std::map<std::uint64_t, bool> errs;
  double exact = 0.0;
  for (std::size_t i = 0; i < book->size(); ++i) {
    const auto rec = transmit(*strategy, book->message(i), {2}, 0);
    errs[book->message(i)] = rec.is_error;
    exact += rec.is_error;
  }
  exact /= static_cast<double>(book->size());
  EXPECT_LE(summary["ci_low"].get<double>(), exact);
  EXPECT_GE(summary["ci_high"].get<double>(), exact);

  const auto trials = json_lines(slurp(log));
  ASSERT_EQ(trials.size(), 4000u);
  std::uint64_t logged_errors = 0;
  for (const auto& t : trials) {
    EXPECT_EQ(t["decoding_error"].get<bool>(), errs.at(t["message"].get<std::uint64_t>()));
    EXPECT_EQ(t["z"], Json::array({2}));
    logged_errors += t["decoding_error"].get<bool>();
  }
  EXPECT_EQ(logged_errors, summary["errors"].get<std::uint64_t>());
}

TEST(Simulate, UsageErrors) {
  EXPECT_EQ(invoke({"simulate", "--p", "0.1", "--r", "0.1", "--seed", "1"}).code, 2);
  EXPECT_EQ(invoke({"simulate", "--n", "8", "--rn", "3", "--k", "2", "--p", "0.1", "--r", "0.1", "--seed", "1"}).code, 2);
  EXPECT_EQ(invoke({"simulate", "--n", "8", "--rn", "3", "--k", "2", "--code-seed", "1", "--p", "0.1", "--r", "0.25",
                    "--seed", "1", "--z", "0,1,9"})
                .code,
            2);
  EXPECT_EQ(invoke({"simulate", "--n", "8", "--rn", "3", "--k", "2", "--code-seed", "1", "--p", "0.6", "--r", "0.1",
                    "--seed", "1"})
                .code,
            2);
}

TEST(Verify, JointUniformityPasses) {
  const auto r = invoke({"verify", "lemma1-exhaustive", "--n", "2", "--rn", "2", "--k", "2"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto lines = json_lines(r.out);
  ASSERT_EQ(lines.size(), 4u);
  for (std::size_t i = 0; i + 1 < lines.size(); ++i) {
    EXPECT_EQ(lines[i]["type"], "assertion");
    EXPECT_TRUE(lines[i]["pass"].get<bool>());
    EXPECT_EQ(lines[i]["detail"]["expected_count"], 16.0);
  }
  EXPECT_EQ(lines.back()["type"], "summary");
  EXPECT_TRUE(lines.back()["pass"].get<bool>());
}

TEST(Verify, ZeroMessageBreaksUniformityWithWitness) {
  const auto r = invoke({"verify", "lemma1-exhaustive", "--mode", "paper-faithful"});
  EXPECT_EQ(r.code, 1);
  const auto lines = json_lines(r.out);
  const auto& first = lines.front();
  EXPECT_FALSE(first["pass"].get<bool>());
  EXPECT_EQ(first["detail"]["messages"], Json::array({0, 1}));
  EXPECT_TRUE(first["detail"].contains("witness"));
}

TEST(Verify, EverySuiteRuns) {
  for (const auto& suite : pseudolinear::cli::verify_suites()) {
    const auto r = invoke({"verify", suite, "--seed", "5"});
    EXPECT_EQ(r.code, 0) << suite << ": " << r.err;
    const auto lines = json_lines(r.out);
    ASSERT_FALSE(lines.empty());
    EXPECT_EQ(lines.back()["suite"], suite);
    EXPECT_GT(lines.back()["assertions"].get<int>(), 0) << suite;
  }
}

TEST(Verify, RecordsFileSeparatesSummary) {
  TempDir tmp;
  const auto r = invoke({"verify", "hamming-ball", "--q-max", "4", "--records", tmp.file("rec.jsonl")});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json_lines(r.out).size(), 1u);
  EXPECT_EQ(json_lines(slurp(tmp.file("rec.jsonl"))).size(), 9u);
}

TEST(Verify, UnknownSuiteListsAvailable) {
  const auto r = invoke({"verify", "ioef-xr"});
  EXPECT_EQ(r.code, 2);
  for (const auto& suite : pseudolinear::cli::verify_suites()) EXPECT_NE(r.err.find(suite), std::string::npos);
  EXPECT_EQ(invoke({"verify", "exponent-check"}).code, 2);
}

TEST(Bounds, ExponentChangesSignAtThreshold) {
  const auto r = invoke({"bounds", "theorem1", "--k", "130:138:2", "--p", "0.1", "--r", "0.2", "--eps", "0.05"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 6u);
  const auto& header = rows[0];
  const auto col = [&](const std::string& name) {
    return static_cast<std::size_t>(std::find(header.begin(), header.end(), name) - header.begin());
  };
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double k = std::stod(rows[i][col("k")]);
    EXPECT_EQ(std::stod(rows[i][col("threshold_k")]), 134.0);
    EXPECT_EQ(std::stod(rows[i][col("exponent")]) < 0.0, k >= 134.0) << k;
  }
}

TEST(Bounds, KwiseTableDecreasesInGammaAndMatchesLibrary) {
  const auto r = invoke({"bounds", "lemma2", "--m", "50", "--k", "4", "--mu", "5", "--gamma", "0.5:3:0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 7u);
  double previous = INFINITY;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double gamma = std::stod(rows[i][3]);
    const double bound = std::stod(rows[i][4]);
    EXPECT_LT(bound, previous);
    EXPECT_DOUBLE_EQ(bound, pseudolinear::lemma2_bound(50, 4, 5.0, gamma));
    previous = bound;
  }
}

TEST(Bounds, JsonlRowsAndOracleConstant) {
  const auto r = invoke({"bounds", "lemma3", "--k", "4", "--gamma", "1", "--format", "jsonl"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto lines = json_lines(r.out);
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0]["ck"], "oracle");
  EXPECT_DOUBLE_EQ(lines[0]["ck_used"].get<double>(), pseudolinear::ck_oracle(3, 3, 4).ck);
  EXPECT_EQ(lines[1]["rows"], 1);
}

TEST(Bounds, UsageErrors) {
  EXPECT_EQ(invoke({"bounds", "lemma7"}).code, 2);
  EXPECT_EQ(invoke({"bounds", "lemma2", "--theta", "0.1"}).code, 2);
  EXPECT_EQ(invoke({"bounds", "lemma2", "--k", "2:x"}).code, 2);
  EXPECT_EQ(invoke({"bounds", "theorem1", "--ck", "oracle"}).code, 2);
}

TEST(Config, FileSuppliesOptionsAndFlagsWin) {
  TempDir tmp;
  std::ofstream(tmp.file("cfg.json")) << R"({"n": 24, "rn": 6, "k": 4, "seed": 9, "mode": "zero-free"})";
  const auto from_file = invoke({"build", "--config", tmp.file("cfg.json")});
  ASSERT_EQ(from_file.code, 0) << from_file.err;
  EXPECT_EQ(Json::parse(from_file.out)["rn"], 6);
  EXPECT_EQ(Json::parse(from_file.out)["seed"], 9);
  const auto overridden = invoke({"build", "--config", tmp.file("cfg.json"), "--rn", "8"});
  ASSERT_EQ(overridden.code, 0) << overridden.err;
  EXPECT_EQ(Json::parse(overridden.out)["rn"], 8);
  EXPECT_EQ(Json::parse(overridden.out)["seed"], 9);

  std::ofstream(tmp.file("bad.json")) << R"({"n": 24, "bogus": 1})";
  EXPECT_EQ(invoke({"build", "--config", tmp.file("bad.json"), "--rn", "2", "--k", "2", "--seed", "1"}).code, 2);
  std::ofstream(tmp.file("broken.json")) << "{";
  EXPECT_EQ(invoke({"build", "--config", tmp.file("broken.json")}).code, 2);
}

TEST(Config, ListValuesAndNestedSections) {
  TempDir tmp;
  std::ofstream(tmp.file("cfg.json")) << R"({"verify": {"q-max": 3}, "bounds": {"k": "2,4"}})";
  const auto r = invoke({"verify", "hamming-ball", "--config", tmp.file("cfg.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json_lines(r.out).back()["parameters"]["q_max"], 3);
}

TEST(Cli, HelpAndMissingSubcommand) {
  const auto help = invoke({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("simulate"), std::string::npos);
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
}

TEST(Grid, ListsAndRanges) {
  using pseudolinear::cli::parse_grid;
  EXPECT_EQ(parse_grid("0.5,1:3,10:20:5"), (std::vector<double>{0.5, 1, 2, 3, 10, 15, 20}));
  EXPECT_EQ(parse_grid("0.1:0.3:0.1").size(), 3u);
  EXPECT_THROW(parse_grid(""), pseudolinear::cli::UsageError);
  EXPECT_THROW(parse_grid("3:1"), pseudolinear::cli::UsageError);
  EXPECT_THROW(parse_grid("1:2:0"), pseudolinear::cli::UsageError);
  EXPECT_THROW(pseudolinear::cli::parse_integer_grid("1.5"), pseudolinear::cli::UsageError);
  EXPECT_EQ(pseudolinear::cli::format_number(0.1), "0.1");
  EXPECT_EQ(pseudolinear::cli::format_number(INFINITY), "inf");
}
