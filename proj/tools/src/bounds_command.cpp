#include "commands.hpp"
#include "grid.hpp"

#include <pseudolinear/tail_bounds.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>

namespace pseudolinear::cli {

namespace {

struct Column {
  std::string name;
  std::string default_grid;
};

using Row = std::vector<double>;

struct Table {
  std::string name;
  std::vector<Column> inputs;
  std::vector<std::string> outputs;
  std::function<Row(const Row&)> compute;
};

unsigned as_unsigned(double v, const char* what) {
  if (v < 0.0 || v != std::floor(v) || v > 1e9) throw UsageError(std::string(what) + " must be a non-negative integer");
  return static_cast<unsigned>(v);
}

constexpr double kOracle = std::numeric_limits<double>::quiet_NaN();

const std::vector<Table>& tables() {
  static const std::vector<Table> all{
      {"lemma2",
       {{"m", "100"}, {"k", "2,4,6,8"}, {"mu", "10"}, {"gamma", "0.5,1,2"}},
       {"bound"},
       [](const Row& in) {
         return Row{lemma2_bound(as_unsigned(in[0], "m"), as_unsigned(in[1], "k"), in[2], in[3])};
       }},
      {"lemma3",
       {{"m1", "3"}, {"m2", "3"}, {"k", "2,3,4"}, {"mu", "2"}, {"gamma", "0.5,1,2"}, {"ck", "oracle"}},
       {"ck_used", "bound"},
       [](const Row& in) {
         const unsigned m1 = as_unsigned(in[0], "m1");
         const unsigned m2 = as_unsigned(in[1], "m2");
         const unsigned k = as_unsigned(in[2], "k");
         const double ck = std::isnan(in[5]) ? ck_oracle(m1, m2, k).ck : in[5];
         return Row{ck, lemma3_bound(m1, m2, k, in[3], in[4], ck)};
       }},
      {"lemma5",
       {{"n", "100,1000"}, {"k", "2,4,6,8"}, {"theta", "0.0125"}, {"r", "0.2"}, {"alpha", "1"}},
       {"bound"},
       [](const Row& in) { return Row{lemma5_bound(in[0], as_unsigned(in[1], "k"), in[2], in[3], in[4])}; }},
      {"lemma10",
       {{"n", "100,1000"}, {"k", "2,4,6,8"}, {"eps", "0.05"}, {"delta", "0.1"}, {"gamma_k", "1"}},
       {"bound"},
       [](const Row& in) { return Row{lemma10_bound(in[0], as_unsigned(in[1], "k"), in[2], in[3], in[4])}; }},
      {"theorem1",
       {{"n", "1000"}, {"k", "2,64,128,134,136,256"}, {"p", "0.1"}, {"r", "0.2"}, {"eps", "0.05"},
        {"delta", "0.1"}, {"ck", "1"}},
       {"exponent", "log2_bound", "bound", "threshold_k"},
       [](const Row& in) {
         if (std::isnan(in[6])) throw UsageError("the theorem1 table needs a numeric --ck");
         const unsigned k = as_unsigned(in[1], "k");
         return Row{theorem1_exponent(k, in[2], in[3], in[4]),
                    theorem1_log2_bound(in[0], k, in[2], in[3], in[4], in[5], in[6]),
                    theorem1_bound(in[0], k, in[2], in[3], in[4], in[5], in[6]),
                    static_cast<double>(theorem1_threshold_k(in[2], in[3], in[4]))};
       }},
      {"threshold",
       {{"p", "0.01,0.05,0.1,0.2"}, {"r", "0.1,0.2"}, {"eps", "0.05,0.1"}},
       {"threshold_k", "exponent_at_k", "exponent_at_k_minus_2"},
       [](const Row& in) {
         const unsigned k = theorem1_threshold_k(in[0], in[1], in[2]);
         return Row{static_cast<double>(k), theorem1_exponent(k, in[0], in[1], in[2]),
                    theorem1_exponent(k - 2, in[0], in[1], in[2])};
       }},
  };
  return all;
}

std::vector<double> column_values(const Column& col, const std::map<std::string, std::string>& grids) {
  const auto it = grids.find(col.name);
  const std::string text = it != grids.end() && !it->second.empty() ? it->second : col.default_grid;
  if (text == "oracle") {
    if (col.name != "ck") throw UsageError("only --ck accepts 'oracle'");
    return {kOracle};
  }
  return parse_grid(text);
}

}  // namespace

const std::vector<std::string>& bounds_tables() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& t : tables()) v.push_back(t.name);
    return v;
  }();
  return names;
}

const std::vector<std::string>& bounds_grid_columns() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& t : tables()) {
      for (const auto& c : t.inputs) {
        if (std::find(v.begin(), v.end(), c.name) == v.end()) v.push_back(c.name);
      }
    }
    return v;
  }();
  return names;
}

int cmd_bounds(const BoundsOptions& options, std::ostream& out) {
  const auto& all = tables();
  const auto it = std::find_if(all.begin(), all.end(), [&](const Table& t) { return t.name == options.table; });
  if (it == all.end()) {
    std::string list;
    for (const auto& name : bounds_tables()) list += " " + name;
    throw UsageError("unknown table '" + options.table + "'; available:" + list);
  }
  if (options.format != "csv" && options.format != "jsonl") throw UsageError("--format must be csv or jsonl");
  const Table& table = *it;
  for (const auto& [name, text] : options.grids) {
    const bool used = std::any_of(table.inputs.begin(), table.inputs.end(), [&](const Column& c) { return c.name == name; });
    if (!text.empty() && !used) throw UsageError("table " + table.name + " does not read --" + name);
  }

  std::vector<std::vector<double>> values;
  for (const auto& col : table.inputs) values.push_back(column_values(col, options.grids));

  std::ofstream file;
  if (!options.out.empty()) {
    file.open(options.out);
    if (!file) throw UsageError("cannot write " + options.out);
  }
  std::ostream& sink = options.out.empty() ? out : file;
  const bool csv = options.format == "csv";

  if (csv) {
    std::string header;
    for (const auto& c : table.inputs) header += (header.empty() ? "" : ",") + c.name;
    for (const auto& o : table.outputs) header += "," + o;
    sink << header << '\n';
  }

  std::vector<std::size_t> index(values.size(), 0);
  std::uint64_t rows = 0;
  bool done = false;
  while (!done) {
    Row in;
    for (std::size_t c = 0; c < values.size(); ++c) in.push_back(values[c][index[c]]);
    const Row result = table.compute(in);
    if (csv) {
      std::string line;
      for (std::size_t c = 0; c < in.size(); ++c) {
        line += (c ? "," : "") + (std::isnan(in[c]) ? std::string("oracle") : format_number(in[c]));
      }
      for (double v : result) line += "," + format_number(v);
      sink << line << '\n';
    } else {
      Json j;
      j["schema"] = kSchema;
      j["type"] = "row";
      j["table"] = table.name;
      for (std::size_t c = 0; c < in.size(); ++c) {
        j[table.inputs[c].name] = std::isnan(in[c]) ? Json("oracle") : Json(in[c]);
      }
      for (std::size_t c = 0; c < result.size(); ++c) {
        j[table.outputs[c]] = std::isfinite(result[c]) ? Json(result[c]) : Json(format_number(result[c]));
      }
      sink << j.dump() << '\n';
    }
    ++rows;
    // Odometer over the grids, last column fastest.
    std::size_t c = values.size();
    while (true) {
      if (c == 0) {
        done = true;
        break;
      }
      --c;
      if (++index[c] < values[c].size()) break;
      index[c] = 0;
    }
  }
  if (!csv) {
    Json summary;
    summary["schema"] = kSchema;
    summary["type"] = "summary";
    summary["command"] = "bounds";
    summary["table"] = table.name;
    summary["rows"] = rows;
    sink << summary.dump() << '\n';
  }
  return kExitSuccess;
}

}  // namespace pseudolinear::cli
