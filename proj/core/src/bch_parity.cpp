#include "pseudolinear/bch_parity.hpp"

#include "pseudolinear/combinatorics.hpp"
#include "pseudolinear/errors.hpp"

namespace pseudolinear {

ParityCheck::ParityCheck(unsigned width, unsigned k, std::optional<std::uint32_t> polynomial)
    : field_(width, polynomial), k_(k) {
  if (k < 2) throw InvalidArgument("parity check requires k >= 2");
  if (k > field_.order()) throw InvalidArgument("k exceeds the number of columns 2^w - 1");
}

FiniteField::Element ParityCheck::element_for(std::uint64_t u) const {
  if (u == 0 || u > columns()) throw InvalidArgument("column index out of range");
  return field_.exp(u - 1);
}

BitVector ParityCheck::column(std::uint64_t u) const {
  if (u > columns()) throw InvalidArgument("message index out of range for parity check");
  BitVector h(rows());
  if (u == 0) return h;
  const unsigned w = width();
  const FiniteField::Element beta = element_for(u);
  FiniteField::Element power = beta;
  for (unsigned j = 0; j < k_; ++j) {
    for (unsigned i = 0; i < w; ++i) {
      if ((power >> i) & 1U) h.set(static_cast<std::size_t>(j) * w + i);
    }
    power = field_.mul(power, beta);
  }
  return h;
}

BitMatrix ParityCheck::matrix(std::uint64_t max_columns) const {
  if (columns() > max_columns) {
    throw GuardExceeded("parity-check matrix too wide to materialize", static_cast<double>(columns()),
                        static_cast<double>(max_columns));
  }
  std::vector<BitVector> cols;
  cols.reserve(columns());
  for (std::uint64_t u = 1; u <= columns(); ++u) cols.push_back(column(u));
  return BitMatrix::from_columns(cols, rows());
}

std::vector<std::string> ParityCheck::hex_rows(std::uint64_t max_columns) const {
  const BitMatrix h = matrix(max_columns);
  std::vector<std::string> out;
  out.reserve(h.rows());
  for (std::size_t r = 0; r < h.rows(); ++r) out.push_back(h.row(r).to_hex());
  return out;
}

ParityCheck build_parity_check(unsigned width, unsigned k, std::optional<std::uint32_t> polynomial) {
  return ParityCheck(width, k, polynomial);
}

namespace {

// Depth-first over combinations, sharing the echelon basis of each prefix.
bool extend_independent(std::span<const BitVector> columns, std::size_t start, std::size_t remaining,
                        XorBasis& basis) {
  if (remaining == 0) return true;
  for (std::size_t c = start; c + remaining <= columns.size(); ++c) {
    if (!basis.insert(columns[c])) return false;
    const bool ok = extend_independent(columns, c + 1, remaining - 1, basis);
    basis.pop_back();
    if (!ok) return false;
  }
  return true;
}

}  // namespace

bool all_k_subsets_independent(std::span<const BitVector> columns, std::size_t k, double guard) {
  const double subsets = binomial(columns.size(), k);
  if (subsets > guard) throw GuardExceeded("too many column subsets to enumerate", subsets, guard);
  if (k == 0 || k > columns.size()) return true;
  XorBasis basis(columns.front().size());
  return extend_independent(columns, 0, k, basis);
}

bool verify_design_distance(const ParityCheck& pc, double guard) {
  const double subsets = binomial(pc.columns(), pc.k());
  if (subsets > guard) throw GuardExceeded("too many column subsets to enumerate", subsets, guard);
  std::vector<BitVector> cols;
  cols.reserve(pc.columns());
  for (std::uint64_t u = 1; u <= pc.columns(); ++u) cols.push_back(pc.column(u));
  return all_k_subsets_independent(cols, pc.k(), guard);
}

bool verify_design_distance(const BitMatrix& h, std::size_t k, double guard) {
  std::vector<BitVector> cols;
  cols.reserve(h.cols());
  for (std::size_t c = 0; c < h.cols(); ++c) cols.push_back(h.column(c));
  return all_k_subsets_independent(cols, k, guard);
}

}  // namespace pseudolinear
