#include "pseudolinear/bitlinalg.hpp"

#include <algorithm>

#include "pseudolinear/errors.hpp"

namespace pseudolinear {

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

BitVector BitVector::from_string(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i);
    } else if (bits[i] != '0') {
      throw InvalidArgument("bit string may only contain '0' and '1'");
    }
  }
  return v;
}

BitVector BitVector::from_hex(std::string_view hex, std::size_t length) {
  if (hex.size() != (length + 3) / 4) throw ParseError("hex row has wrong number of digits");
  BitVector v(length);
  for (std::size_t d = 0; d < hex.size(); ++d) {
    const int nibble = hex_value(hex[d]);
    if (nibble < 0) throw ParseError("invalid hex digit");
    for (std::size_t b = 0; b < 4; ++b) {
      const bool bit = (nibble >> (3 - b)) & 1;
      const std::size_t idx = 4 * d + b;
      if (idx >= length) {
        if (bit) throw ParseError("hex row has bits set past its length");
        continue;
      }
      if (bit) v.set(idx);
    }
  }
  return v;
}

BitVector BitVector::from_word(std::uint64_t value, std::size_t length) {
  if (length > kWordBits) throw InvalidArgument("from_word supports at most 64 bits");
  BitVector v(length);
  if (length == 0) return v;
  const Word mask = length == kWordBits ? ~Word{0} : ((Word{1} << length) - 1);
  v.words_[0] = value & mask;
  return v;
}

bool BitVector::test(std::size_t i) const {
  if (i >= size_) throw InvalidArgument("bit index out of range");
  return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
}

void BitVector::set(std::size_t i, bool value) {
  if (i >= size_) throw InvalidArgument("bit index out of range");
  const Word mask = Word{1} << (i % kWordBits);
  if (value) {
    words_[i / kWordBits] |= mask;
  } else {
    words_[i / kWordBits] &= ~mask;
  }
}

void BitVector::flip(std::size_t i) {
  if (i >= size_) throw InvalidArgument("bit index out of range");
  words_[i / kWordBits] ^= Word{1} << (i % kWordBits);
}

std::size_t BitVector::find_first() const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[w]));
  }
  return size_;
}

void BitVector::check_same_size(const BitVector& other) const {
  if (size_ != other.size_) throw InvalidArgument("bit vector length mismatch");
}

BitVector& BitVector::operator^=(const BitVector& other) {
  check_same_size(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

BitVector& BitVector::operator&=(const BitVector& other) {
  check_same_size(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  return *this;
}

bool BitVector::dot(const BitVector& other) const {
  check_same_size(other);
  Word acc = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
  return std::popcount(acc) & 1;
}

BitVector BitVector::select(std::span<const std::size_t> coords) const {
  BitVector out(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (test(coords[i])) out.set(i);
  }
  return out;
}

std::string BitVector::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (test(i)) s[i] = '1';
  }
  return s;
}

std::string BitVector::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s((size_ + 3) / 4, '0');
  for (std::size_t d = 0; d < s.size(); ++d) {
    int nibble = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t idx = 4 * d + b;
      if (idx < size_ && test(idx)) nibble |= 1 << (3 - b);
    }
    s[d] = kDigits[nibble];
  }
  return s;
}

std::uint64_t BitVector::to_word() const {
  if (size_ > kWordBits) throw InvalidArgument("to_word supports at most 64 bits");
  return words_.empty() ? 0 : words_[0];
}

std::size_t hamming_distance(const BitVector& a, const BitVector& b) {
  if (a.size() != b.size()) throw InvalidArgument("bit vector length mismatch");
  return hamming_distance(a.words(), b.words());
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BitMatrix BitMatrix::from_rows(std::vector<BitVector> rows, std::size_t cols) {
  BitMatrix m;
  m.cols_ = rows.empty() ? cols : rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != m.cols_) throw InvalidArgument("matrix rows must have equal length");
  }
  m.rows_ = std::move(rows);
  return m;
}

BitMatrix BitMatrix::from_columns(std::span<const BitVector> columns, std::size_t rows) {
  BitMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw InvalidArgument("matrix columns must have equal length");
    for (std::size_t r = 0; r < rows; ++r) {
      if (columns[c].test(r)) m.set(r, c);
    }
  }
  return m;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool value) { row_mut(r).set(c, value); }

const BitVector& BitMatrix::row(std::size_t r) const {
  if (r >= rows_.size()) throw InvalidArgument("row index out of range");
  return rows_[r];
}

BitVector& BitMatrix::row_mut(std::size_t r) {
  if (r >= rows_.size()) throw InvalidArgument("row index out of range");
  return rows_[r];
}

BitVector BitMatrix::column(std::size_t c) const {
  if (c >= cols_) throw InvalidArgument("column index out of range");
  BitVector out(rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (rows_[r].test(c)) out.set(r);
  }
  return out;
}

BitMatrix BitMatrix::select_rows(std::span<const std::size_t> idxs) const {
  std::vector<BitVector> out;
  out.reserve(idxs.size());
  for (std::size_t r : idxs) out.push_back(row(r));
  return from_rows(std::move(out), cols_);
}

BitMatrix BitMatrix::select_columns(std::span<const std::size_t> idxs) const {
  for (std::size_t c : idxs) {
    if (c >= cols_) throw InvalidArgument("column index out of range");
  }
  std::vector<BitVector> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(r.select(idxs));
  return from_rows(std::move(out), idxs.size());
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (rows_[r].test(c)) t.set(c, r);
    }
  }
  return t;
}

BitMatrix& BitMatrix::operator^=(const BitMatrix& other) {
  if (rows() != other.rows() || cols_ != other.cols_) throw InvalidArgument("matrix dimension mismatch");
  for (std::size_t r = 0; r < rows_.size(); ++r) rows_[r] ^= other.rows_[r];
  return *this;
}

BitVector mat_vec_mul(const BitMatrix& m, const BitVector& v) {
  if (m.cols() != v.size()) throw InvalidArgument("mat_vec_mul: cols(M) != length(v)");
  BitVector out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (m.row(r).dot(v)) out.set(r);
  }
  return out;
}

std::size_t rank(BitMatrix m) {
  std::size_t rank = 0;
  const std::size_t rows = m.rows();
  for (std::size_t c = 0; c < m.cols() && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && !m.test(pivot, c)) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) std::swap(m.row_mut(pivot), m.row_mut(rank));
    for (std::size_t r = 0; r < rows; ++r) {
      if (r != rank && m.test(r, c)) m.row_mut(r) ^= m.row(rank);
    }
    ++rank;
  }
  return rank;
}

bool columns_independent(const BitMatrix& m, std::span<const std::size_t> idxs) {
  std::vector<std::size_t> sorted(idxs.begin(), idxs.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidArgument("columns_independent: duplicate column index");
  }
  for (std::size_t c : idxs) {
    if (c >= m.cols()) throw InvalidArgument("columns_independent: column index out of range");
  }
  XorBasis basis(m.rows());
  for (std::size_t c : idxs) {
    if (!basis.insert(m.column(c))) return false;
  }
  return true;
}

BitVector XorBasis::reduce(BitVector v) const {
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (v.test(pivots_[i])) v ^= basis_[i];
  }
  return v;
}

bool XorBasis::insert(BitVector v) {
  if (v.size() != length_) throw InvalidArgument("XorBasis: vector length mismatch");
  v = reduce(std::move(v));
  const std::size_t pivot = v.find_first();
  if (pivot == length_) return false;
  basis_.push_back(std::move(v));
  pivots_.push_back(pivot);
  return true;
}

bool XorBasis::contains_span_of(const BitVector& v) const {
  if (v.size() != length_) throw InvalidArgument("XorBasis: vector length mismatch");
  return reduce(v).none();
}

}  // namespace pseudolinear
