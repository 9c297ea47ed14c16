#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pseudolinear {

/// Fixed-length vector over GF(2), packed 64 bits per word.
///
/// Bits past size() in the last word are always zero, so word-wise
/// comparisons and popcounts need no masking.
class BitVector {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitVector() = default;
  explicit BitVector(std::size_t length) : size_(length), words_(word_count(length), 0) {}

  /// Parses a string of '0'/'1' characters; character i becomes bit i.
  static BitVector from_string(std::string_view bits);
  /// Inverse of to_hex(). The string must have exactly ceil(length / 4) digits.
  static BitVector from_hex(std::string_view hex, std::size_t length);
  /// Bit i of the result is bit i of value. Requires length <= 64.
  static BitVector from_word(std::uint64_t value, std::size_t length);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  bool test(std::size_t i) const;
  bool operator[](std::size_t i) const { return test(i); }
  void set(std::size_t i, bool value = true);
  void flip(std::size_t i);

  std::size_t weight() const noexcept {
    std::size_t w = 0;
    for (Word x : words_) w += static_cast<std::size_t>(std::popcount(x));
    return w;
  }
  bool none() const noexcept {
    for (Word x : words_)
      if (x != 0) return false;
    return true;
  }
  /// Index of the lowest set bit, or size() when the vector is zero.
  std::size_t find_first() const noexcept;

  BitVector& operator^=(const BitVector& other);
  BitVector& operator&=(const BitVector& other);
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }
  friend bool operator==(const BitVector& a, const BitVector& b) noexcept {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }

  /// Parity of the bitwise AND, i.e. the GF(2) inner product.
  bool dot(const BitVector& other) const;

  /// Entries at the given coordinates, in the order given.
  BitVector select(std::span<const std::size_t> coords) const;

  std::span<const Word> words() const noexcept { return words_; }

  /// '0'/'1' characters in index order.
  std::string to_string() const;
  /// Lowercase hex; digit d holds bits 4d..4d+3 with bit 4d as the digit's
  /// most significant bit, so the hex reads like the bit string.
  std::string to_hex() const;
  /// Bits 0..size()-1 packed into an integer. Requires size() <= 64.
  std::uint64_t to_word() const;

  static constexpr std::size_t word_count(std::size_t bits) noexcept {
    return (bits + kWordBits - 1) / kWordBits;
  }

 private:
  void check_same_size(const BitVector& other) const;

  std::size_t size_ = 0;
  std::vector<Word> words_;
};

/// Hamming distance between equal-length word spans.
inline std::size_t hamming_distance(std::span<const BitVector::Word> a,
                                    std::span<const BitVector::Word> b) noexcept {
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += static_cast<std::size_t>(std::popcount(a[i] ^ b[i]));
  return d;
}

/// Hamming distance; throws InvalidArgument on a length mismatch.
std::size_t hamming_distance(const BitVector& a, const BitVector& b);

/// Dense matrix over GF(2), stored as a vector of row BitVectors.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

  static BitMatrix identity(std::size_t n);
  /// All rows must share one length; `cols` is used only when rows is empty.
  static BitMatrix from_rows(std::vector<BitVector> rows, std::size_t cols = 0);
  static BitMatrix from_columns(std::span<const BitVector> columns, std::size_t rows);

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }

  bool test(std::size_t r, std::size_t c) const { return row(r).test(c); }
  void set(std::size_t r, std::size_t c, bool value = true);

  const BitVector& row(std::size_t r) const;
  BitVector& row_mut(std::size_t r);
  BitVector column(std::size_t c) const;

  BitMatrix select_rows(std::span<const std::size_t> idxs) const;
  BitMatrix select_columns(std::span<const std::size_t> idxs) const;
  BitMatrix transpose() const;

  BitMatrix& operator^=(const BitMatrix& other);
  friend BitMatrix operator^(BitMatrix a, const BitMatrix& b) { return a ^= b; }
  friend bool operator==(const BitMatrix& a, const BitMatrix& b) noexcept {
    return a.cols_ == b.cols_ && a.rows_ == b.rows_;
  }

 private:
  std::size_t cols_ = 0;
  std::vector<BitVector> rows_;
};

/// M v over GF(2). Throws InvalidArgument when cols(M) != length(v).
BitVector mat_vec_mul(const BitMatrix& m, const BitVector& v);

/// GF(2) rank by Gaussian elimination.
std::size_t rank(BitMatrix m);

/// True iff the selected columns are linearly independent. Indices must be
/// distinct and in range.
bool columns_independent(const BitMatrix& m, std::span<const std::size_t> idxs);

/// Incremental echelon basis. insert() reports whether the vector was
/// independent of everything inserted before it.
class XorBasis {
 public:
  explicit XorBasis(std::size_t length) : length_(length) {}

  bool insert(BitVector v);
  bool contains_span_of(const BitVector& v) const;
  std::size_t dimension() const noexcept { return basis_.size(); }
  void pop_back() { basis_.pop_back(); pivots_.pop_back(); }

 private:
  BitVector reduce(BitVector v) const;

  std::size_t length_;
  std::vector<BitVector> basis_;
  std::vector<std::size_t> pivots_;
};

}  // namespace pseudolinear
