#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hypsc::gf2 {

/// Dense bit-packed vector over GF(2).
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  static BitVec from_support(std::size_t size, std::span<const std::size_t> support);

  std::size_t size() const noexcept { return size_; }

  bool get(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i, bool value = true) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }
  void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  BitVec& operator^=(const BitVec& other) noexcept {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      words_[w] ^= other.words_[w];
    }
    return *this;
  }
  friend BitVec operator^(BitVec a, const BitVec& b) noexcept { return a ^= b; }
  friend bool operator==(const BitVec&, const BitVec&) = default;

  bool any() const noexcept;
  std::size_t popcount() const noexcept;
  /// Parity of the overlap with `other`.
  bool dot(const BitVec& other) const noexcept;
  /// Index of the lowest set bit, or size() if none.
  std::size_t first_set() const noexcept;
  std::vector<std::size_t> support() const;

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> words() noexcept { return words_; }

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Dense GF(2) matrix stored row-major as packed rows.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVec(cols)) {}
  static BitMatrix identity(std::size_t n);
  static BitMatrix from_rows(std::size_t cols, std::vector<BitVec> rows);

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }

  bool get(std::size_t r, std::size_t c) const noexcept { return rows_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool value = true) noexcept { rows_[r].set(c, value); }
  void flip(std::size_t r, std::size_t c) noexcept { rows_[r].flip(c); }

  const BitVec& row(std::size_t r) const noexcept { return rows_[r]; }
  BitVec& row(std::size_t r) noexcept { return rows_[r]; }
  const std::vector<BitVec>& row_vectors() const noexcept { return rows_; }

  void append_row(BitVec row);

  BitMatrix transpose() const;
  BitVec multiply(const BitVec& v) const;
  friend BitMatrix operator*(const BitMatrix& a, const BitMatrix& b);
  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t cols_ = 0;
  std::vector<BitVec> rows_;
};

/// Incrementally built row-echelon basis of a subspace; pivots are lowest set bits.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t dim) : dim_(dim), pivot_row_(dim, kNone) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t rank() const noexcept { return rows_.size(); }

  /// Reduces `v` against the basis in place; the result is zero iff v was in the span.
  void reduce(BitVec& v) const;
  bool contains(BitVec v) const;
  /// Adds `v` to the span. Returns false if it was already contained.
  bool insert(BitVec v);

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::size_t dim_;
  std::vector<BitVec> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<std::size_t> pivot_row_;
};

std::size_t rank(const BitMatrix& m);

/// Null space basis of m (vectors v with m v = 0); size is cols - rank.
std::vector<BitVec> kernel_basis(const BitMatrix& m);

/// Vectors of `ker` that extend span(`im`) to span(`ker`).
/// Throws std::invalid_argument if `im` is not contained in span(`ker`).
std::vector<BitVec> quotient_basis(std::span<const BitVec> ker, std::span<const BitVec> im);

/// Inverse of a square matrix; throws std::domain_error when singular.
BitMatrix inverse(const BitMatrix& m);

struct LogicalPair {
  BitVec x;
  BitVec z;
};

/// Re-combines `x_reps` so that |x_i & z_j| is odd exactly when i == j.
/// Throws std::domain_error when the overlap matrix is singular.
std::vector<LogicalPair> symplectic_pair(std::span<const BitVec> z_reps, std::span<const BitVec> x_reps);

}  // namespace hypsc::gf2
