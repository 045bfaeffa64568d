#include "hypsc/gf2.hpp"

#include <stdexcept>
#include <utility>

namespace hypsc::gf2 {

BitVec BitVec::from_support(std::size_t size, std::span<const std::size_t> support) {
  BitVec v(size);
  for (std::size_t i : support) {
    v.flip(i);
  }
  return v;
}

bool BitVec::any() const noexcept {
  for (std::uint64_t w : words_) {
    if (w != 0) {
      return true;
    }
  }
  return false;
}

std::size_t BitVec::popcount() const noexcept {
  std::size_t total = 0;
  for (std::uint64_t w : words_) {
    total += static_cast<std::size_t>(std::popcount(w));
  }
  return total;
}

bool BitVec::dot(const BitVec& other) const noexcept {
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    acc ^= words_[w] & other.words_[w];
  }
  return (std::popcount(acc) & 1) != 0;
}

std::size_t BitVec::first_set() const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) {
      return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
    }
  }
  return size_;
}

std::vector<std::size_t> BitVec::support() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits != 0) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m.set(i, i);
  }
  return m;
}

BitMatrix BitMatrix::from_rows(std::size_t cols, std::vector<BitVec> rows) {
  BitMatrix m;
  m.cols_ = cols;
  for (const auto& r : rows) {
    if (r.size() != cols) {
      throw std::invalid_argument("BitMatrix::from_rows: row length mismatch");
    }
  }
  m.rows_ = std::move(rows);
  return m;
}

void BitMatrix::append_row(BitVec row) {
  if (row.size() != cols_) {
    throw std::invalid_argument("BitMatrix::append_row: row length mismatch");
  }
  rows_.push_back(std::move(row));
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t c : rows_[r].support()) {
      t.set(c, r);
    }
  }
  return t;
}

BitVec BitMatrix::multiply(const BitVec& v) const {
  if (v.size() != cols_) {
    throw std::invalid_argument("BitMatrix::multiply: dimension mismatch");
  }
  BitVec out(rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    if (rows_[r].dot(v)) {
      out.set(r);
    }
  }
  return out;
}

BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("BitMatrix product: dimension mismatch");
  }
  BitMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k : a.row(r).support()) {
      out.row(r) ^= b.row(k);
    }
  }
  return out;
}

namespace {

// Lowest set bit at or above `from`, or v.size().
std::size_t next_set(const BitVec& v, std::size_t from) {
  const auto words = v.words();
  std::size_t w = from >> 6;
  if (w >= words.size()) {
    return v.size();
  }
  std::uint64_t bits = words[w] & (~std::uint64_t{0} << (from & 63));
  while (true) {
    if (bits != 0) {
      return w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
    }
    if (++w == words.size()) {
      return v.size();
    }
    bits = words[w];
  }
}

struct Rref {
  std::vector<BitVec> rows;
  std::vector<std::size_t> pivots;
};

// Reduced row echelon form; pivot is the first nonzero entry in column order.
Rref row_reduce(const BitMatrix& m) {
  Rref out;
  out.rows = m.row_vectors();
  std::size_t lead = 0;
  for (std::size_t col = 0; col < m.cols() && lead < out.rows.size(); ++col) {
    std::size_t pivot = lead;
    while (pivot < out.rows.size() && !out.rows[pivot].get(col)) {
      ++pivot;
    }
    if (pivot == out.rows.size()) {
      continue;
    }
    std::swap(out.rows[lead], out.rows[pivot]);
    for (std::size_t r = 0; r < out.rows.size(); ++r) {
      if (r != lead && out.rows[r].get(col)) {
        out.rows[r] ^= out.rows[lead];
      }
    }
    out.pivots.push_back(col);
    ++lead;
  }
  out.rows.resize(out.pivots.size());
  return out;
}

}  // namespace

void EchelonBasis::reduce(BitVec& v) const {
  std::size_t b = v.first_set();
  while (b < dim_ && pivot_row_[b] != kNone) {
    v ^= rows_[pivot_row_[b]];
    b = next_set(v, b + 1);
  }
}

bool EchelonBasis::contains(BitVec v) const {
  reduce(v);
  return !v.any();
}

bool EchelonBasis::insert(BitVec v) {
  if (v.size() != dim_) {
    throw std::invalid_argument("EchelonBasis::insert: dimension mismatch");
  }
  reduce(v);
  const std::size_t b = v.first_set();
  if (b == dim_) {
    return false;
  }
  pivot_row_[b] = rows_.size();
  pivots_.push_back(b);
  rows_.push_back(std::move(v));
  return true;
}

std::size_t rank(const BitMatrix& m) {
  EchelonBasis basis(m.cols());
  for (const auto& r : m.row_vectors()) {
    basis.insert(r);
  }
  return basis.rank();
}

std::vector<BitVec> kernel_basis(const BitMatrix& m) {
  const Rref rref = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : rref.pivots) {
    is_pivot[c] = true;
  }
  std::vector<BitVec> basis;
  basis.reserve(m.cols() - rref.pivots.size());
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) {
      continue;
    }
    BitVec v(m.cols());
    v.set(free);
    for (std::size_t r = 0; r < rref.rows.size(); ++r) {
      if (rref.rows[r].get(free)) {
        v.set(rref.pivots[r]);
      }
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<BitVec> quotient_basis(std::span<const BitVec> ker, std::span<const BitVec> im) {
  if (ker.empty()) {
    for (const auto& v : im) {
      if (v.any()) {
        throw std::invalid_argument("quotient_basis: image not contained in kernel span");
      }
    }
    return {};
  }
  const std::size_t dim = ker.front().size();
  EchelonBasis ker_span(dim);
  for (const auto& v : ker) {
    ker_span.insert(v);
  }
  EchelonBasis span(dim);
  for (const auto& v : im) {
    if (!ker_span.contains(v)) {
      throw std::invalid_argument("quotient_basis: image not contained in kernel span");
    }
    span.insert(v);
  }
  std::vector<BitVec> out;
  for (const auto& v : ker) {
    if (span.insert(v)) {
      out.push_back(v);
    }
  }
  return out;
}

BitMatrix inverse(const BitMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) {
    throw std::invalid_argument("inverse: matrix is not square");
  }
  // Augmented [m | I] reduced to [I | m^-1].
  std::vector<BitVec> aug;
  aug.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    BitVec row(2 * n);
    for (std::size_t c : m.row(r).support()) {
      row.set(c);
    }
    row.set(n + r);
    aug.push_back(std::move(row));
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && !aug[pivot].get(col)) {
      ++pivot;
    }
    if (pivot == n) {
      throw std::domain_error("inverse: matrix is singular over GF(2)");
    }
    std::swap(aug[col], aug[pivot]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r != col && aug[r].get(col)) {
        aug[r] ^= aug[col];
      }
    }
  }
  BitMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      inv.set(r, c, aug[r].get(n + c));
    }
  }
  return inv;
}

std::vector<LogicalPair> symplectic_pair(std::span<const BitVec> z_reps, std::span<const BitVec> x_reps) {
  const std::size_t k = z_reps.size();
  if (x_reps.size() != k) {
    throw std::invalid_argument("symplectic_pair: representative counts differ");
  }
  BitMatrix overlap(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      overlap.set(i, j, z_reps[i].dot(x_reps[j]));
    }
  }
  BitMatrix mix;
  try {
    mix = inverse(overlap.transpose());
  } catch (const std::domain_error&) {
    throw std::domain_error("symplectic_pair: overlap matrix is singular (dependent representatives)");
  }
  std::vector<LogicalPair> pairs;
  pairs.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    BitVec x(x_reps[i].size());
    for (std::size_t l : mix.row(i).support()) {
      x ^= x_reps[l];
    }
    pairs.push_back({std::move(x), z_reps[i]});
  }
  return pairs;
}

}  // namespace hypsc::gf2
