#include <gtest/gtest.h>

#include <random>

#include "hypsc/gf2.hpp"

using hypsc::gf2::BitMatrix;
using hypsc::gf2::BitVec;

namespace {

BitMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng, double density = 0.4) {
  std::bernoulli_distribution bit(density);
  BitMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      m.set(r, c, bit(rng));
    }
  }
  return m;
}

BitVec from_mask(std::size_t n, std::uint64_t mask) {
  BitVec v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v.set(i, (mask >> i) & 1U);
  }
  return v;
}

}  // namespace

TEST(BitVec, BasicOps) {
  BitVec a(130);
  a.set(0);
  a.set(64);
  a.set(129);
  EXPECT_EQ(a.popcount(), 3U);
  EXPECT_EQ(a.first_set(), 0U);
  EXPECT_EQ(a.support(), (std::vector<std::size_t>{0, 64, 129}));
  BitVec b(130);
  b.set(64);
  b.set(100);
  EXPECT_TRUE(a.dot(b));
  EXPECT_EQ((a ^ b).support(), (std::vector<std::size_t>{0, 100, 129}));
  a.flip(0);
  a.set(64, false);
  EXPECT_EQ(a.first_set(), 129U);
  EXPECT_EQ(BitVec(5).first_set(), 5U);
  EXPECT_FALSE(BitVec(5).any());
}

TEST(Gf2, KernelSizeMatchesExhaustiveCount) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + rng() % 8;
    const std::size_t cols = 1 + rng() % 10;
    const BitMatrix m = random_matrix(rows, cols, rng);
    std::size_t zero_images = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cols); ++mask) {
      zero_images += !m.multiply(from_mask(cols, mask)).any();
    }
    const auto r = hypsc::gf2::rank(m);
    const auto ker = hypsc::gf2::kernel_basis(m);
    ASSERT_EQ(ker.size(), cols - r);
    ASSERT_EQ(zero_images, std::size_t{1} << ker.size());
    hypsc::gf2::EchelonBasis span(cols);
    for (const auto& v : ker) {
      ASSERT_FALSE(m.multiply(v).any());
      ASSERT_TRUE(span.insert(v));
    }
  }
}

TEST(Gf2, RankOfTransposeIsEqual) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const BitMatrix m = random_matrix(1 + rng() % 12, 1 + rng() % 12, rng);
    EXPECT_EQ(hypsc::gf2::rank(m), hypsc::gf2::rank(m.transpose()));
  }
}

TEST(Gf2, InverseAndSingular) {
  std::mt19937_64 rng(3);
  int inverted = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 9;
    const BitMatrix m = random_matrix(n, n, rng, 0.5);
    if (hypsc::gf2::rank(m) == n) {
      const BitMatrix inv = hypsc::gf2::inverse(m);
      EXPECT_EQ(m * inv, BitMatrix::identity(n));
      EXPECT_EQ(inv * m, BitMatrix::identity(n));
      ++inverted;
    } else {
      EXPECT_THROW(hypsc::gf2::inverse(m), std::domain_error);
    }
  }
  EXPECT_GT(inverted, 20);
}

TEST(Gf2, EchelonBasisMembership) {
  hypsc::gf2::EchelonBasis basis(4);
  EXPECT_TRUE(basis.insert(from_mask(4, 0b0011)));
  EXPECT_TRUE(basis.insert(from_mask(4, 0b0110)));
  EXPECT_FALSE(basis.insert(from_mask(4, 0b0101)));
  EXPECT_TRUE(basis.contains(from_mask(4, 0b0101)));
  EXPECT_FALSE(basis.contains(from_mask(4, 0b1000)));
  EXPECT_EQ(basis.rank(), 2U);
}

TEST(Gf2, QuotientBasis) {
  const std::vector<BitVec> ker = {from_mask(4, 0b0011), from_mask(4, 0b0110), from_mask(4, 0b1100)};
  const std::vector<BitVec> im = {from_mask(4, 0b0101)};
  const auto q = hypsc::gf2::quotient_basis(ker, im);
  ASSERT_EQ(q.size(), 2U);
  hypsc::gf2::EchelonBasis span(4);
  span.insert(im[0]);
  for (const auto& v : q) {
    EXPECT_TRUE(span.insert(v));
  }
  const std::vector<BitVec> outside = {from_mask(4, 0b0001)};
  EXPECT_THROW(hypsc::gf2::quotient_basis(ker, outside), std::invalid_argument);
}

TEST(Gf2, SymplecticPairing) {
  // z_j = e_j, x reps overlapping in a full-rank pattern.
  const std::size_t n = 3;
  std::vector<BitVec> z = {from_mask(n, 0b001), from_mask(n, 0b010), from_mask(n, 0b100)};
  std::vector<BitVec> x = {from_mask(n, 0b011), from_mask(n, 0b110), from_mask(n, 0b111)};
  const auto pairs = hypsc::gf2::symplectic_pair(z, x);
  ASSERT_EQ(pairs.size(), n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      EXPECT_EQ(pairs[i].x.dot(pairs[j].z), i == j);
    }
  }
  x[2] = from_mask(n, 0b101);  // x0 + x1: singular overlap
  EXPECT_THROW(hypsc::gf2::symplectic_pair(z, x), std::domain_error);
}
