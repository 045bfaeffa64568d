#include <gtest/gtest.h>

#include "hypsc/builders.hpp"
#include "hypsc/distance.hpp"
#include "hypsc/surface.hpp"

using hypsc::Side;

namespace {

void expect_valid_code(const hypsc::CssCode& code) {
  const auto overlaps = code.h_x * code.h_z.transpose();
  EXPECT_EQ(overlaps.rows(), code.h_x.rows());
  for (const auto& row : overlaps.row_vectors()) {
    EXPECT_FALSE(row.any()) << "X and Z checks must commute";
  }
  ASSERT_EQ(code.logical_pairs.size(), code.k);
  for (std::size_t i = 0; i < code.k; ++i) {
    EXPECT_FALSE(code.h_x.multiply(code.logical_pairs[i].z).any());
    EXPECT_FALSE(code.h_z.multiply(code.logical_pairs[i].x).any());
    for (std::size_t j = 0; j < code.k; ++j) {
      EXPECT_EQ(code.logical_pairs[i].x.dot(code.logical_pairs[j].z), i == j);
    }
  }
}

}  // namespace

TEST(Surface, ToricCounts) {
  for (std::size_t L : {2U, 3U, 5U}) {
    const auto s = hypsc::toric(L);
    EXPECT_EQ(s.vertex_count(), L * L);
    EXPECT_EQ(s.edge_count(), 2 * L * L);
    EXPECT_EQ(s.face_count(), L * L);
    const auto topo = hypsc::euler_genus(s);
    EXPECT_EQ(topo.chi, 0);
    EXPECT_EQ(topo.k, 2U);
    const auto code = hypsc::derive_code(s);
    EXPECT_EQ(code.n, 2 * L * L);
    EXPECT_EQ(code.k, 2U);
    expect_valid_code(code);
    using Census = std::vector<std::pair<std::size_t, std::size_t>>;
    EXPECT_EQ(hypsc::weight_census(code.h_x), (Census{{4, L * L}}));
    EXPECT_EQ(hypsc::weight_census(code.h_z), (Census{{4, L * L}}));
  }
}

TEST(Surface, RotatedToricCounts) {
  const auto s = hypsc::rotated_toric(6);
  const auto code = hypsc::derive_code(s);
  EXPECT_EQ(code.n, 36U);
  EXPECT_EQ(code.k, 2U);
  EXPECT_EQ(code.h_x.rows(), 18U);
  EXPECT_EQ(code.h_z.rows(), 18U);
  expect_valid_code(code);
  EXPECT_EQ(hypsc::min_weight_logical(code, Side::Z), 6U);
  EXPECT_EQ(hypsc::min_weight_logical(code, Side::X), 6U);
  EXPECT_THROW(hypsc::rotated_toric(5), std::invalid_argument);
  EXPECT_THROW(hypsc::rotated_toric(2), std::invalid_argument);
}

TEST(Surface, RejectsMalformedComplexes) {
  // Self-loop.
  EXPECT_THROW(hypsc::TiledSurface("bad", 1, {{0, 0}}, {{0}}), std::invalid_argument);
  // Face boundary that does not close up.
  EXPECT_THROW(hypsc::TiledSurface("bad", 3, {{0, 1}, {1, 2}}, {{0, 1}}), std::invalid_argument);
}

TEST(Surface, SubdivisionCensus) {
  // {4,5} with 60 edges has 30 faces and 24 vertices. An l = 2 subdivision adds one node per
  // edge and one per face, both of degree 4; the original vertices keep degree 5.
  const auto base = hypsc::hyperbolic("hyp45-60");
  ASSERT_EQ(base.vertex_count(), 24U);
  ASSERT_EQ(base.face_count(), 30U);
  const auto s = hypsc::semi_hyperbolic(base, 2);
  const auto code = hypsc::derive_code(s);
  EXPECT_EQ(code.n, 240U);
  EXPECT_EQ(code.k, 8U);
  using Census = std::vector<std::pair<std::size_t, std::size_t>>;
  EXPECT_EQ(hypsc::weight_census(code.h_x), (Census{{4, 60 + 30}, {5, 24}}));
  EXPECT_EQ(hypsc::weight_census(code.h_z), (Census{{4, 120}}));
  EXPECT_EQ(hypsc::euler_genus(s).chi, hypsc::euler_genus(base).chi);
  expect_valid_code(code);
}

TEST(Surface, SubdividedSmallTorusMatchesLargerTorus) {
  // The 2 x 2 torus subdivided by 2 is the 4 x 4 torus: same counts, census, distances and
  // minimum-weight logical counts.
  auto a = hypsc::derive_code(hypsc::semi_hyperbolic(hypsc::toric(2), 2));
  auto b = hypsc::derive_code(hypsc::toric(4));
  EXPECT_EQ(a.n, b.n);
  EXPECT_EQ(a.k, b.k);
  EXPECT_EQ(a.h_x.rows(), b.h_x.rows());
  EXPECT_EQ(a.h_z.rows(), b.h_z.rows());
  EXPECT_EQ(hypsc::weight_census(a.h_x), hypsc::weight_census(b.h_x));
  EXPECT_EQ(hypsc::weight_census(a.h_z), hypsc::weight_census(b.h_z));
  for (Side side : {Side::Z, Side::X}) {
    EXPECT_EQ(hypsc::count_min_weight(a, side), hypsc::count_min_weight(b, side));
  }
}

TEST(Surface, SubdivisionOfOneIsIdentity) {
  const auto s = hypsc::toric(3);
  const auto t = hypsc::semi_hyperbolic(s, 1);
  EXPECT_EQ(t.vertex_count(), s.vertex_count());
  EXPECT_EQ(t.edge_count(), s.edge_count());
  EXPECT_EQ(t.face_count(), s.face_count());
}
