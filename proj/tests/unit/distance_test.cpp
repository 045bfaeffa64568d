#include <gtest/gtest.h>

#include "../support/oracles.hpp"
#include "hypsc/builders.hpp"
#include "hypsc/distance.hpp"

using hypsc::Side;

namespace {

void expect_matches_enumeration(const hypsc::TiledSurface& s) {
  const auto code = hypsc::derive_code(s);
  const auto z = oracle::brute_force_z(s);
  const auto x = oracle::brute_force_x(s);
  EXPECT_EQ(hypsc::count_min_weight(code, Side::Z), std::make_pair(z.d, z.count)) << s.name();
  EXPECT_EQ(hypsc::count_min_weight(code, Side::X), std::make_pair(x.d, x.count)) << s.name();
}

}  // namespace

TEST(Distance, MatchesEnumerationOnTori) {
  expect_matches_enumeration(hypsc::toric(3));
  expect_matches_enumeration(hypsc::toric(4));
  expect_matches_enumeration(hypsc::rotated_toric(4));
}

TEST(Distance, MatchesEnumerationOnStellatedDodecahedron) {
  expect_matches_enumeration(hypsc::hyperbolic("small-stellated-dodecahedron"));
}

TEST(Distance, OperatorsAreDistinctNontrivialLogicals) {
  const auto code = hypsc::derive_code(hypsc::hyperbolic("hyp45-60"));
  for (Side side : {Side::Z, Side::X}) {
    const auto all = hypsc::min_weight_logicals(code, side);
    ASSERT_FALSE(all.operators.empty());
    for (std::size_t i = 0; i < all.operators.size(); ++i) {
      EXPECT_EQ(all.operators[i].popcount(), all.d);
      EXPECT_TRUE(hypsc::is_nontrivial_logical(code, side, all.operators[i]));
      if (i > 0) {
        EXPECT_NE(all.operators[i - 1], all.operators[i]);
      }
    }
    const auto one = hypsc::find_min_weight_logical(code, side);
    EXPECT_EQ(one.popcount(), all.d);
    EXPECT_TRUE(hypsc::is_nontrivial_logical(code, side, one));
  }
}

TEST(Distance, StabilizersAreNotLogicals) {
  const auto code = hypsc::derive_code(hypsc::toric(3));
  EXPECT_FALSE(hypsc::is_nontrivial_logical(code, Side::Z, code.h_z.row(0)));
  EXPECT_FALSE(hypsc::is_nontrivial_logical(code, Side::X, code.h_x.row(0)));
  EXPECT_TRUE(hypsc::is_nontrivial_logical(code, Side::Z, code.logical_pairs[0].z));
}

TEST(Distance, ComputeDistancesFillsCode) {
  auto code = hypsc::derive_code(hypsc::toric(5));
  hypsc::compute_distances(code);
  EXPECT_EQ(code.d_z, 5U);
  EXPECT_EQ(code.d_x, 5U);
}

TEST(Distance, PathCapIsEnforced) {
  const auto code = hypsc::derive_code(hypsc::hyperbolic("hyp45-160"));
  hypsc::DistanceOptions tight;
  tight.path_cap = 10;
  EXPECT_THROW(hypsc::min_weight_logicals(code, Side::Z, tight), std::runtime_error);
}
