#include <gtest/gtest.h>

#include <algorithm>

#include "hypsc/builders.hpp"
#include "hypsc/group.hpp"
#include "hypsc/surface.hpp"

namespace group = hypsc::group;

TEST(Group, WordRoundTrip) {
  const auto w = group::parse_word("RRsSr");
  EXPECT_EQ(w, (group::Word{group::kRho, group::kRho, group::kSigmaInv, group::kSigma, group::kRhoInv}));
  EXPECT_EQ(group::format_word(w), "RRsSr");
  EXPECT_EQ(group::inverse_letter(group::kRho), group::kRhoInv);
  EXPECT_EQ(group::inverse_letter(group::kSigmaInv), group::kSigma);
  EXPECT_THROW(group::parse_word("RxS"), std::invalid_argument);
}

TEST(Group, SphericalTilings) {
  // Rotation groups of the platonic solids: order 2|E|, with |F| = order / r, |V| = order / s.
  struct Case {
    int r, s;
    std::size_t order, v, e, f;
  };
  for (const Case c : {Case{4, 3, 24, 8, 12, 6}, Case{3, 4, 24, 6, 12, 8}, Case{3, 5, 60, 12, 30, 20},
                       Case{5, 3, 60, 20, 30, 12}, Case{3, 3, 12, 4, 6, 4}}) {
    const auto table = group::todd_coxeter(group::Presentation{c.r, c.s, {}}, 10'000);
    ASSERT_EQ(table.size, c.order) << c.r << "," << c.s;
    const auto s = group::tiling_from_quotient(table, c.r, c.s);
    EXPECT_EQ(s.vertex_count(), c.v);
    EXPECT_EQ(s.edge_count(), c.e);
    EXPECT_EQ(s.face_count(), c.f);
    EXPECT_EQ(s.euler_characteristic(), 2);
  }
}

TEST(Group, CosetTableIsAGroupAction) {
  const auto table = group::todd_coxeter(group::Presentation{3, 5, {}}, 10'000);
  for (std::size_t c = 0; c < table.size; ++c) {
    EXPECT_EQ(table.apply(c, group::parse_word("RRR")), c);
    EXPECT_EQ(table.apply(c, group::parse_word("SSSSS")), c);
    EXPECT_EQ(table.apply(c, group::parse_word("RSRS")), c);
    EXPECT_EQ(table.apply(c, group::parse_word("Rr")), c);
  }
}

TEST(Group, InfiniteGroupOverflows) {
  EXPECT_THROW(group::todd_coxeter(group::Presentation{4, 5, {}}, 2'000), group::EnumerationOverflow);
}

TEST(Group, TorusQuotientMatchesToric2) {
  const auto s = hypsc::hyperbolic("toric44-L2");
  const auto t = hypsc::toric(2);
  EXPECT_EQ(s.vertex_count(), t.vertex_count());
  EXPECT_EQ(s.edge_count(), t.edge_count());
  EXPECT_EQ(s.face_count(), t.face_count());
  const auto a = hypsc::derive_code(s);
  const auto b = hypsc::derive_code(t);
  EXPECT_EQ(a.k, b.k);
  EXPECT_EQ(hypsc::weight_census(a.h_x), hypsc::weight_census(b.h_x));
}

TEST(Group, CatalogParameters) {
  for (const auto& entry : hypsc::catalog_entries()) {
    const auto s = hypsc::hyperbolic(entry.name);
    const auto code = hypsc::derive_code(s);
    EXPECT_EQ(code.n, entry.n) << entry.name;
    EXPECT_EQ(code.k, entry.k) << entry.name;
    // Regular {r,s}: every face an r-gon, every vertex of degree s.
    for (const auto& f : s.faces()) {
      EXPECT_EQ(f.size(), static_cast<std::size_t>(entry.r)) << entry.name;
    }
    for (std::size_t v = 0; v < s.vertex_count(); ++v) {
      EXPECT_EQ(s.vertex_edges(v).size(), static_cast<std::size_t>(entry.s)) << entry.name;
    }
  }
}

TEST(Group, LowIndexSearchFindsSmallTori) {
  group::QuotientSearchOptions options;
  options.max_index = 40;
  options.max_syllables = 3;
  const auto found = group::low_index_normal_subgroups(4, 4, options);
  ASSERT_FALSE(found.empty());
  for (const auto& cand : found) {
    const auto table = group::todd_coxeter(group::Presentation{4, 4, cand.extra_relators}, 1000);
    EXPECT_EQ(table.size, cand.order);
    const auto s = group::tiling_from_quotient(table, 4, 4);
    EXPECT_EQ(s.euler_characteristic(), 0);
    EXPECT_EQ(s.edge_count() * 2, cand.order);
  }
  // Smallest: two squares on a torus (4 edges); the 2 x 2 grid (8 edges) is also found.
  EXPECT_EQ(found.front().order, 8U);
  EXPECT_TRUE(std::any_of(found.begin(), found.end(), [](const auto& c) { return c.order == 16; }));
}

TEST(Group, LowIndexSearchFindsSixtyQubitCode) {
  group::QuotientSearchOptions options;
  options.max_index = 120;
  options.min_index = 120;
  const auto found = group::low_index_normal_subgroups(4, 5, options);
  ASSERT_FALSE(found.empty());
  const auto table = group::todd_coxeter(group::Presentation{4, 5, found.front().extra_relators}, 1000);
  const auto code = hypsc::derive_code(group::tiling_from_quotient(table, 4, 5));
  EXPECT_EQ(code.n, 60U);
  EXPECT_EQ(code.k, 8U);
}
