#include <gtest/gtest.h>

#include "hypsc/builders.hpp"
#include "hypsc/decoder.hpp"

using hypsc::NoiseParams;
using hypsc::Side;

namespace {

hypsc::SyndromeHistory empty_history(Side side, std::size_t T, bool final_round) {
  hypsc::SyndromeHistory h;
  h.side = side;
  h.T = T;
  h.new_errors.resize(T + (final_round ? 1 : 0));
  h.flips.resize(T);
  return h;
}

// Marks recomputed from the definition: differences of consecutive raw syndromes.
std::vector<std::size_t> marks_from_syndromes(const hypsc::CssCode& code, const hypsc::SyndromeHistory& h) {
  const std::size_t n = code.graph(h.side).node_count;
  std::vector<std::size_t> marks;
  for (std::size_t t = 1; t <= h.T + 1; ++t) {
    const auto diff = hypsc::syndrome_at(code, h, t) ^ hypsc::syndrome_at(code, h, t - 1);
    for (std::size_t c : diff.support()) {
      marks.push_back((t - 1) * n + c);
    }
  }
  return marks;
}

}  // namespace

TEST(Decoder, NoiseValidation) {
  EXPECT_THROW(NoiseParams::make(-0.1, 0.0, 1).validate(), std::invalid_argument);
  EXPECT_THROW(NoiseParams::make(0.6, 0.0, 1).validate(), std::invalid_argument);
  EXPECT_THROW(NoiseParams::make(0.1, 0.1, 0).validate(), std::invalid_argument);
  EXPECT_FALSE(NoiseParams::make(0.1, 0.0, 3).final_round_errors);
  EXPECT_TRUE(NoiseParams::make(0.1, 0.1, 3).final_round_errors);
}

TEST(Decoder, SpaceTimeGraphShape) {
  const auto code = hypsc::derive_code(hypsc::toric(3));
  const hypsc::SpaceTimeGraph g(code.primal, NoiseParams::make(0.01, 0.01, 3));
  EXPECT_EQ(g.slices(), 4U);
  EXPECT_EQ(g.node_count(), 4U * 9);
  EXPECT_EQ(g.horizontal_edge_count(), 4U * 18);
  EXPECT_EQ(g.vertical_edge_count(), 3U * 9);
  EXPECT_TRUE(g.unit_weights());
  const hypsc::SpaceTimeGraph perfect(code.primal, NoiseParams::make(0.01, 0.0, 1));
  EXPECT_EQ(perfect.vertical_edge_count(), 0U);
  // Rarer measurement errors make vertical edges more expensive.
  const hypsc::SpaceTimeGraph skewed(code.primal, NoiseParams::make(0.02, 0.002, 3));
  EXPECT_FALSE(skewed.unit_weights());
  EXPECT_GT(skewed.vertical_weight(), skewed.horizontal_weight());
}

TEST(Decoder, NoiseFreeHistoryHasNoMarks) {
  const auto code = hypsc::derive_code(hypsc::toric(4));
  hypsc::Rng rng(1);
  const auto h = hypsc::sample_history(code, NoiseParams::make(0.0, 0.0, 4), Side::Z, rng);
  EXPECT_TRUE(h.marked.empty());
  const hypsc::SpaceTimeGraph g(code.primal, NoiseParams::make(0.0, 0.0, 4));
  hypsc::MatchingDecoder dec(g);
  EXPECT_FALSE(dec.decode(h.marked, rng).any());
}

TEST(Decoder, SingleMeasurementFlipMarksTwoSlices) {
  const auto code = hypsc::derive_code(hypsc::toric(3));
  auto h = empty_history(Side::Z, 3, true);
  h.flips[1].push_back(5);  // round 2
  const std::size_t n = code.primal.node_count;
  EXPECT_EQ(hypsc::mark_vertices(code, h), (std::vector<std::size_t>{1 * n + 5, 2 * n + 5}));
  // The same check flipped in rounds 2 and 3 cancels in between.
  h.flips[2].push_back(5);
  EXPECT_EQ(hypsc::mark_vertices(code, h), (std::vector<std::size_t>{1 * n + 5, 3 * n + 5}));
}

TEST(Decoder, MarksAgreeWithSyndromeDifferences) {
  const auto code = hypsc::derive_code(hypsc::hyperbolic("hyp45-60"));
  hypsc::Rng rng(17);
  for (Side side : {Side::Z, Side::X}) {
    for (int trial = 0; trial < 200; ++trial) {
      const auto h = hypsc::sample_history(code, NoiseParams::make(0.03, 0.03, 4), side, rng);
      ASSERT_EQ(h.marked, marks_from_syndromes(code, h));
      ASSERT_EQ(h.marked.size() % 2, 0U);
      EXPECT_EQ(hypsc::syndrome_at(code, h, 0).any(), false);
    }
  }
}

TEST(Decoder, CorrectionReproducesSyndromeWithoutMeasurementNoise) {
  const auto code = hypsc::derive_code(hypsc::hyperbolic("hyp45-160"));
  const auto noise = NoiseParams::make(0.02, 0.0, 1);
  hypsc::Rng rng(5);
  for (Side side : {Side::Z, Side::X}) {
    const hypsc::SpaceTimeGraph g(code.graph(side), noise);
    hypsc::MatchingDecoder dec(g);
    for (int trial = 0; trial < 200; ++trial) {
      const auto h = hypsc::sample_history(code, noise, side, rng);
      const auto e = h.total_error(code.n);
      const auto c = dec.decode(h.marked, rng);
      ASSERT_EQ(code.checks(side).multiply(e), code.checks(side).multiply(c));
      EXPECT_NO_THROW(hypsc::adjudicate(code, side, e, c));
    }
  }
}

TEST(Decoder, CorrectsEverySingleQubitError) {
  const auto code = hypsc::derive_code(hypsc::toric(5));
  for (Side side : {Side::Z, Side::X}) {
    const auto noise = NoiseParams::make(0.01, 0.01, 3);
    const hypsc::SpaceTimeGraph g(code.graph(side), noise);
    hypsc::MatchingDecoder dec(g);
    hypsc::Rng rng(9);
    for (std::size_t q = 0; q < code.n; ++q) {
      for (std::size_t round = 0; round < 4; ++round) {
        auto h = empty_history(side, 3, true);
        h.new_errors[round].push_back(q);
        const auto marked = hypsc::mark_vertices(code, h);
        ASSERT_EQ(marked.size(), 2U);
        const auto c = dec.decode(marked, rng);
        EXPECT_FALSE(hypsc::adjudicate(code, side, h.total_error(code.n), c));
        EXPECT_EQ(dec.last_matching_weight(), 1);
      }
    }
  }
}

TEST(Decoder, MeasurementErrorLeavesNoCorrection) {
  const auto code = hypsc::derive_code(hypsc::toric(4));
  const auto noise = NoiseParams::make(0.01, 0.01, 4);
  const hypsc::SpaceTimeGraph g(code.primal, noise);
  hypsc::MatchingDecoder dec(g);
  hypsc::Rng rng(2);
  auto h = empty_history(Side::Z, 4, true);
  h.flips[0].push_back(3);
  const auto c = dec.decode(hypsc::mark_vertices(code, h), rng);
  EXPECT_FALSE(c.any());
}

TEST(Decoder, AdjudicateDetectsLogical) {
  const auto code = hypsc::derive_code(hypsc::toric(3));
  const hypsc::gf2::BitVec zero(code.n);
  EXPECT_TRUE(hypsc::adjudicate(code, Side::Z, code.logical_pairs[0].z, zero));
  EXPECT_FALSE(hypsc::adjudicate(code, Side::Z, code.h_z.row(0), zero));
  hypsc::gf2::BitVec open(code.n);
  open.set(0);
  EXPECT_THROW(hypsc::adjudicate(code, Side::Z, open, zero), std::logic_error);
}
