#include <gtest/gtest.h>

#include "hypsc/builders.hpp"
#include "hypsc/dehn.hpp"
#include "hypsc/distance.hpp"

namespace dehn = hypsc::dehn;
using dehn::Cnot;

namespace {

// SWAP(a, b) as three CNOTs.
void append_swap(std::vector<Cnot>& c, std::size_t a, std::size_t b) {
  c.push_back({a, b});
  c.push_back({b, a});
  c.push_back({a, b});
}

dehn::SymplecticFrame identity(std::size_t g) { return dehn::SymplecticFrame(g); }

}  // namespace

TEST(Dehn, TransvectionIsAnInvolution) {
  for (std::size_t g : {1U, 2U, 3U}) {
    for (const auto& gen : dehn::standard_generators(g)) {
      const auto once = dehn::transvection(identity(g), gen.gamma);
      EXPECT_TRUE(once.is_symplectic());
      EXPECT_NE(once, identity(g));
      EXPECT_EQ(dehn::transvection(once, gen.gamma), identity(g)) << gen.name;
    }
  }
}

TEST(Dehn, CrossingForm) {
  EXPECT_TRUE(dehn::crossing(2, dehn::loop(2, 1), dehn::loop(2, 3)));
  EXPECT_FALSE(dehn::crossing(2, dehn::loop(2, 1), dehn::loop(2, 2)));
  EXPECT_FALSE(dehn::crossing(2, dehn::loop(2, 1), dehn::loop(2, 4)));
  EXPECT_FALSE(dehn::crossing(2, dehn::loop(2, 1), dehn::loop(2, 1)));
  EXPECT_THROW(dehn::loop(2, 5), std::out_of_range);
  hypsc::gf2::BitMatrix bad(2, 2);
  bad.set(0, 0);
  EXPECT_THROW(dehn::SymplecticFrame(1, bad), std::invalid_argument);
}

TEST(Dehn, GeneratorsMatchWrittenOutCircuits) {
  // Genus 2, logical qubits q1..q4 are 0..3. Twists on single loops are single CNOTs
  // inside a handle; the handle-linking loop is a four-CNOT circuit.
  const std::vector<std::pair<std::string, std::vector<Cnot>>> expected = {
      {"D1", {{1, 0}}},
      {"D2", {{3, 2}}},
      {"D3", {{0, 1}}},
      {"D4", {{2, 3}}},
      {"D1,2", {{1, 0}, {3, 2}, {3, 0}, {1, 2}}},
  };
  const auto gens = dehn::standard_generators(2);
  ASSERT_EQ(gens.size(), expected.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    EXPECT_EQ(gens[i].name, expected[i].first);
    const auto twist = dehn::transvection(identity(2), gens[i].gamma);
    EXPECT_EQ(twist, dehn::frame_of_circuit(2, expected[i].second)) << gens[i].name;
    EXPECT_EQ(twist, dehn::frame_of_circuit(2, dehn::generator_circuit(2, gens[i]))) << gens[i].name;
  }
}

TEST(Dehn, GeneratorIdentitiesAllGenera) {
  for (std::size_t g : {1U, 2U, 3U, 4U}) {
    const auto gens = dehn::standard_generators(g);
    EXPECT_EQ(gens.size(), 3 * g - 1);
    for (const auto& gen : gens) {
      EXPECT_EQ(dehn::transvection(identity(g), gen.gamma), dehn::frame_of_circuit(g, dehn::generator_circuit(g, gen)))
          << "g=" << g << " " << gen.name;
    }
  }
}

TEST(Dehn, CircuitFrameRejectsBadQubits) {
  EXPECT_THROW(dehn::frame_of_circuit(2, {{0, 7}}), std::invalid_argument);
}

TEST(Dehn, MirroredSwapEqualsSwapCircuits) {
  std::vector<Cnot> mirrored;
  append_swap(mirrored, 0, 3);
  append_swap(mirrored, 1, 2);
  EXPECT_EQ(dehn::handle_swap(2, 1), dehn::frame_of_circuit(2, mirrored));
  std::vector<Cnot> same_order;
  append_swap(same_order, 0, 2);
  append_swap(same_order, 1, 3);
  EXPECT_EQ(dehn::handle_swap(2, 1, false), dehn::frame_of_circuit(2, same_order));
  EXPECT_THROW(dehn::handle_swap(2, 2), std::invalid_argument);
}

TEST(Dehn, NineTwistSwap) {
  for (std::size_t g : {2U, 3U}) {
    const auto w = dehn::swap_via_twists(g, 1);
    EXPECT_TRUE(w.verified);
    EXPECT_EQ(w.word.size(), 9U);
    EXPECT_EQ(dehn::compose(g, w.generators, w.word), dehn::handle_swap(g, 1));
    // Nothing shorter over the same five twists.
    EXPECT_FALSE(dehn::shortest_word(dehn::handle_swap(g, 1), w.generators, 8).has_value());
  }
  // The same-order exchange needs more twists over this set.
  const auto gens = dehn::handle_pair_generators(2, 1);
  EXPECT_FALSE(dehn::shortest_word(dehn::handle_swap(2, 1, false), gens, 9).has_value());
}

TEST(Dehn, SevenTwistSwapOverEnlargedSet) {
  const auto w = dehn::short_swap_search(2, 1, 7);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->word.size(), 7U);
  EXPECT_TRUE(w->verified);
  EXPECT_EQ(dehn::compose(2, w->generators, w->word), dehn::handle_swap(2, 1));
  EXPECT_FALSE(dehn::short_swap_search(2, 1, 6).has_value());
}

TEST(Dehn, WordSearchPrimitives) {
  const auto gens = dehn::standard_generators(2);
  EXPECT_EQ(dehn::shortest_word(identity(2), gens, 3), std::vector<std::size_t>{});
  const auto two = dehn::compose(2, gens, {0, 2});
  const auto found = dehn::shortest_word(two, gens, 4);
  ASSERT_TRUE(found.has_value());
  EXPECT_EQ(found->size(), 2U);
  EXPECT_EQ(dehn::compose(2, gens, *found), two);
  const auto exact = dehn::word_of_length(identity(2), gens, 2);
  ASSERT_TRUE(exact.has_value());
  EXPECT_EQ(dehn::compose(2, gens, *exact), identity(2));
}

TEST(Dehn, PauliFrameCnotRules) {
  dehn::PauliFrame f(2);
  hypsc::gf2::BitVec x0(2), z1(2), none(2);
  x0.set(0);
  z1.set(1);
  const auto a = f.add(x0, none);
  const auto b = f.add(none, z1);
  f.cnot(0, 1);
  EXPECT_EQ(f.x(a).support(), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(f.z(b).support(), (std::vector<std::size_t>{0, 1}));
  EXPECT_TRUE(f.commute(a, b));  // conjugation preserves commutation
  EXPECT_EQ(f.weight(a), 2U);
  EXPECT_THROW(f.cnot(1, 1), std::invalid_argument);
}

TEST(Dehn, CircuitTwistOnTori) {
  for (std::size_t L : {3U, 4U, 5U}) {
    const auto s = hypsc::toric(L);
    const auto code = hypsc::derive_code(s);
    const auto loop = hypsc::find_min_weight_logical(code, hypsc::Side::Z);
    const auto r = dehn::circuit_twist(s, code, loop);
    EXPECT_TRUE(r.ok()) << "L=" << L;
    EXPECT_EQ(r.schedule.layers.size(), L);
    EXPECT_EQ(r.x_weight_min, 4U);
    EXPECT_EQ(r.x_weight_max, 4U);
    EXPECT_NE(r.measured, hypsc::gf2::BitMatrix::identity(2 * code.k));
    const auto twice = dehn::circuit_twist(s, code, loop, 2);
    EXPECT_TRUE(twice.ok());
    EXPECT_EQ(twice.measured, hypsc::gf2::BitMatrix::identity(2 * code.k));
  }
}

TEST(Dehn, CircuitTwistOnSixtyQubitCode) {
  const auto s = hypsc::hyperbolic("hyp45-60");
  const auto code = hypsc::derive_code(s);
  const auto loop = hypsc::find_min_weight_logical(code, hypsc::Side::Z);
  const auto r = dehn::circuit_twist(s, code, loop);
  EXPECT_TRUE(r.commuting);
  EXPECT_TRUE(r.stabilizers_preserved);
  EXPECT_TRUE(r.logical_matches);
  EXPECT_EQ(r.schedule.layers.size(), 4U);
  EXPECT_GE(r.x_weight_min, 2U);
  EXPECT_LE(r.x_weight_max, 8U);
}

TEST(Dehn, CircuitTwistRejectsBadLoops) {
  const auto s = hypsc::toric(4);
  const auto code = hypsc::derive_code(s);
  EXPECT_THROW(dehn::circuit_twist(s, code, code.h_z.row(0)), std::invalid_argument);  // contractible
  hypsc::gf2::BitVec open(code.n);
  open.set(0);
  EXPECT_THROW(dehn::circuit_twist(s, code, open), std::invalid_argument);
  // Two parallel loops: a cycle, but not a simple one.
  const auto ops = hypsc::min_weight_logicals(code, hypsc::Side::Z).operators;
  hypsc::gf2::BitVec two(code.n);
  for (const auto& a : ops) {
    for (const auto& b : ops) {
      if (!a.dot(b) && (a ^ b).popcount() == 8) {
        two = a ^ b;
      }
    }
  }
  ASSERT_EQ(two.popcount(), 8U);
  EXPECT_THROW(dehn::twist_schedule(s, two), std::invalid_argument);
}
