#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hypsc/gf2.hpp"
#include "hypsc/surface.hpp"

namespace hypsc::dehn {

/// Linear map on H_1(S; Z_2) written in the loop basis D_1..D_{2g}; column j is the
/// image of D_{j+1}. The crossing form pairs D_k with D_{k+g} and nothing else.
class SymplecticFrame {
 public:
  explicit SymplecticFrame(std::size_t genus);
  /// Throws std::invalid_argument unless `m` is 2g x 2g and preserves the form.
  SymplecticFrame(std::size_t genus, gf2::BitMatrix m);

  std::size_t genus() const noexcept { return genus_; }
  std::size_t dim() const noexcept { return 2 * genus_; }
  const gf2::BitMatrix& matrix() const noexcept { return m_; }
  gf2::BitVec image(const gf2::BitVec& c) const { return m_.multiply(c); }
  bool is_symplectic() const;

  friend bool operator==(const SymplecticFrame&, const SymplecticFrame&) = default;

 private:
  std::size_t genus_;
  gf2::BitMatrix m_;
};

/// Crossing parity of two homology classes of a genus-g surface.
bool crossing(std::size_t genus, const gf2::BitVec& a, const gf2::BitVec& b);

/// The loop D_index (1-based) as a homology vector.
gf2::BitVec loop(std::size_t genus, std::size_t index);

/// frame followed by the twist c -> c + <c, gamma> gamma.
SymplecticFrame transvection(const SymplecticFrame& frame, const gf2::BitVec& gamma);

struct Generator {
  std::string name;
  gf2::BitVec gamma;
};

/// D_1..D_{2g} and the handle-linking loops D_{k,k+1} = D_k + D_{k+1}: 3g-1 twists.
std::vector<Generator> standard_generators(std::size_t genus);

/// Logical CNOT between logical qubits, 0-based: qubit i is q_{i+1}.
struct Cnot {
  std::size_t control;
  std::size_t target;
  friend bool operator==(const Cnot&, const Cnot&) = default;
};

/// Homology class carrying Z-bar (resp. X-bar) of logical qubit i (0-based).
/// Z-bar of q_{2k} lies on D_k and of q_{2k-1} on D_{k+g}; X-bar of q_{2k-1} on D_k.
gf2::BitVec z_class(std::size_t genus, std::size_t qubit);
gf2::BitVec x_class(std::size_t genus, std::size_t qubit);

/// Action of a logical CNOT circuit on homology, read off from Z-bar images. Throws
/// std::logic_error if the X-bar images imply a different frame.
SymplecticFrame frame_of_circuit(std::size_t genus, const std::vector<Cnot>& circuit);

/// The logical circuit a standard generator is claimed to implement.
std::vector<Cnot> generator_circuit(std::size_t genus, const Generator& gen);

/// Exchanges the logical qubits of handles k and k+1 (1-based). Mirrored (default):
/// q_{2k-1} <-> q_{2k+2} and q_{2k} <-> q_{2k+1}, i.e. D_k <-> D_{k+1+g}, D_{k+g} <-> D_{k+1}.
/// Otherwise q_{2k-1} <-> q_{2k+1}, q_{2k} <-> q_{2k+2}, i.e. D_k <-> D_{k+1}, D_{k+g} <-> D_{k+1+g}.
/// The two differ by a swap inside each handle.
SymplecticFrame handle_swap(std::size_t genus, std::size_t k, bool mirrored = true);

/// Composes the twists of `word` (indices into gens), first letter applied first.
SymplecticFrame compose(std::size_t genus, const std::vector<Generator>& gens, const std::vector<std::size_t>& word);

/// Shortest word over gens reaching target, searching breadth-first up to max_length.
std::optional<std::vector<std::size_t>> shortest_word(const SymplecticFrame& target, const std::vector<Generator>& gens,
                                                      std::size_t max_length);

/// Some word of exactly `length` letters reaching target.
std::optional<std::vector<std::size_t>> word_of_length(const SymplecticFrame& target,
                                                       const std::vector<Generator>& gens, std::size_t length);

/// Twists on handles k, k+1: D_k, D_{k+g}, D_{k+1}, D_{k+1+g}, D_{k,k+1}.
std::vector<Generator> handle_pair_generators(std::size_t genus, std::size_t k);
/// The above plus D_k + D_{k+g} and D_k + D_{k+1+g}.
std::vector<Generator> enlarged_handle_pair_generators(std::size_t genus, std::size_t k);

struct SwapWord {
  std::vector<Generator> generators;
  std::vector<std::size_t> word;
  bool verified = false;
  std::string to_string() const;
};

/// A 9-twist word for the mirrored handle_swap, with its frame checked.
SwapWord swap_via_twists(std::size_t genus, std::size_t k);

/// Shortest word for the mirrored handle_swap over the enlarged generating set, or
/// nullopt when none has at most max_length letters.
std::optional<SwapWord> short_swap_search(std::size_t genus, std::size_t k, std::size_t max_length);

/// Tracked Pauli operators on n physical qubits under CNOT layers.
class PauliFrame {
 public:
  explicit PauliFrame(std::size_t n) : n_(n) {}

  std::size_t qubits() const noexcept { return n_; }
  std::size_t size() const noexcept { return x_.size(); }
  std::size_t add(gf2::BitVec x, gf2::BitVec z);
  const gf2::BitVec& x(std::size_t row) const noexcept { return x_[row]; }
  const gf2::BitVec& z(std::size_t row) const noexcept { return z_[row]; }

  /// X_c -> X_c X_t and Z_t -> Z_c Z_t on every tracked row.
  void cnot(std::size_t control, std::size_t target);
  bool commute(std::size_t a, std::size_t b) const { return x_[a].dot(z_[b]) == x_[b].dot(z_[a]); }
  std::size_t weight(std::size_t row) const;

 private:
  std::size_t n_;
  std::vector<gf2::BitVec> x_;
  std::vector<gf2::BitVec> z_;
};

/// Physical CNOT fan-out schedule twisting along a Z-bar loop.
struct TwistSchedule {
  std::vector<std::size_t> loop_vertices;           ///< v_0..v_{d-1}
  std::vector<std::size_t> loop_edges;              ///< e_j joins v_j and v_{j+1}
  std::vector<std::vector<std::size_t>> side_edges; ///< S_j: edges at v_j on the chosen side
  /// Step k (1..d) applies CNOT(e_j -> t) for all j and t in S_{j+k}.
  std::vector<std::vector<Cnot>> layers;
};

/// Throws std::invalid_argument if the loop is not a simple cycle or its side edges
/// cannot be oriented consistently.
TwistSchedule twist_schedule(const TiledSurface& s, const gf2::BitVec& loop);

struct TwistReport {
  TwistSchedule schedule;
  std::size_t repetitions = 1;
  bool commuting = true;             ///< every layer kept the tracked group abelian
  bool stabilizers_preserved = false;
  bool logical_matches = false;
  std::size_t x_weight_min = 0;      ///< over X-checks after every layer
  std::size_t x_weight_max = 0;
  /// Logical maps on (X-bar | Z-bar) coordinates of the code's logical pairs; column c
  /// is the image of basis operator c.
  gf2::BitMatrix measured;
  gf2::BitMatrix predicted;
  bool ok() const { return commuting && stabilizers_preserved && logical_matches; }
};

/// Runs the schedule `repetitions` times on the stabilizer tableau of `code` (derived
/// from `s`) and compares the logical action with the transvection along the loop.
TwistReport circuit_twist(const TiledSurface& s, const CssCode& code, const gf2::BitVec& loop,
                          std::size_t repetitions = 1);

}  // namespace hypsc::dehn
