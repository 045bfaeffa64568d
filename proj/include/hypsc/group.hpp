#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypsc/surface.hpp"

namespace hypsc::group {

/// Generator letters of the rotation group: rho, rho^-1, sigma, sigma^-1.
enum Letter : int { kRho = 0, kRhoInv = 1, kSigma = 2, kSigmaInv = 3 };

constexpr int inverse_letter(int letter) noexcept { return letter ^ 1; }

using Word = std::vector<int>;

/// Parses a word over {R, r, S, s} (rho, rho^-1, sigma, sigma^-1).
Word parse_word(const std::string& text);
std::string format_word(const Word& word);

/// <rho, sigma | rho^r, sigma^s, (rho sigma)^2, extra...> for the rotation subgroup of the
/// {r,s} triangle group. The extra relators generate the normal subgroup H.
struct Presentation {
  int r = 0;
  int s = 0;
  std::vector<Word> extra_relators;

  std::vector<Word> relators() const;
};

/// Coset table of the trivial subgroup, i.e. the right-regular action of the quotient group.
/// action[letter][c] is the coset c * letter. Cosets are numbered in breadth-first order from
/// the identity (coset 0), which makes the table canonical for a given presentation.
struct CosetTable {
  std::size_t size = 0;
  std::vector<std::vector<std::size_t>> action;

  std::size_t apply(std::size_t coset, const Word& word) const;
};

class EnumerationOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Todd-Coxeter (HLT with lookahead) enumeration of the quotient group.
/// Throws EnumerationOverflow when more than `max_cosets` live cosets would be needed.
CosetTable todd_coxeter(const Presentation& p, std::size_t max_cosets);

/// Faces, vertices and edges are the orbits of <rho>, <sigma> and <tau = rho sigma>.
/// Throws std::invalid_argument if a <rho> or <sigma> orbit is short (torsion in H).
TiledSurface tiling_from_quotient(const CosetTable& table, int r, int s, std::string name = {});

struct QuotientCandidate {
  std::vector<Word> extra_relators;
  std::size_t order = 0;
};

struct QuotientSearchOptions {
  std::size_t max_index = 240;
  std::size_t min_index = 1;
  /// Longest syllable count (rho^a sigma^b pairs) of a single candidate relator.
  std::size_t max_syllables = 4;
  /// Relator sets of up to this many words are tried.
  std::size_t max_relators = 1;
  /// Upper bound on Todd-Coxeter runs before giving up.
  std::size_t budget = 2'000'000;
};

/// Searches for torsion-free normal subgroups of low index by adjoining short relators to the
/// presentation. Returns one candidate per distinct (order, surface census) found, smallest
/// order first. Throws std::runtime_error if the run budget is exhausted before the search
/// space is covered.
std::vector<QuotientCandidate> low_index_normal_subgroups(int r, int s, const QuotientSearchOptions& options);

}  // namespace hypsc::group
