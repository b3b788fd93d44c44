// Lyndon words, their standard bracketings, and Mal'cev coordinates on F_{k,c}.
#pragma once

#include <cstdint>
#include <vector>

#include "parasurf/magnus.hpp"

namespace parasurf {

using LyndonWord = std::vector<int>;  // letters 1..k

/// Lyndon words of length `degree` over 1..k, lexicographically ordered.
std::vector<LyndonWord> lyndon_words(int rank, int degree);

/// (1/j) sum_{d | j} mu(d) k^{j/d}.
Int witt_rank(int rank, int degree);

bool is_lyndon(const LyndonWord& w);

/// Splits a Lyndon word of length >= 2 as u * v with v its longest proper
/// Lyndon suffix.
std::pair<LyndonWord, LyndonWord> standard_factorization(const LyndonWord& w);

/// Dense degree-j vector of the standard bracketing of w in the free Lie ring.
/// Throws std::invalid_argument if w is not Lyndon.
IntVector bracket_vector(const LyndonWord& w, int rank);
/// Group commutator realizing the standard bracketing (inverse-first convention).
Word bracket_word(const LyndonWord& w, int rank);

/// Coordinates of v over the degree-j Lyndon bracket vectors. Throws
/// std::domain_error when v is not in their integer span.
IntVector to_lyndon_coords(std::span<const Int> v, int rank, int degree);

/// Exponents e_l of x = prod_l bracket(l)^{e_l}, ordered by (degree, lex).
struct MalcevCoordinates {
  int rank = 0;
  int cls = 0;
  std::vector<IntVector> layers;  // layers[d-1]: one exponent per Lyndon word of degree d

  [[nodiscard]] std::size_t size() const;
  [[nodiscard]] bool is_zero() const;
  friend bool operator==(const MalcevCoordinates&, const MalcevCoordinates&) = default;
};

MalcevCoordinates malcev_coordinates(const NilElement& x);
NilElement from_malcev(const MalcevCoordinates& coords);
/// The word prod_l bracket_word(l)^{e_l}.
Word malcev_word(const MalcevCoordinates& coords);

/// Cached basis data for one (k, c).
class BracketBasis {
 public:
  BracketBasis(int rank, int cls);

  [[nodiscard]] const SeriesContext& context() const { return ctx_; }
  [[nodiscard]] const std::vector<LyndonWord>& words(int degree) const;
  /// Bracket elements of F_{k,c}, one per Lyndon word of `degree`.
  [[nodiscard]] const std::vector<NilElement>& elements(int degree) const;

 private:
  SeriesContext ctx_;
  std::vector<std::vector<LyndonWord>> words_;
  std::vector<std::vector<NilElement>> elements_;
};

/// Shared, lazily built basis for (k, c); thread-safe.
const BracketBasis& bracket_basis(int rank, int cls);

}  // namespace parasurf
