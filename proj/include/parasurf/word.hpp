// Free-group words over a_1..a_k: reduction, commutator calculus, endomorphisms.
#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace parasurf {

/// Which of the two commutator conventions a construction uses.
///
///   kInverseFirst: [u,v] = u^-1 v^-1 u v   (library default)
///   kInverseLast:  [u,v] = u v u^-1 v^-1
///
/// The default matches the word grammar documented in docs/word_grammar.md.
/// Note that w[w,X] is a conjugate of w under kInverseFirst for every X, so
/// the relator family w[w, g w g^-1] is only interesting under kInverseLast.
enum class CommutatorConvention { kInverseFirst, kInverseLast };

std::string_view to_string(CommutatorConvention conv);
CommutatorConvention convention_from_string(std::string_view name);

/// Signed generator a_index^sign, 1-indexed.
struct Letter {
  int index = 1;
  int sign = 1;

  [[nodiscard]] Letter inverse() const { return {index, -sign}; }
  [[nodiscard]] bool cancels(Letter other) const {
    return index == other.index && sign == -other.sign;
  }
  auto operator<=>(const Letter&) const = default;
};

/// Immutable, freely reduced word over an alphabet of rank k.
class Word {
 public:
  Word() = default;
  explicit Word(int rank);

  /// Freely reduces `letters`; throws std::out_of_range on an index outside 1..rank.
  Word(int rank, std::span<const Letter> letters);

  static Word generator(int rank, int index, int sign = 1);

  [[nodiscard]] int rank() const { return rank_; }
  [[nodiscard]] std::span<const Letter> letters() const { return letters_; }
  [[nodiscard]] std::size_t length() const { return letters_.size(); }
  [[nodiscard]] bool empty() const { return letters_.empty(); }

  [[nodiscard]] Word inverse() const;
  [[nodiscard]] Word pow(std::int64_t n) const;
  [[nodiscard]] Word with_rank(int rank) const;

  friend Word operator*(const Word& lhs, const Word& rhs);
  friend bool operator==(const Word&, const Word&) = default;

 private:
  int rank_ = 0;
  std::vector<Letter> letters_;
};

/// Free reduction of an arbitrary letter sequence.
Word free_reduce(int rank, std::span<const Letter> letters);

Word commutator(const Word& u, const Word& v,
                CommutatorConvention conv = CommutatorConvention::kInverseFirst);

/// u^v = v^-1 u v.
Word conjugate(const Word& u, const Word& v);

struct CyclicReduction {
  Word core;
  Word conjugator;  // input = conjugator * core * conjugator^-1
};

CyclicReduction cyclic_reduce(const Word& w);
bool is_cyclically_reduced(const Word& w);

inline std::size_t word_length(const Word& w) { return w.length(); }
std::size_t cyclic_length(const Word& w);

/// Exponent sum of each generator, indexed 0..k-1.
std::vector<std::int64_t> exponent_sums(const Word& w);
bool in_commutator_subgroup(const Word& w);

/// [a1,a2][a3,a4]...[a_{2g-1},a_{2g}] over the alphabet of rank 2g.
Word surface_relator(int genus,
                     CommutatorConvention conv = CommutatorConvention::kInverseFirst);

class Endomorphism {
 public:
  Endomorphism(int rank, std::vector<Word> images);
  static Endomorphism identity(int rank);

  [[nodiscard]] int rank() const { return rank_; }
  [[nodiscard]] const std::vector<Word>& images() const { return images_; }
  [[nodiscard]] const Word& image(int index) const { return images_.at(index - 1); }

  /// Copy with a_index sent to `image`.
  [[nodiscard]] Endomorphism with_image(int index, Word image) const;

 private:
  int rank_;
  std::vector<Word> images_;
};

Word apply_endomorphism(const Endomorphism& e, const Word& w);

struct ProperPower {
  Word root;
  std::int64_t exponent;
};

/// Some root^n with n >= 2 equal to w, taking the largest such n; nullopt if
/// w is not a proper power. Throws std::invalid_argument on the empty word.
std::optional<ProperPower> is_proper_power(const Word& w);

/// Emits the word grammar: letters joined by '*', inverses uppercase, "1" for
/// the empty word.
std::string format_word(const Word& w);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position);
  [[nodiscard]] std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses the word grammar (see docs/word_grammar.md) over generators a1..ak.
Word parse_word(std::string_view text, int rank,
                CommutatorConvention conv = CommutatorConvention::kInverseFirst);

// Hypothesis checks on the two relator families.

struct Type2Report {
  int rank = 0;
  Word gamma;
  Word relator;  // w[w, gamma w gamma^-1], freely reduced
  bool cyclically_reduced = false;
  std::size_t relator_length = 0;
  std::size_t relator_cyclic_length = 0;
  std::size_t surface_length = 0;
  bool pass = false;
};

struct Type3Report {
  int rank = 0;
  Word delta;
  Word commutator;  // [a1 delta, a2], freely reduced
  bool cyclically_reduced = false;
  std::size_t length = 0;
  std::size_t base_length = 4;  // |[a1,a2]|
  bool delta_in_commutator_subgroup = false;
  bool pass = false;
};

/// The relator w[w, gamma w gamma^-1] with w = surface_relator(k/2).
Word type2_relator(int rank, const Word& gamma, CommutatorConvention conv);
/// The relator [a1 delta, a2][a3,a4]...[a_{k-1},a_k].
Word type3_relator(int rank, const Word& delta, CommutatorConvention conv);
/// a1 -> a1 delta, a_i -> a_i otherwise.
Endomorphism type3_map(int rank, const Word& delta);

Type2Report check_hypothesis_type2(
    int rank, const Word& gamma,
    CommutatorConvention conv = CommutatorConvention::kInverseFirst);
Type3Report check_hypothesis_type3(
    int rank, const Word& delta,
    CommutatorConvention conv = CommutatorConvention::kInverseFirst);

}  // namespace parasurf
