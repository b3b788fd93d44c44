// Magnus embedding of F_k into truncated noncommutative integer power series.
//
// An element of F_{k,c} = F_k / gamma_c(F_k) is represented by the series
// of its Magnus expansion with every monomial of degree >= c dropped; two words
// agree in F_{k,c} exactly when these truncated series agree.
#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "parasurf/lattice.hpp"
#include "parasurf/word.hpp"

namespace parasurf {

inline constexpr int kMaxSeriesClass = 12;

/// Noncommuting monomial x_{i1} x_{i2} ... (indices 1-based).
struct Monomial {
  std::vector<int> letters;
  [[nodiscard]] int degree() const { return static_cast<int>(letters.size()); }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Rank k and class c of F_{k,c}, with the monomial key layout: monomials are
/// numbered by degree, then lexicographically, so key order is the repo-wide
/// monomial order.
class SeriesContext {
 public:
  SeriesContext() = default;
  SeriesContext(int rank, int cls);

  [[nodiscard]] int rank() const { return rank_; }
  [[nodiscard]] int cls() const { return cls_; }

  /// Number of monomials of degree 0..c-1.
  [[nodiscard]] std::uint32_t dimension() const { return offset_[static_cast<std::size_t>(cls_)]; }
  [[nodiscard]] std::uint64_t layer_size(int degree) const { return pow_[static_cast<std::size_t>(degree)]; }
  [[nodiscard]] std::uint32_t offset(int degree) const { return offset_[static_cast<std::size_t>(degree)]; }
  [[nodiscard]] int degree(std::uint32_t key) const;
  [[nodiscard]] std::uint32_t key(int degree, std::uint64_t index) const {
    return offset(degree) + static_cast<std::uint32_t>(index);
  }

  [[nodiscard]] Monomial monomial(std::uint32_t key) const;
  [[nodiscard]] std::uint32_t key_of(const Monomial& m) const;

  friend bool operator==(const SeriesContext& a, const SeriesContext& b) {
    return a.rank_ == b.rank_ && a.cls_ == b.cls_;
  }

 private:
  int rank_ = 0;
  int cls_ = 0;
  std::vector<std::uint64_t> pow_;
  std::vector<std::uint32_t> offset_{0};
};

/// Sparse truncated series: (key, nonzero coefficient) pairs sorted by key.
class TruncSeries {
 public:
  using Term = std::pair<std::uint32_t, Int>;

  TruncSeries() = default;
  explicit TruncSeries(SeriesContext ctx) : ctx_(std::move(ctx)) {}
  TruncSeries(SeriesContext ctx, std::vector<Term> terms);

  static TruncSeries one(const SeriesContext& ctx);

  [[nodiscard]] const SeriesContext& context() const { return ctx_; }
  [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] Int coefficient(std::uint32_t key) const;
  [[nodiscard]] Int coefficient(const Monomial& m) const { return coefficient(ctx_.key_of(m)); }

  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
  friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
  friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
  [[nodiscard]] TruncSeries scaled(const Int& factor) const;
  friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
    return a.ctx_ == b.ctx_ && a.terms_ == b.terms_;
  }

 private:
  SeriesContext ctx_;
  std::vector<Term> terms_;
};

/// Element of F_{k,c}: a truncated series with constant term 1, optionally
/// carrying a word it came from.
class NilElement {
 public:
  NilElement() = default;
  explicit NilElement(TruncSeries series, std::optional<Word> witness = std::nullopt);
  static NilElement identity(const SeriesContext& ctx);

  [[nodiscard]] const SeriesContext& context() const { return series_.context(); }
  [[nodiscard]] const TruncSeries& series() const { return series_; }
  [[nodiscard]] const std::optional<Word>& witness() const { return witness_; }
  [[nodiscard]] bool is_identity() const { return series_.terms().size() == 1; }
  [[nodiscard]] NilElement without_witness() const { return NilElement(series_); }

  /// Equality in F_{k,c}; witnesses are ignored.
  friend bool operator==(const NilElement& a, const NilElement& b) { return a.series_ == b.series_; }

 private:
  TruncSeries series_;
  std::optional<Word> witness_;
};

NilElement embed_word(const Word& w, const SeriesContext& ctx);
NilElement embed_word(const Word& w, int rank, int cls);

NilElement nil_mul(const NilElement& a, const NilElement& b);
NilElement nil_inv(const NilElement& a);
NilElement nil_pow(const NilElement& a, const Int& n);
NilElement nil_commutator(const NilElement& a, const NilElement& b,
                          CommutatorConvention conv = CommutatorConvention::kInverseFirst);
/// a^b = b^-1 a b.
NilElement nil_conjugate(const NilElement& a, const NilElement& b);
inline bool nil_equal(const NilElement& a, const NilElement& b) { return a == b; }

/// Least positive degree with a nonzero coefficient, i.e. the largest j with
/// x in gamma_j; nullopt when x is trivial in F_{k,c}.
std::optional<int> weight(const NilElement& x);
/// weight(x), or c for the identity.
int depth(const NilElement& x);

/// Degree-j coefficient vector, indexed lexicographically over k^j monomials.
/// Throws std::domain_error if x has weight < j.
IntVector lie_component(const NilElement& x, int degree);

/// Encodes a monomial of degree j as its lexicographic index in [0, k^j).
std::uint64_t monomial_index(const std::vector<int>& letters, int rank);

}  // namespace parasurf
