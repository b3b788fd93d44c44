#include "parasurf/word.hpp"

#include <algorithm>

namespace parasurf {

std::string_view to_string(CommutatorConvention conv) {
  return conv == CommutatorConvention::kInverseFirst ? "inverse-first" : "inverse-last";
}

CommutatorConvention convention_from_string(std::string_view name) {
  if (name == "inverse-first") return CommutatorConvention::kInverseFirst;
  if (name == "inverse-last") return CommutatorConvention::kInverseLast;
  throw std::invalid_argument("unknown commutator convention '" + std::string(name) +
                              "' (expected inverse-first or inverse-last)");
}

namespace {

void check_letter(int rank, Letter l) {
  if (l.index < 1 || l.index > rank) {
    throw std::out_of_range("generator index " + std::to_string(l.index) +
                            " outside alphabet of rank " + std::to_string(rank));
  }
  if (l.sign != 1 && l.sign != -1) {
    throw std::invalid_argument("letter sign must be +1 or -1");
  }
}

void push_reduced(std::vector<Letter>& out, Letter l) {
  if (!out.empty() && out.back().cancels(l)) {
    out.pop_back();
  } else {
    out.push_back(l);
  }
}

}  // namespace

Word::Word(int rank) : rank_(rank) {
  if (rank < 0) throw std::invalid_argument("negative alphabet rank");
}

Word::Word(int rank, std::span<const Letter> letters) : Word(rank) {
  letters_.reserve(letters.size());
  for (Letter l : letters) {
    check_letter(rank, l);
    push_reduced(letters_, l);
  }
}

Word Word::generator(int rank, int index, int sign) {
  Letter l{index, sign};
  return Word(rank, std::span<const Letter>(&l, 1));
}

Word Word::inverse() const {
  Word out(rank_);
  out.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    out.letters_.push_back(it->inverse());
  }
  return out;
}

Word Word::pow(std::int64_t n) const {
  Word base = n < 0 ? inverse() : *this;
  std::uint64_t e = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  if (e == 0 || base.empty()) return Word(rank_);
  // conj * core^e * conj^-1 with a cyclically reduced core needs no further reduction.
  auto [core, conj] = cyclic_reduce(base);
  Word result = conj;
  result.letters_.reserve(conj.length() * 2 + core.length() * e);
  for (std::uint64_t i = 0; i < e; ++i) {
    result.letters_.insert(result.letters_.end(), core.letters_.begin(), core.letters_.end());
  }
  for (Letter l : conj.inverse().letters_) result.letters_.push_back(l);
  return result;
}

Word Word::with_rank(int rank) const {
  return Word(rank, std::span<const Letter>(letters_));
}

Word operator*(const Word& lhs, const Word& rhs) {
  if (lhs.rank_ != rhs.rank_) {
    throw std::invalid_argument("word product over alphabets of different rank");
  }
  Word out = lhs;
  out.letters_.reserve(lhs.letters_.size() + rhs.letters_.size());
  for (Letter l : rhs.letters_) push_reduced(out.letters_, l);
  return out;
}

Word free_reduce(int rank, std::span<const Letter> letters) { return Word(rank, letters); }

Word commutator(const Word& u, const Word& v, CommutatorConvention conv) {
  if (conv == CommutatorConvention::kInverseFirst) {
    return u.inverse() * v.inverse() * u * v;
  }
  return u * v * u.inverse() * v.inverse();
}

Word conjugate(const Word& u, const Word& v) { return v.inverse() * u * v; }

CyclicReduction cyclic_reduce(const Word& w) {
  auto letters = w.letters();
  std::size_t lo = 0;
  std::size_t hi = letters.size();
  while (hi - lo >= 2 && letters[lo].cancels(letters[hi - 1])) {
    ++lo;
    --hi;
  }
  return {Word(w.rank(), letters.subspan(lo, hi - lo)), Word(w.rank(), letters.first(lo))};
}

bool is_cyclically_reduced(const Word& w) {
  auto letters = w.letters();
  return letters.size() < 2 || !letters.front().cancels(letters.back());
}

std::size_t cyclic_length(const Word& w) { return cyclic_reduce(w).core.length(); }

std::vector<std::int64_t> exponent_sums(const Word& w) {
  std::vector<std::int64_t> sums(static_cast<std::size_t>(w.rank()), 0);
  for (Letter l : w.letters()) sums[static_cast<std::size_t>(l.index - 1)] += l.sign;
  return sums;
}

bool in_commutator_subgroup(const Word& w) {
  auto sums = exponent_sums(w);
  return std::all_of(sums.begin(), sums.end(), [](std::int64_t s) { return s == 0; });
}

Word surface_relator(int genus, CommutatorConvention conv) {
  if (genus < 1) throw std::invalid_argument("surface relator needs genus >= 1");
  const int rank = 2 * genus;
  Word w(rank);
  for (int i = 1; i < rank; i += 2) {
    w = w * commutator(Word::generator(rank, i), Word::generator(rank, i + 1), conv);
  }
  return w;
}

Endomorphism::Endomorphism(int rank, std::vector<Word> images)
    : rank_(rank), images_(std::move(images)) {
  if (images_.size() != static_cast<std::size_t>(rank)) {
    throw std::invalid_argument("endomorphism needs exactly one image per generator");
  }
  for (const Word& img : images_) {
    if (img.rank() != rank) throw std::invalid_argument("endomorphism image over wrong alphabet");
  }
}

Endomorphism Endomorphism::identity(int rank) {
  std::vector<Word> images;
  for (int i = 1; i <= rank; ++i) images.push_back(Word::generator(rank, i));
  return Endomorphism(rank, std::move(images));
}

Endomorphism Endomorphism::with_image(int index, Word image) const {
  std::vector<Word> images = images_;
  images.at(static_cast<std::size_t>(index - 1)) = std::move(image);
  return Endomorphism(rank_, std::move(images));
}

Word apply_endomorphism(const Endomorphism& e, const Word& w) {
  if (e.rank() != w.rank()) {
    throw std::invalid_argument("endomorphism rank " + std::to_string(e.rank()) +
                                " does not match word rank " + std::to_string(w.rank()));
  }
  std::vector<Word> inverses;
  inverses.reserve(e.images().size());
  for (const Word& img : e.images()) inverses.push_back(img.inverse());
  Word out(w.rank());
  for (Letter l : w.letters()) {
    const auto i = static_cast<std::size_t>(l.index - 1);
    out = out * (l.sign > 0 ? e.images()[i] : inverses[i]);
  }
  return out;
}

std::optional<ProperPower> is_proper_power(const Word& w) {
  if (w.empty()) throw std::invalid_argument("is_proper_power: empty word");
  auto [core, conj] = cyclic_reduce(w);
  auto letters = core.letters();
  const std::size_t n = letters.size();
  // Smallest period dividing n gives the largest exponent.
  for (std::size_t period = 1; period <= n / 2; ++period) {
    if (n % period != 0) continue;
    bool periodic = true;
    for (std::size_t i = period; i < n && periodic; ++i) {
      periodic = letters[i] == letters[i - period];
    }
    if (periodic) {
      Word root = conj * Word(w.rank(), letters.first(period)) * conj.inverse();
      return ProperPower{root, static_cast<std::int64_t>(n / period)};
    }
  }
  return std::nullopt;
}

std::string format_word(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (Letter l : w.letters()) {
    if (!out.empty()) out += '*';
    out += l.sign > 0 ? 'a' : 'A';
    out += std::to_string(l.index);
  }
  return out;
}

}  // namespace parasurf
