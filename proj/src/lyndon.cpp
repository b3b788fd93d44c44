#include "parasurf/lyndon.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace parasurf {

std::vector<LyndonWord> lyndon_words(int rank, int degree) {
  if (rank < 1 || degree < 1) throw std::invalid_argument("lyndon_words needs k >= 1 and j >= 1");
  // Duval's generator: all Lyndon words of length <= degree in lex order.
  std::vector<LyndonWord> out;
  std::vector<int> w{0};
  const auto n = static_cast<std::size_t>(degree);
  while (!w.empty()) {
    if (w.size() == n) {
      LyndonWord l;
      for (int x : w) l.push_back(x + 1);
      out.push_back(std::move(l));
    }
    const std::size_t m = w.size();
    while (w.size() < n) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == rank - 1) w.pop_back();
    if (!w.empty()) ++w.back();
  }
  return out;
}

namespace {

int mobius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  if (n > 1) result = -result;
  return result;
}

}  // namespace

Int witt_rank(int rank, int degree) {
  if (rank < 1 || degree < 1) throw std::invalid_argument("witt_rank needs k >= 1 and j >= 1");
  Int sum = 0;
  for (int d = 1; d <= degree; ++d) {
    if (degree % d != 0) continue;
    Int term;
    mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(rank), static_cast<unsigned long>(degree / d));
    sum += mobius(d) * term;
  }
  return sum / degree;
}

bool is_lyndon(const LyndonWord& w) {
  if (w.empty()) return false;
  const std::size_t n = w.size();
  for (std::size_t r = 1; r < n; ++r) {
    // Compare w with its rotation starting at r; w must be strictly smaller.
    int cmp = 0;
    for (std::size_t i = 0; i < n && cmp == 0; ++i) {
      const int a = w[i];
      const int b = w[(i + r) % n];
      cmp = a < b ? -1 : (a > b ? 1 : 0);
    }
    if (cmp >= 0) return false;
  }
  return true;
}

std::pair<LyndonWord, LyndonWord> standard_factorization(const LyndonWord& w) {
  if (w.size() < 2 || !is_lyndon(w)) {
    throw std::invalid_argument("standard factorization needs a Lyndon word of length >= 2");
  }
  for (std::size_t i = 1; i < w.size(); ++i) {
    LyndonWord v(w.begin() + static_cast<std::ptrdiff_t>(i), w.end());
    if (is_lyndon(v)) return {LyndonWord(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i)), v};
  }
  throw std::logic_error("Lyndon word without Lyndon suffix");
}

namespace {

std::uint64_t ipow(int k, std::size_t e) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= static_cast<std::uint64_t>(k);
  return r;
}

IntVector dense_bracket(const LyndonWord& w, int rank) {
  if (w.size() == 1) {
    IntVector v(static_cast<std::size_t>(rank));
    v[static_cast<std::size_t>(w[0] - 1)] = 1;
    return v;
  }
  auto [u, v] = standard_factorization(w);
  const IntVector p = dense_bracket(u, rank);
  const IntVector q = dense_bracket(v, rank);
  const std::uint64_t kp = ipow(rank, u.size());
  const std::uint64_t kq = ipow(rank, v.size());
  IntVector r(kp * kq);
  for (std::uint64_t i = 0; i < kp; ++i) {
    if (sgn(p[i]) == 0) continue;
    for (std::uint64_t j = 0; j < kq; ++j) {
      if (sgn(q[j]) == 0) continue;
      const Int prod = p[i] * q[j];
      r[i * kq + j] += prod;
      r[j * kp + i] -= prod;
    }
  }
  return r;
}

using SparseVector = std::vector<std::pair<std::uint64_t, Int>>;

struct LayerBrackets {
  std::vector<LyndonWord> words;
  std::vector<std::uint64_t> leading;  // monomial index of each Lyndon word
  std::vector<SparseVector> vectors;
};

const LayerBrackets& layer_brackets(int rank, int degree) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<LayerBrackets>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{rank, degree}];
  if (!slot) {
    auto layer = std::make_unique<LayerBrackets>();
    layer->words = lyndon_words(rank, degree);
    for (const LyndonWord& w : layer->words) {
      layer->leading.push_back(monomial_index(w, rank));
      IntVector dense = dense_bracket(w, rank);
      SparseVector sparse;
      for (std::uint64_t i = 0; i < dense.size(); ++i) {
        if (sgn(dense[i]) != 0) sparse.emplace_back(i, dense[i]);
      }
      layer->vectors.push_back(std::move(sparse));
    }
    slot = std::move(layer);
  }
  return *slot;
}

}  // namespace

IntVector bracket_vector(const LyndonWord& w, int rank) {
  if (!is_lyndon(w)) throw std::invalid_argument("bracket_vector: input is not a Lyndon word");
  for (int x : w) {
    if (x < 1 || x > rank) throw std::out_of_range("bracket_vector: letter outside alphabet");
  }
  return dense_bracket(w, rank);
}

Word bracket_word(const LyndonWord& w, int rank) {
  if (!is_lyndon(w)) throw std::invalid_argument("bracket_word: input is not a Lyndon word");
  if (w.size() == 1) return Word::generator(rank, w[0]);
  auto [u, v] = standard_factorization(w);
  return commutator(bracket_word(u, rank), bracket_word(v, rank), CommutatorConvention::kInverseFirst);
}

IntVector to_lyndon_coords(std::span<const Int> v, int rank, int degree) {
  const LayerBrackets& layer = layer_brackets(rank, degree);
  if (v.size() != ipow(rank, static_cast<std::size_t>(degree))) {
    throw std::invalid_argument("to_lyndon_coords: vector has wrong dimension");
  }
  // Each bracket vector is its Lyndon word plus lexicographically larger
  // monomials, so ascending elimination is triangular.
  IntVector rest(v.begin(), v.end());
  IntVector coords(layer.words.size());
  for (std::size_t i = 0; i < layer.words.size(); ++i) {
    const Int e = rest[layer.leading[i]];
    if (sgn(e) == 0) continue;
    for (const auto& [idx, coef] : layer.vectors[i]) {
      mpz_submul(rest[idx].get_mpz_t(), e.get_mpz_t(), coef.get_mpz_t());
    }
    coords[i] = e;
  }
  if (!is_zero(rest)) {
    throw std::domain_error("to_lyndon_coords: vector is not in the span of the Lyndon brackets");
  }
  return coords;
}

std::size_t MalcevCoordinates::size() const {
  std::size_t n = 0;
  for (const auto& l : layers) n += l.size();
  return n;
}

bool MalcevCoordinates::is_zero() const {
  for (const auto& l : layers) {
    if (!parasurf::is_zero(l)) return false;
  }
  return true;
}

BracketBasis::BracketBasis(int rank, int cls) : ctx_(rank, cls) {
  if (cls < 2) throw std::invalid_argument("bracket basis needs class >= 2");
  std::map<LyndonWord, NilElement> by_word;
  for (int d = 1; d < cls; ++d) {
    words_.push_back(lyndon_words(rank, d));
    std::vector<NilElement> elems;
    for (const LyndonWord& w : words_.back()) {
      NilElement e;
      if (d == 1) {
        e = embed_word(Word::generator(rank, w[0]), ctx_).without_witness();
      } else {
        auto [u, v] = standard_factorization(w);
        e = nil_commutator(by_word.at(u), by_word.at(v), CommutatorConvention::kInverseFirst);
      }
      by_word.emplace(w, e);
      elems.push_back(std::move(e));
    }
    elements_.push_back(std::move(elems));
  }
}

const std::vector<LyndonWord>& BracketBasis::words(int degree) const {
  return words_.at(static_cast<std::size_t>(degree - 1));
}

const std::vector<NilElement>& BracketBasis::elements(int degree) const {
  return elements_.at(static_cast<std::size_t>(degree - 1));
}

const BracketBasis& bracket_basis(int rank, int cls) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<BracketBasis>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{rank, cls}];
  if (!slot) slot = std::make_unique<BracketBasis>(rank, cls);
  return *slot;
}

}  // namespace parasurf
