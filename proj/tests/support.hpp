// Random generators and small reference implementations shared by the tests.
#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <random>
#include <vector>

#include "parasurf/word.hpp"

namespace testsupport {

using parasurf::Letter;
using parasurf::Word;

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20261015);
  return g;
}

inline int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

/// Letters drawn independently, so cancellations are common.
inline std::vector<Letter> random_letters(int rank, int length) {
  std::vector<Letter> out;
  for (int i = 0; i < length; ++i) out.push_back(Letter{uniform(1, rank), uniform(0, 1) ? 1 : -1});
  return out;
}

inline Word random_word(int rank, int max_length) {
  return Word(rank, random_letters(rank, uniform(0, max_length)));
}

/// Quadratic free reduction: delete the leftmost cancelling pair until none is left.
inline std::vector<Letter> naive_reduce(std::vector<Letter> w) {
  for (bool again = true; again;) {
    again = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i].index == w[i + 1].index && w[i].sign == -w[i + 1].sign) {
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        again = true;
        break;
      }
    }
  }
  return w;
}

inline std::vector<Letter> letters_of(const Word& w) { return {w.letters().begin(), w.letters().end()}; }

/// Noncommutative polynomial keyed by monomial letter tuple, truncated below `cls`.
using Poly = std::map<std::vector<int>, std::int64_t>;

inline Poly poly_mul(const Poly& a, const Poly& b, int cls) {
  Poly out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      if (static_cast<int>(ma.size() + mb.size()) >= cls) continue;
      std::vector<int> m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      out[m] += ca * cb;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

/// Magnus image of a word computed letter by letter: a_i = 1 + x_i and
/// a_i^-1 = 1 - x_i + x_i^2 - ...
inline Poly poly_of_word(const Word& w, int cls) {
  Poly out{{{}, 1}};
  for (const Letter& l : w.letters()) {
    Poly f{{{}, 1}};
    std::vector<int> m;
    for (int d = 1; d < cls; ++d) {
      m.push_back(l.index);
      if (l.sign > 0 && d > 1) break;
      f[m] = (l.sign > 0 || d % 2 == 0) ? 1 : -1;
    }
    out = poly_mul(out, f, cls);
  }
  return out;
}

// F_{2,3} is the Heisenberg group: a1, a2 map to the unitriangular matrices
// with a single 1 at (0,1) and (1,2). Stored as (m01, m12, m02).
using Heis = std::array<long, 3>;

inline Heis heis_mul(const Heis& x, const Heis& y) {
  return {x[0] + y[0], x[1] + y[1], x[2] + y[2] + x[0] * y[1]};
}

inline Heis heis_inv(const Heis& x) { return {-x[0], -x[1], -x[2] + x[0] * x[1]}; }

inline Heis heis_of(const Word& w) {
  Heis out{0, 0, 0};
  for (const Letter& l : w.letters()) {
    const Heis g{l.index == 1 ? 1 : 0, l.index == 2 ? 1 : 0, 0};
    out = heis_mul(out, l.sign > 0 ? g : heis_inv(g));
  }
  return out;
}

enum class HeisVerdict { kEqual, kConjugate, kNotConjugate, kOutsideBox };

/// Searches t = (p, q, 0) over |p|, |q| <= 300; the central coordinate of t
/// does not affect t^-1 x t. With |x01|, |x12| <= 6 and |y02 - x02| <= 50 an
/// extended-gcd solution lies in that box, so the search is exhaustive; other
/// instances are refused.
inline HeisVerdict heis_conjugacy(const Heis& x, const Heis& y) {
  if (std::labs(x[0]) > 6 || std::labs(x[1]) > 6 || std::labs(y[2] - x[2]) > 50) return HeisVerdict::kOutsideBox;
  if (x == y) return HeisVerdict::kEqual;
  for (long p = -300; p <= 300; ++p) {
    for (long q = -300; q <= 300; ++q) {
      const Heis t{p, q, 0};
      if (heis_mul(heis_mul(heis_inv(t), x), t) == y) return HeisVerdict::kConjugate;
    }
  }
  return HeisVerdict::kNotConjugate;
}

/// Free ranks r_n from 1 - k t + t^2 = prod_n (1 - t^n)^{r_n}, peeling one
/// factor per degree off the power series. Index 0 is unused.
inline std::vector<std::int64_t> surface_ranks_by_series(int rank, int top) {
  const auto n_terms = static_cast<std::size_t>(top) + 1;
  std::vector<std::int64_t> target(n_terms, 0);
  target[0] = 1;
  if (top >= 1) target[1] = -rank;
  if (top >= 2) target[2] = 1;
  std::vector<std::int64_t> prod(n_terms, 0);
  prod[0] = 1;
  std::vector<std::int64_t> ranks(n_terms, 0);
  for (std::size_t n = 1; n < n_terms; ++n) {
    // (1 - t^n)^r moves the t^n coefficient by -r.
    const std::int64_t r = prod[n] - target[n];
    ranks[n] = r;
    for (std::int64_t t = 0; t < r; ++t) {
      for (std::size_t i = n_terms - 1; i >= n; --i) prod[i] -= prod[i - n];
    }
  }
  return ranks;
}

}  // namespace testsupport
