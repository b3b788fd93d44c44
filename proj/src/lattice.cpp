#include "parasurf/lattice.hpp"

#include <algorithm>
#include <stdexcept>

#include "parasurf/echelon.hpp"

namespace parasurf {

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  if (!rows.empty()) cols = rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix rows");
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntVector IntMatrix::row_vector(std::size_t r) const {
  auto s = row(r);
  return IntVector(s.begin(), s.end());
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        mpz_addmul(out(i, j).get_mpz_t(), a(i, k).get_mpz_t(), b(k, j).get_mpz_t());
      }
    }
  }
  return out;
}

bool is_zero(std::span<const Int> v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return sgn(x) == 0; });
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

std::string to_string(std::span<const Int> v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i].get_str();
  }
  return out + ")";
}

std::vector<Int> SmithForm::invariant_factors() const {
  std::vector<Int> out;
  for (std::size_t i = 0; i < rank; ++i) out.push_back(D(i, i));
  return out;
}

HermiteBasis hnf(const IntMatrix& a) {
  PlainEchelon e(a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) e.insert(a.row_vector(r), {});
  return e.hermite();
}

namespace {

// Row op on D and U: row_i += q * row_t.
void add_row(IntMatrix& m, std::size_t i, std::size_t t, const Int& q) {
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (sgn(m(t, c)) != 0) mpz_addmul(m(i, c).get_mpz_t(), q.get_mpz_t(), m(t, c).get_mpz_t());
  }
}

void add_col(IntMatrix& m, std::size_t j, std::size_t t, const Int& q) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (sgn(m(r, t)) != 0) mpz_addmul(m(r, j).get_mpz_t(), q.get_mpz_t(), m(r, t).get_mpz_t());
  }
}

}  // namespace

SmithForm snf(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SmithForm f{IntMatrix::identity(m), a, IntMatrix::identity(n), 0};
  IntMatrix& d = f.D;

  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    // Bring the smallest nonzero entry of the trailing block to (t, t).
    auto move_min_to_pivot = [&](bool whole_block) {
      std::size_t bi = m, bj = n;
      for (std::size_t i = t; i < m; ++i) {
        for (std::size_t j = t; j < n; ++j) {
          if (!whole_block && i != t && j != t) continue;
          if (sgn(d(i, j)) == 0) continue;
          if (bi == m || mpz_cmpabs(d(i, j).get_mpz_t(), d(bi, bj).get_mpz_t()) < 0) {
            bi = i;
            bj = j;
          }
        }
      }
      if (bi == m) return false;
      d.swap_rows(t, bi);
      f.U.swap_rows(t, bi);
      d.swap_cols(t, bj);
      f.V.swap_cols(t, bj);
      return true;
    };
    if (!move_min_to_pivot(true)) break;

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (sgn(d(i, t)) == 0) continue;
        Int q = -floor_div(d(i, t), d(t, t));
        add_row(d, i, t, q);
        add_row(f.U, i, t, q);
        if (sgn(d(i, t)) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (sgn(d(t, j)) == 0) continue;
        Int q = -floor_div(d(t, j), d(t, t));
        add_col(d, j, t, q);
        add_col(f.V, j, t, q);
        if (sgn(d(t, j)) != 0) clean = false;
      }
      if (!clean) {
        move_min_to_pivot(false);
        continue;
      }
      // Divisibility: fold any offending row into the pivot row and repeat.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i) {
        for (std::size_t j = t + 1; j < n; ++j) {
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
        }
      }
      if (bad == m) break;
      add_row(d, t, bad, Int(1));
      add_row(f.U, t, bad, Int(1));
    }
    if (sgn(d(t, t)) < 0) {
      for (std::size_t c = 0; c < n; ++c) d(t, c) = -d(t, c);
      for (std::size_t c = 0; c < m; ++c) f.U(t, c) = -f.U(t, c);
    }
  }
  f.rank = t;
  return f;
}

bool LatticeReduction::member() const { return is_zero(remainder); }

LatticeReduction lattice_reduce(const HermiteBasis& b, std::span<const Int> v) {
  if (v.size() != b.dim) {
    throw std::invalid_argument("lattice_reduce: dimension mismatch (" + std::to_string(v.size()) +
                                " vs " + std::to_string(b.dim) + ")");
  }
  LatticeReduction out{IntVector(v.begin(), v.end()), IntVector(b.rank())};
  for (std::size_t i = 0; i < b.rank(); ++i) {
    const std::size_t p = b.pivots[i];
    Int q = floor_div(out.remainder[p], b.rows[i][p]);
    if (sgn(q) != 0) {
      for (std::size_t c = p; c < b.dim; ++c) {
        if (sgn(b.rows[i][c]) != 0) {
          mpz_submul(out.remainder[c].get_mpz_t(), q.get_mpz_t(), b.rows[i][c].get_mpz_t());
        }
      }
    }
    out.coefficients[i] = std::move(q);
  }
  return out;
}

LatticeInsertion lattice_insert(const HermiteBasis& b, std::span<const Int> v) {
  if (v.size() != b.dim) throw std::invalid_argument("lattice_insert: dimension mismatch");
  if (lattice_reduce(b, v).member()) return {b, false};
  PlainEchelon e(b.dim);
  for (const IntVector& row : b.rows) e.insert(row, {});
  e.insert(IntVector(v.begin(), v.end()), {});
  return {e.hermite(), true};
}

std::vector<Int> QuotientInvariants::torsion() const {
  std::vector<Int> out;
  for (const Int& f : invariant_factors) {
    if (f > 1) out.push_back(f);
  }
  return out;
}

QuotientInvariants quotient_invariants(const HermiteBasis& ambient, const HermiteBasis& sub) {
  if (ambient.dim != sub.dim) throw std::invalid_argument("quotient_invariants: dimension mismatch");
  IntMatrix coords(sub.rank(), ambient.rank());
  for (std::size_t r = 0; r < sub.rank(); ++r) {
    LatticeReduction red = lattice_reduce(ambient, sub.rows[r]);
    if (!red.member()) {
      throw std::invalid_argument("quotient_invariants: sub-lattice row " + std::to_string(r) +
                                  " is not in the ambient lattice");
    }
    for (std::size_t c = 0; c < ambient.rank(); ++c) coords(r, c) = red.coefficients[c];
  }
  SmithForm f = snf(coords);
  return {ambient.rank() - f.rank, f.invariant_factors()};
}

HermiteBasis kernel_basis(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  PlainEchelon e(n + m);
  for (std::size_t r = 0; r < m; ++r) {
    IntVector v(n + m);
    std::copy(a.row(r).begin(), a.row(r).end(), v.begin());
    v[n + r] = 1;
    e.insert(std::move(v), {});
  }
  std::vector<IntVector> rows;
  for (const auto& row : e.rows()) {
    if (row.pivot >= n) rows.emplace_back(row.v.begin() + static_cast<std::ptrdiff_t>(n), row.v.end());
  }
  return hnf(IntMatrix::from_rows(rows, m));
}

std::optional<IntVector> solve_in_image(const IntMatrix& generators, std::span<const Int> target) {
  const std::size_t m = generators.rows();
  const std::size_t n = generators.cols();
  if (target.size() != n) throw std::invalid_argument("solve_in_image: dimension mismatch");
  PlainEchelon e(n + m);
  for (std::size_t r = 0; r < m; ++r) {
    IntVector v(n + m);
    std::copy(generators.row(r).begin(), generators.row(r).end(), v.begin());
    v[n + r] = 1;
    e.insert(std::move(v), {});
  }
  IntVector t(n + m);
  std::copy(target.begin(), target.end(), t.begin());
  auto red = e.reduce(t);
  if (!is_zero(std::span<const Int>(red.remainder).first(n))) return std::nullopt;
  IntVector x(m);
  for (std::size_t r = 0; r < m; ++r) x[r] = -red.remainder[n + r];
  return x;
}

bool is_unimodular(const IntMatrix& a) {
  if (a.rows() != a.cols()) return false;
  SmithForm f = snf(a);
  if (f.rank != a.rows()) return false;
  auto factors = f.invariant_factors();
  return std::all_of(factors.begin(), factors.end(), [](const Int& d) { return d == 1; });
}

}  // namespace parasurf
