// Row-echelon integer lattice whose rows carry a payload ("tag") that is
// transformed alongside every unimodular row operation. Untagged use backs
// the Hermite normal form; the closure engine tags rows with group elements.
#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "parasurf/lattice.hpp"

namespace parasurf {

struct NoTag {};

struct NoTagOps {
  NoTag combine(const NoTag&, const Int&, const NoTag&, const Int&) const { return {}; }
  NoTag scale(const NoTag&, const Int&) const { return {}; }
};

/// TagOps must provide
///   Tag combine(a, x, b, y)  ~ a^x * b^y
///   Tag scale(a, x)          ~ a^x
/// so that the tag of any row stays the image of the row under whatever
/// homomorphism the caller has in mind.
template <class Tag, class TagOps>
class Echelon {
 public:
  struct Row {
    IntVector v;
    std::size_t pivot;
    Tag tag;
  };

  struct Insertion {
    bool changed = false;      // lattice grew (or its basis was rewritten)
    bool absorbed = false;     // the vector reduced to zero
    Tag residual{};            // tag of the zero remainder when absorbed
  };

  struct Reduction {
    IntVector remainder;
    IntVector coefficients;  // per row, in row order
    Tag product{};           // prod_i tag_i^{coefficient_i}, in row order
    bool empty_product = true;  // all coefficients zero; `product` is unset
  };

  Echelon(std::size_t dim, TagOps ops) : dim_(dim), ops_(std::move(ops)) {}
  explicit Echelon(std::size_t dim) : dim_(dim) {}

  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] std::size_t rank() const { return rows_.size(); }
  [[nodiscard]] const std::vector<Row>& rows() const { return rows_; }
  [[nodiscard]] const TagOps& ops() const { return ops_; }

  /// Adds v (carrying `tag`) to the lattice, keeping echelon shape with
  /// positive pivots. Entries above pivots are left unreduced.
  Insertion insert(IntVector v, Tag tag) {
    check_dim(v.size());
    Insertion out;
    std::size_t col = 0;
    for (;;) {
      col = first_nonzero(v, col);
      if (col == dim_) {
        out.absorbed = true;
        out.residual = std::move(tag);
        return out;
      }
      auto it = std::lower_bound(rows_.begin(), rows_.end(), col,
                                 [](const Row& r, std::size_t c) { return r.pivot < c; });
      if (it == rows_.end() || it->pivot != col) {
        if (sgn(v[col]) < 0) {
          for (Int& x : v) x = -x;
          tag = ops_.scale(tag, Int(-1));
        }
        rows_.insert(it, Row{std::move(v), col, std::move(tag)});
        out.changed = true;
        return out;
      }
      Row& row = *it;
      const Int a = row.v[col];
      const Int b = v[col];
      if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
        const Int q = b / a;
        axpy(v, -q, row.v, col);
        tag = ops_.combine(tag, Int(1), row.tag, Int(-q));
        continue;
      }
      // Extended gcd step: (row, v) <- (s*row + t*v, (-b/g)*row + (a/g)*v).
      Int g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      const Int ra = -b / g;
      const Int rb = a / g;
      IntVector new_row(dim_);
      IntVector new_v(dim_);
      for (std::size_t i = col; i < dim_; ++i) {
        new_row[i] = s * row.v[i] + t * v[i];
        new_v[i] = ra * row.v[i] + rb * v[i];
      }
      Tag new_row_tag = ops_.combine(row.tag, s, tag, t);
      tag = ops_.combine(row.tag, ra, tag, rb);
      row.v = std::move(new_row);
      row.tag = std::move(new_row_tag);
      v = std::move(new_v);
      out.changed = true;
    }
  }

  /// Floor-division reduction of v against every row in order; the remainder
  /// is zero iff v lies in the lattice.
  [[nodiscard]] Reduction reduce(std::span<const Int> v) const {
    check_dim(v.size());
    Reduction out;
    out.remainder.assign(v.begin(), v.end());
    out.coefficients.resize(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Row& row = rows_[i];
      Int q = floor_div(out.remainder[row.pivot], row.v[row.pivot]);
      if (sgn(q) != 0) {
        axpy(out.remainder, -q, row.v, row.pivot);
        out.product = out.empty_product ? ops_.scale(row.tag, q)
                                        : ops_.combine(out.product, Int(1), row.tag, q);
        out.empty_product = false;
      }
      out.coefficients[i] = std::move(q);
    }
    return out;
  }

  /// Canonical HNF of the row lattice (tags dropped).
  [[nodiscard]] HermiteBasis hermite() const {
    HermiteBasis h;
    h.dim = dim_;
    for (const Row& r : rows_) {
      h.rows.push_back(r.v);
      h.pivots.push_back(r.pivot);
    }
    for (std::size_t i = 0; i < h.rows.size(); ++i) {
      const std::size_t p = h.pivots[i];
      for (std::size_t r = 0; r < i; ++r) {
        Int q = floor_div(h.rows[r][p], h.rows[i][p]);
        if (sgn(q) != 0) axpy(h.rows[r], -q, h.rows[i], p);
      }
    }
    return h;
  }

 private:
  void check_dim(std::size_t n) const {
    if (n != dim_) {
      throw std::invalid_argument("lattice dimension mismatch: expected " + std::to_string(dim_) +
                                  ", got " + std::to_string(n));
    }
  }

  std::size_t first_nonzero(const IntVector& v, std::size_t from) const {
    for (std::size_t i = from; i < dim_; ++i) {
      if (sgn(v[i]) != 0) return i;
    }
    return dim_;
  }

  // y += q * x over columns >= from (x is zero before its pivot).
  static void axpy(IntVector& y, const Int& q, const IntVector& x, std::size_t from) {
    for (std::size_t i = from; i < y.size(); ++i) {
      if (sgn(x[i]) != 0) mpz_addmul(y[i].get_mpz_t(), q.get_mpz_t(), x[i].get_mpz_t());
    }
  }

  std::size_t dim_;
  TagOps ops_{};
  std::vector<Row> rows_;
};

using PlainEchelon = Echelon<NoTag, NoTagOps>;

}  // namespace parasurf
