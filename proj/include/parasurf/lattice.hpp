// Exact integer matrices and lattices: Hermite/Smith normal forms, membership,
// kernels and linear Diophantine solving. All arithmetic is arbitrary precision.
#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace parasurf {

using Int = mpz_class;
using IntVector = std::vector<Int>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  /// Builds from row vectors; all rows must share a length (`cols` is used when `rows` is empty).
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols = 0);
  static IntMatrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Int& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  [[nodiscard]] std::span<Int> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  [[nodiscard]] std::span<const Int> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  [[nodiscard]] IntVector row_vector(std::size_t r) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

/// Row-style Hermite normal form: pivots strictly increasing and positive,
/// entries above each pivot reduced into [0, pivot). Canonical for the lattice.
struct HermiteBasis {
  std::size_t dim = 0;
  std::vector<IntVector> rows;
  std::vector<std::size_t> pivots;

  [[nodiscard]] std::size_t rank() const { return rows.size(); }
  [[nodiscard]] IntMatrix matrix() const { return IntMatrix::from_rows(rows, dim); }
  friend bool operator==(const HermiteBasis&, const HermiteBasis&) = default;
};

/// U * A * V = D with U, V unimodular and D = diag(d_1, ..., d_rank, 0, ...),
/// d_1 | d_2 | ... | d_rank, all positive.
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  std::size_t rank = 0;

  [[nodiscard]] std::vector<Int> invariant_factors() const;
};

HermiteBasis hnf(const IntMatrix& a);
SmithForm snf(const IntMatrix& a);

struct LatticeReduction {
  IntVector remainder;
  IntVector coefficients;  // one per basis row
  [[nodiscard]] bool member() const;
};

/// v - coefficients * B = remainder, with the remainder reduced against every pivot.
LatticeReduction lattice_reduce(const HermiteBasis& b, std::span<const Int> v);

struct LatticeInsertion {
  HermiteBasis basis;
  bool changed = false;
};

LatticeInsertion lattice_insert(const HermiteBasis& b, std::span<const Int> v);

struct QuotientInvariants {
  std::size_t free_rank = 0;
  std::vector<Int> invariant_factors;  // SNF diagonal of sub in ambient coordinates

  /// The factors greater than one.
  [[nodiscard]] std::vector<Int> torsion() const;
};

/// Structure of lattice(ambient) / lattice(sub). Throws std::invalid_argument if
/// sub is not contained in ambient.
QuotientInvariants quotient_invariants(const HermiteBasis& ambient, const HermiteBasis& sub);

/// HNF basis of the left kernel {x : x * A = 0}.
HermiteBasis kernel_basis(const IntMatrix& a);

/// Some x with x * generators = target, or nullopt when target is outside the
/// row lattice of `generators`.
std::optional<IntVector> solve_in_image(const IntMatrix& generators, std::span<const Int> target);

/// Determinant +-1 for a square matrix.
bool is_unimodular(const IntMatrix& a);

// Small helpers shared by the lattice users.
bool is_zero(std::span<const Int> v);
Int floor_div(const Int& a, const Int& b);
std::string to_string(std::span<const Int> v);

}  // namespace parasurf
