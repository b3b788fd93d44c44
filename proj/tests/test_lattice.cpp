#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdlib>

#include "parasurf/echelon.hpp"
#include "parasurf/lattice.hpp"
#include "support.hpp"

using namespace parasurf;
using testsupport::uniform;

namespace {

IntMatrix M(std::vector<std::vector<long>> rows, std::size_t cols = 0) {
  if (cols == 0 && !rows.empty()) cols = rows[0].size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntVector V(std::vector<long> v) { return IntVector(v.begin(), v.end()); }

IntMatrix random_matrix(std::size_t rows, std::size_t cols, int bound) {
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = uniform(-bound, bound);
  }
  return m;
}

// Laplace expansion along the first row.
Int cofactor_det(const IntMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  if (n == 1) return a(0, 0);
  Int total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (c != j) minor(r - 1, cc++) = a(r, c);
      }
    }
    const Int term = a(0, j) * cofactor_det(minor);
    total += (j % 2 == 0) ? term : Int(-term);
  }
  return total;
}

// Unimodular row mixing: the row lattice is unchanged.
IntMatrix scramble(const IntMatrix& a) {
  IntMatrix m = a;
  for (int step = 0; step < 12; ++step) {
    const auto i = static_cast<std::size_t>(uniform(0, static_cast<int>(m.rows()) - 1));
    const auto j = static_cast<std::size_t>(uniform(0, static_cast<int>(m.rows()) - 1));
    if (i == j) {
      for (Int& x : m.row(i)) x = -x;
      continue;
    }
    const Int q = uniform(-3, 3);
    for (std::size_t c = 0; c < m.cols(); ++c) m(i, c) += q * m(j, c);
    if (uniform(0, 1)) m.swap_rows(i, j);
  }
  return m;
}

// Rows of b over the rationals: x with x * b = v, by Cramer's rule on the
// square matrix b; membership means every x_i is an integer.
bool member_by_cramer(const IntMatrix& b, const IntVector& v, const Int& det) {
  const std::size_t n = b.rows();
  for (std::size_t i = 0; i < n; ++i) {
    IntMatrix bi = b;
    for (std::size_t c = 0; c < n; ++c) bi(i, c) = v[c];
    const Int num = cofactor_det(bi);
    if (!mpz_divisible_p(num.get_mpz_t(), det.get_mpz_t())) return false;
  }
  return true;
}

// Invariant factors of Z^n / rowspan(b), b square of full rank, by counting
// points of the box [0, D)^n, D = |det|: for every m | D the number of classes
// of order dividing m is prod gcd(m, d_i).
std::vector<Int> brute_invariant_factors(const IntMatrix& b) {
  const std::size_t n = b.rows();
  const Int det = cofactor_det(b);
  const long D = std::labs(det.get_si());
  std::vector<long> divisors;
  for (long m = 1; m <= D; ++m) {
    if (D % m == 0) divisors.push_back(m);
  }
  std::vector<long> torsion_count(divisors.size(), 0);
  long in_lattice = 0;
  std::vector<long> p(n, 0);
  for (;;) {
    IntVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = p[i];
    if (member_by_cramer(b, v, det)) ++in_lattice;
    for (std::size_t d = 0; d < divisors.size(); ++d) {
      IntVector mv(n);
      for (std::size_t i = 0; i < n; ++i) mv[i] = divisors[d] * p[i];
      if (member_by_cramer(b, mv, det)) ++torsion_count[d];
    }
    std::size_t i = 0;
    while (i < n && ++p[i] == D) p[i++] = 0;
    if (i == n) break;
  }
  // Class counts; recover the factors greedily from the counts of m-torsion.
  std::vector<long> counts;
  for (long c : torsion_count) counts.push_back(c / in_lattice);
  // Number of factors divisible by a prime power q is log_p(T(q)/T(q/p)).
  std::vector<long> factors(n, 1);
  for (std::size_t d = 0; d < divisors.size(); ++d) {
    const long q = divisors[d];
    long p0 = 0;
    for (long pp = 2; pp <= q; ++pp) {
      if (q % pp == 0) {
        p0 = pp;
        break;
      }
    }
    if (p0 == 0) continue;
    long r = q;
    while (r % p0 == 0) r /= p0;
    if (r != 1) continue;  // not a prime power
    const long prev = q / p0;
    const auto prev_idx = static_cast<std::size_t>(std::find(divisors.begin(), divisors.end(), prev) - divisors.begin());
    long ratio = counts[d] / counts[prev_idx];
    long how_many = 0;
    while (ratio > 1) {
      ratio /= p0;
      ++how_many;
    }
    for (long t = 0; t < how_many; ++t) factors[n - 1 - static_cast<std::size_t>(t)] *= p0;
  }
  std::vector<Int> out;
  for (long f : factors) out.push_back(f);
  return out;
}

void check_smith(const IntMatrix& a) {
  const SmithForm f = snf(a);
  CHECK(f.U * a * f.V == f.D);
  CHECK(is_unimodular(f.U));
  CHECK(is_unimodular(f.V));
  const auto d = f.invariant_factors();
  REQUIRE(d.size() == f.rank);
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(sgn(d[i]) > 0);
    if (i + 1 < d.size()) CHECK(mpz_divisible_p(d[i + 1].get_mpz_t(), d[i].get_mpz_t()));
  }
  for (std::size_t r = 0; r < f.D.rows(); ++r) {
    for (std::size_t c = 0; c < f.D.cols(); ++c) {
      if (r != c || r >= f.rank) CHECK(sgn(f.D(r, c)) == 0);
    }
  }
}

bool is_hermite(const HermiteBasis& h) {
  for (std::size_t i = 0; i < h.rows.size(); ++i) {
    const std::size_t p = h.pivots[i];
    if (i > 0 && p <= h.pivots[i - 1]) return false;
    if (sgn(h.rows[i][p]) <= 0) return false;
    for (std::size_t c = 0; c < p; ++c) {
      if (sgn(h.rows[i][c]) != 0) return false;
    }
    for (std::size_t r = 0; r < i; ++r) {
      if (sgn(h.rows[r][p]) < 0 || h.rows[r][p] >= h.rows[i][p]) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("hnf examples") {
  const HermiteBasis h = hnf(M({{2, 0}, {0, 2}, {1, 1}}));
  REQUIRE(h.rank() == 2);
  CHECK(h.rows[0] == V({1, 1}));
  CHECK(h.rows[1] == V({0, 2}));
  const HermiteBasis id = hnf(IntMatrix::identity(3));
  CHECK(id.matrix() == IntMatrix::identity(3));
  CHECK(hnf(IntMatrix(3, 4)).rank() == 0);
  CHECK(hnf(IntMatrix(0, 4)).rank() == 0);
}

TEST_CASE("hnf span matches small vector enumeration") {
  // Lattice {(2,0),(0,2),(1,1)}: the vectors with |x|,|y| <= 4 are exactly those with x+y even.
  const HermiteBasis h = hnf(M({{2, 0}, {0, 2}, {1, 1}}));
  for (long x = -4; x <= 4; ++x) {
    for (long y = -4; y <= 4; ++y) {
      CHECK(lattice_reduce(h, V({x, y})).member() == ((x + y) % 2 == 0));
    }
  }
}

TEST_CASE("hnf is canonical under unimodular row operations") {
  for (int i = 0; i < 200; ++i) {
    const auto rows = static_cast<std::size_t>(uniform(1, 5));
    const auto cols = static_cast<std::size_t>(uniform(1, 5));
    const IntMatrix a = random_matrix(rows, cols, 6);
    const HermiteBasis h = hnf(a);
    CHECK(is_hermite(h));
    CHECK(hnf(scramble(a)) == h);
    // Every input row is in the lattice and every basis row is a combination of inputs.
    for (std::size_t r = 0; r < rows; ++r) CHECK(lattice_reduce(h, a.row(r)).member());
    const HermiteBasis back = hnf(h.rows.empty() ? IntMatrix(0, cols) : h.matrix());
    CHECK(back == h);
  }
}

TEST_CASE("snf examples") {
  const SmithForm d = snf(M({{2, 0}, {0, 3}}));
  CHECK(d.invariant_factors() == std::vector<Int>{1, 6});
  CHECK(snf(IntMatrix::identity(4)).invariant_factors() == std::vector<Int>(4, 1));
  check_smith(M({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}}));
  CHECK(snf(M({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}})).invariant_factors() == std::vector<Int>{2, 6, 12});
  check_smith(IntMatrix(2, 3));
}

TEST_CASE("snf verification identity and determinant agreement") {
  int full_rank = 0;
  for (int i = 0; i < 150; ++i) {
    const auto rows = static_cast<std::size_t>(uniform(1, 5));
    const auto cols = static_cast<std::size_t>(uniform(1, 5));
    check_smith(random_matrix(rows, cols, 9));
    const IntMatrix sq = random_matrix(4, 4, 9);
    const Int det = cofactor_det(sq);
    const SmithForm f = snf(sq);
    check_smith(sq);
    if (sgn(det) == 0) {
      CHECK(f.rank < 4);
      continue;
    }
    ++full_rank;
    Int product = 1;
    for (const Int& x : f.invariant_factors()) product *= x;
    CHECK(product == abs(det));
  }
  CHECK(full_rank > 50);
}

TEST_CASE("lattice_reduce and lattice_insert") {
  const HermiteBasis b = hnf(M({{1, 0}, {0, 2}}));
  const auto r = lattice_reduce(b, V({3, 4}));
  CHECK(r.member());
  CHECK(r.coefficients == V({3, 2}));
  CHECK(lattice_reduce(b, V({0, 1})).remainder == V({0, 1}));
  HermiteBasis empty;
  empty.dim = 3;
  CHECK(lattice_reduce(empty, V({1, -2, 5})).remainder == V({1, -2, 5}));
  CHECK_THROWS_AS(lattice_reduce(b, V({1, 2, 3})), std::invalid_argument);

  CHECK_FALSE(lattice_insert(b, V({5, 6})).changed);
  const auto ins = lattice_insert(hnf(M({{0, 2}})), V({0, 1}));
  CHECK(ins.changed);
  REQUIRE(ins.basis.rank() == 1);
  CHECK(ins.basis.rows[0] == V({0, 1}));
}

TEST_CASE("reduce remainder vanishes exactly when insertion changes nothing") {
  for (int i = 0; i < 200; ++i) {
    const auto dim = static_cast<std::size_t>(uniform(1, 4));
    HermiteBasis b = hnf(random_matrix(static_cast<std::size_t>(uniform(0, 3)), dim, 4));
    std::vector<IntVector> inserted;
    for (int j = 0; j < 4; ++j) {
      IntVector v(dim);
      for (Int& x : v) x = uniform(-5, 5);
      const auto red = lattice_reduce(b, v);
      // v - coefficients * B = remainder
      IntVector recon = red.remainder;
      for (std::size_t r = 0; r < b.rank(); ++r) {
        for (std::size_t c = 0; c < dim; ++c) recon[c] += red.coefficients[r] * b.rows[r][c];
      }
      CHECK(recon == v);
      const auto ins = lattice_insert(b, v);
      CHECK(ins.changed == !red.member());
      CHECK(is_hermite(ins.basis));
      b = ins.basis;
      inserted.push_back(v);
    }
    for (const IntVector& v : inserted) CHECK_FALSE(lattice_insert(b, v).changed);
  }
}

TEST_CASE("quotient_invariants examples") {
  const HermiteBasis z2 = hnf(IntMatrix::identity(2));
  const auto q = quotient_invariants(z2, hnf(M({{2, 0}})));
  CHECK(q.free_rank == 1);
  CHECK(q.torsion() == std::vector<Int>{2});
  const auto same = quotient_invariants(z2, z2);
  CHECK(same.free_rank == 0);
  CHECK(same.torsion().empty());
  const auto q3 = quotient_invariants(hnf(IntMatrix::identity(3)), hnf(M({{1, 0, 0}, {0, 2, 0}})));
  CHECK(q3.free_rank == 1);
  CHECK(q3.invariant_factors == std::vector<Int>{1, 2});
  CHECK_THROWS_AS(quotient_invariants(hnf(M({{2, 0}, {0, 2}})), hnf(M({{1, 0}}))), std::invalid_argument);
}

TEST_CASE("quotient_invariants agrees with coset counting") {
  int tried = 0;
  while (tried < 40) {
    const auto n = static_cast<std::size_t>(uniform(1, 3));
    const IntMatrix b = random_matrix(n, n, 4);
    const Int det = abs(cofactor_det(b));
    if (sgn(det) == 0) continue;
    long box = 1;
    for (std::size_t i = 0; i < n; ++i) box *= det.get_si();
    if (box > 30000) continue;
    ++tried;
    const auto q = quotient_invariants(hnf(IntMatrix::identity(n)), hnf(b));
    CHECK(q.free_rank == 0);
    CHECK(q.invariant_factors == brute_invariant_factors(b));
  }
}

TEST_CASE("kernel_basis") {
  CHECK(kernel_basis(M({{2}})).rank() == 0);
  const HermiteBasis k = kernel_basis(M({{1}, {1}}));
  REQUIRE(k.rank() == 1);
  CHECK((k.rows[0] == V({1, -1}) || k.rows[0] == V({-1, 1})));
  for (int i = 0; i < 150; ++i) {
    const auto rows = static_cast<std::size_t>(uniform(1, 6));
    const auto cols = static_cast<std::size_t>(uniform(1, 4));
    IntMatrix a = random_matrix(rows, cols, 3);
    if (uniform(0, 2) == 0 && rows > 1) {
      for (std::size_t c = 0; c < cols; ++c) a(rows - 1, c) = 2 * a(0, c);
    }
    const HermiteBasis ker = kernel_basis(a);
    for (const IntVector& x : ker.rows) {
      IntVector prod(cols);
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) prod[c] += x[r] * a(r, c);
      }
      CHECK(is_zero(prod));
    }
    CHECK(ker.rank() + hnf(a).rank() == rows);
    // Saturation: a kernel vector divisible by an integer has its quotient in the kernel lattice.
    if (ker.rank() > 0) {
      IntVector doubled = ker.rows[0];
      for (Int& x : doubled) x *= 2;
      CHECK(lattice_reduce(ker, doubled).member());
    }
  }
}

TEST_CASE("solve_in_image") {
  const IntMatrix g = M({{2, 0}, {0, 3}});
  const auto s = solve_in_image(g, V({4, 3}));
  REQUIRE(s);
  CHECK(*s == V({2, 1}));
  CHECK_FALSE(solve_in_image(g, V({1, 0})));
  const auto z = solve_in_image(g, V({0, 0}));
  REQUIRE(z);
  CHECK(is_zero(*z));
  CHECK_THROWS_AS(solve_in_image(g, V({1, 2, 3})), std::invalid_argument);
  CHECK_FALSE(solve_in_image(IntMatrix(0, 2), V({1, 0})));

  for (int i = 0; i < 200; ++i) {
    const auto rows = static_cast<std::size_t>(uniform(1, 5));
    const auto cols = static_cast<std::size_t>(uniform(1, 4));
    const IntMatrix a = random_matrix(rows, cols, 5);
    IntVector x(rows);
    for (Int& e : x) e = uniform(-4, 4);
    IntVector target(cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) target[c] += x[r] * a(r, c);
    }
    const auto sol = solve_in_image(a, target);
    REQUIRE(sol);
    IntVector check(cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) check[c] += (*sol)[r] * a(r, c);
    }
    CHECK(check == target);
  }
}

TEST_CASE("tagged echelon keeps tags in step with rows") {
  // Tag = the combination of inserted vectors (as integer coefficients) that makes the row.
  struct Combo {
    IntVector c;
  };
  struct ComboOps {
    Combo combine(const Combo& a, const Int& x, const Combo& b, const Int& y) const {
      Combo out{IntVector(a.c.size())};
      for (std::size_t i = 0; i < a.c.size(); ++i) out.c[i] = x * a.c[i] + y * b.c[i];
      return out;
    }
    Combo scale(const Combo& a, const Int& x) const {
      Combo out = a;
      for (Int& v : out.c) v *= x;
      return out;
    }
  };
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = 4;
    const std::size_t count = 6;
    const IntMatrix vs = random_matrix(count, dim, 5);
    Echelon<Combo, ComboOps> e(dim);
    for (std::size_t i = 0; i < count; ++i) {
      IntVector unit(count);
      unit[i] = 1;
      auto ins = e.insert(vs.row_vector(i), Combo{unit});
      if (ins.absorbed) {
        IntVector zero(dim);
        for (std::size_t j = 0; j < count; ++j) {
          for (std::size_t c = 0; c < dim; ++c) zero[c] += ins.residual.c[j] * vs(j, c);
        }
        CHECK(is_zero(zero));
      }
    }
    for (const auto& row : e.rows()) {
      IntVector made(dim);
      for (std::size_t j = 0; j < count; ++j) {
        for (std::size_t c = 0; c < dim; ++c) made[c] += row.tag.c[j] * vs(j, c);
      }
      CHECK(made == row.v);
    }
    CHECK(e.hermite() == hnf(vs));
  }
}
