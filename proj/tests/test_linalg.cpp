#include <doctest.h>

#include <random>

#include "lkb/complex.hpp"
#include "lkb/linalg.hpp"
#include "lkb/verify.hpp"

using namespace lkb;

namespace {

Poly P(const char* s) { return parse_poly(s); }
const Poly X = Poly::x(), Y = Poly::y();

RingMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int zero_percent = 0) {
  std::uniform_int_distribution<int> pct(0, 99);
  RingMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (pct(rng) >= zero_percent) m(i, j) = random_poly(rng, 2, 5, 1, 3);
  return m;
}

bool is_zero_vector(const FieldVector& v) {
  for (const auto& e : v)
    if (!e.is_zero()) return false;
  return true;
}

}  // namespace

TEST_CASE("mat_mul") {
  std::mt19937_64 rng(1);
  const RingMatrix a = random_matrix(rng, 4, 5);
  CHECK(mat_mul(a, RingMatrix::identity(5)) == a);

  RingMatrix x(1, 1, X), y(1, 1, Y);
  CHECK(mat_mul(x, y)(0, 0) == X * Y);

  RingMatrix perm(3, 3), inv(3, 3);
  perm(0, 1) = perm(1, 2) = perm(2, 0) = 1;
  inv(1, 0) = inv(2, 1) = inv(0, 2) = 1;
  CHECK(mat_mul(perm, inv) == RingMatrix::identity(3));
  CHECK_THROWS_AS(mat_mul(a, a), DimensionMismatch);
}

TEST_CASE("serial and parallel kernels agree bit for bit") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const RingMatrix a = random_matrix(rng, 9, 7, 30), b = random_matrix(rng, 7, 8, 30);
    REQUIRE(mat_mul(a, b) == mat_mul_serial(a, b));
    const RingMatrix m = random_matrix(rng, 6, 8, 40);
    const RowEchelon p = fraction_free_rref(m), s = fraction_free_rref_serial(m);
    REQUIRE(p.form == s.form);
    REQUIRE(p.pivot_cols == s.pivot_cols);
    REQUIRE(p.pivot == s.pivot);
    REQUIRE(p.swap_sign == s.swap_sign);
  }
  const RingMatrix d2 = sal_fn(4).d2;
  CHECK(fraction_free_rref(d2).form == fraction_free_rref_serial(d2).form);
}

TEST_CASE("field_kernel") {
  const auto k0 = field_kernel(FieldMatrix(2, 3));
  REQUIRE(k0.size() == 3);
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < 3; ++i) CHECK(k0[j][i] == RationalFunction(i == j ? 1 : 0));

  CHECK(field_kernel(FieldMatrix::identity(4)).empty());

  FieldMatrix a(1, 2);
  a(0, 0) = X - 1;
  a(0, 1) = 1 - X;
  const auto k = field_kernel(a);
  REQUIRE(k.size() == 1);
  CHECK(k[0][0] == k[0][1]);
  CHECK(!k[0][0].is_zero());
}

TEST_CASE("field_rank") {
  CHECK(field_rank(FieldMatrix::identity(5)) == 5);

  const Poly u[] = {X, P("y - 1"), P("x*y + 2")}, v[] = {P("x^2"), 3, P("y^-1")};
  FieldMatrix outer(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) outer(i, j) = u[i] * v[j];
  CHECK(field_rank(outer) == 1);

  const TwistedComplex tc = sal_fn(2);
  FieldMatrix b(tc.cells1.size(), 3);
  for (int r = 1; r <= 3; ++r)
    for (std::size_t i = 0; i < tc.cells1.size(); ++i) b(i, r - 1) = tc.d2(i, tc.index2(CellLabel::B(1, r)));
  CHECK(field_rank(b) == 3);
}

TEST_CASE("int_smith") {
  IntMatrix d(2, 2);
  d(0, 0) = 2;
  d(1, 1) = 3;
  const SmithForm s = int_smith(d);
  CHECK(s.invariant_factors == std::vector<Integer>{1, 6});
  CHECK(s.rank == 2);

  const SmithForm z = int_smith(IntMatrix(3, 4));
  CHECK(z.rank == 0);
  CHECK(z.invariant_factors.empty());

  const SmithForm id = int_smith(IntMatrix::identity(4));
  CHECK(id.invariant_factors == std::vector<Integer>(4, 1));
}

TEST_CASE("int_smith on random matrices") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> e(-6, 6);
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix m(5, 6);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 6; ++j) m(i, j) = e(rng);
    const SmithForm s = int_smith(m);
    REQUIRE(s.rank == s.invariant_factors.size());
    for (std::size_t i = 0; i + 1 < s.invariant_factors.size(); ++i)
      REQUIRE(s.invariant_factors[i + 1] % s.invariant_factors[i] == 0);
    FieldMatrix f(5, 6);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 6; ++j) f(i, j) = RationalFunction(Poly(m(i, j)));
    REQUIRE(field_rank(f) == s.rank);
  }
}

TEST_CASE("column lattice membership") {
  IntMatrix a(2, 1);
  a(0, 0) = 2;
  a(1, 0) = 4;
  CHECK(int_in_column_lattice(a, {2, 4}));
  CHECK(int_in_column_lattice(a, {-6, -12}));
  CHECK(!int_in_column_lattice(a, {1, 2}));
  CHECK(!int_in_column_lattice(a, {2, 5}));
}

TEST_CASE("field_solve") {
  const FieldVector b = {RationalFunction(X, Y - 1), 3, P("x*y^-2")};
  CHECK(field_solve(FieldMatrix::identity(3), b) == b);

  FieldMatrix a(2, 2);
  a(0, 0) = 1;
  CHECK(!field_solve(a, {0, 1}));

  FieldMatrix c(1, 1);
  c(0, 0) = X - 1;
  const auto x = field_solve(c, {P("x^2 - 2*x + 1")});
  REQUIRE(x);
  CHECK((*x)[0] == RationalFunction(X - 1));
  CHECK(to_laurent((*x)[0]) == X - 1);

  CHECK_THROWS_AS(field_solve(c, {1, 2}), DimensionMismatch);
}

TEST_CASE("field_solve_many agrees with single solves") {
  std::mt19937_64 rng(4);
  const FieldMatrix a = to_field(random_matrix(rng, 5, 3, 20));
  std::vector<FieldVector> bs;
  for (int k = 0; k < 4; ++k) {
    FieldVector v(3);
    for (auto& e : v) e = random_poly(rng, 2, 5, 1, 3);
    bs.push_back(mat_vec(a, v));
    bs.push_back(to_field(random_matrix(rng, 5, 1)).column(0));
  }
  const auto many = field_solve_many(a, bs);
  for (std::size_t k = 0; k < bs.size(); ++k) {
    const auto one = field_solve(a, bs[k]);
    REQUIRE(bool(one) == bool(many[k]));
    if (one) REQUIRE(mat_vec(a, *many[k]) == bs[k]);
  }
  for (std::size_t k = 0; k < bs.size(); k += 2) CHECK(many[k]);
}

TEST_CASE("rank plus nullity on random matrices") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> dim(1, 12);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t r = dim(rng), c = dim(rng);
    // low-rank products make the kernel nontrivial often
    const std::size_t inner = std::min<std::size_t>(dim(rng), 4);
    const RingMatrix m = mat_mul(random_matrix(rng, r, inner, 20), random_matrix(rng, inner, c, 20));
    const FieldMatrix f = to_field(m);
    const auto kernel = field_kernel(f);
    REQUIRE(field_rank(f) + kernel.size() == c);
    for (const auto& v : kernel) REQUIRE(is_zero_vector(mat_vec(f, v)));
  }
}

TEST_CASE("determinism") {
  std::mt19937_64 rng(6);
  const RingMatrix m = random_matrix(rng, 6, 6, 30);
  CHECK(to_json(fraction_free_rref(m).form).dump() == to_json(fraction_free_rref(m).form).dump());
  const auto k1 = field_kernel(to_field(m)), k2 = field_kernel(to_field(m));
  REQUIRE(k1.size() == k2.size());
  for (std::size_t i = 0; i < k1.size(); ++i)
    for (std::size_t j = 0; j < k1[i].size(); ++j) {
      CHECK(k1[i][j].num() == k2[i][j].num());
      CHECK(k1[i][j].den() == k2[i][j].den());
    }
}

TEST_CASE("inverses") {
  RingMatrix u(2, 2);
  u(0, 0) = X;
  u(0, 1) = 1;
  u(1, 1) = Y;
  const auto inv = ring_inverse(u);
  REQUIRE(inv);
  CHECK(mat_mul(u, *inv) == RingMatrix::identity(2));

  RingMatrix v(1, 1, X + 1);
  CHECK(!ring_inverse(v));
  CHECK(field_inverse(to_field(v)));
  CHECK(!field_inverse(FieldMatrix(2, 2)));
}

TEST_CASE("matrix json round trip") {
  std::mt19937_64 rng(8);
  const RingMatrix m = random_matrix(rng, 3, 4, 20);
  CHECK(ring_matrix_from_json(to_json(m)) == m);
}
