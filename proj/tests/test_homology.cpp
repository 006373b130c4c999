#include <doctest.h>

#include <random>

#include "lkb/action.hpp"
#include "lkb/homology.hpp"
#include "lkb/verify.hpp"

using namespace lkb;

namespace {

const Poly X = Poly::x(), Y = Poly::y();
using L = CellLabel;

TwistedChain d(const TwistedChain& u, int n) { return sal_fn_cached(n).differential(u); }

}  // namespace

TEST_CASE("V-chains") {
  const Poly xy1 = X * Y + 1;
  CHECK(d(v_chain(1, VKind::b, 2), 2) == chain(1, {{L::b(1), (Y - 1) * xy1}, {L::c(2), -(X - 1) * xy1}}));
  CHECK(d(v_chain(1, VKind::zero, 2), 2) == chain(1, {{L::c(1), xy1}, {L::c(2), -xy1}}));
  CHECK(d(v_chain(2, VKind::a, 3), 3) == chain(1, {{L::a(2), -(Y - 1) * xy1}, {L::c(2), (X - 1) * xy1}}));
  for (auto kind : {VKind::a, VKind::b, VKind::zero}) {
    const TwistedChain v = v_chain(2, kind, 3);
    for (const auto& [cell, c] : v.coefficients()) CHECK(cell.kind == CellKind::B2);
  }
}

TEST_CASE("E-cycles") {
  CHECK(d(e_cycle(1, 2, 2), 2).is_zero());
  CHECK(e_cycle(1, 2, 4).coefficient(L::A(1, 2)) == (Y - 1) * (X * Y + 1));
  CHECK(e_cycle(1, 2, 3).coefficient(L::A(1, 3)).is_zero());
  for (int n = 2; n <= 6; ++n)
    for (const auto& [i, j] : index_pairs(n)) REQUIRE(d(e_cycle(i, j, n), n).is_zero());
  CHECK_THROWS_AS(e_cycle(2, 2, 3), std::out_of_range);
}

TEST_CASE("kernel rank") {
  for (int n = 2; n <= 5; ++n) {
    const KernelReport r = kernel_rank(n);
    CHECK(r.dimension == std::size_t(n * (n - 1) / 2));
    CHECK(r.e_independent);
    CHECK(r.e_spans);
  }
}

TEST_CASE("eta o d is triangular") {
  const EtaReport r = verify_eta_triangular(2);
  CHECK(r.matrix.rows() == 6);
  CHECK(r.matrix.cols() == 6);
  CHECK(r.triangular);
  CHECK(r.diagonal_nonzero);
  for (const auto& p : r.diagonal) CHECK(p.eval(2, 3) != 0);
  CHECK(eta(L::c(3), 2).is_zero());
  for (int n = 3; n <= 6; ++n) CHECK(verify_eta_triangular(n).triangular);
}

TEST_CASE("E-coordinates") {
  const auto one = e_coordinates(e_cycle(1, 2, 3), 3);
  CHECK(one.size() == 1);
  CHECK(one.at({1, 2}) == RationalFunction(1));

  const auto x13 = e_coordinates(integral_x(1, 3, 3), 3);
  CHECK(x13.at({1, 2}) == RationalFunction(1, Y - 1));
  CHECK(x13.at({2, 3}) == RationalFunction(1, Y - 1));
  CHECK(x13.at({1, 3}) == RationalFunction(-1, Y - 1));

  CHECK(e_coordinates(TwistedChain(2), 3).empty());
  CHECK_THROWS_AS(e_coordinates(chain(2, {{L::A(1, 2), 1}}), 2), std::invalid_argument);
}

TEST_CASE("E-coordinates invert E-combinations") {
  std::mt19937_64 rng(41);
  for (int n = 2; n <= 4; ++n)
    for (int trial = 0; trial < 10; ++trial) {
      PairMap<Poly> lambda;
      for (const auto& p : index_pairs(n)) lambda[p] = random_poly(rng, 2, 9, 1, 3);
      const auto coords = e_coordinates(e_combination(lambda, n), n);
      for (const auto& [p, c] : lambda) {
        const auto it = coords.find(p);
        REQUIRE((it == coords.end() ? RationalFunction() : it->second) == RationalFunction(c));
      }
    }
}

TEST_CASE("membership in V") {
  const auto m = v_membership((X * Y + 1) * e_cycle(1, 2, 4), 4);
  REQUIRE(m);
  CHECK(m->size() == 1);
  CHECK(m->at({1, 2}) == X * Y + 1);
  for (int n = 3; n <= 6; ++n) CHECK(!v_membership(integral_x(1, 3, n), n));

  const auto fork = v_membership(fork_chain(1, 2, 3, ForkPart::Class), 3);
  REQUIRE(fork);
  CHECK(fork->at({1, 2}) == X);
}

TEST_CASE("integral basis") {
  CHECK(integral_x(1, 2, 2) == e_cycle(1, 2, 2));
  CHECK(integral_x(1, 4, 4) ==
        chain(2, {{L::A(1, 4), 1}, {L::A(1, 3), -1}, {L::A(2, 4), -1}, {L::A(2, 3), 1}}));
  CHECK(d(integral_x(1, 3, 3), 3).is_zero());
  for (int n = 2; n <= 6; ++n)
    for (const auto& [i, j] : index_pairs(n)) REQUIRE(d(integral_x(i, j, n), n).is_zero());
}

TEST_CASE("reduction to the integral basis") {
  CHECK(reduce_to_integral_basis(e_cycle(1, 2, 3), 3) == PairMap<Poly>{{{1, 2}, 1}});
  CHECK(reduce_to_integral_basis(integral_x(2, 4, 4), 4) == PairMap<Poly>{{{2, 4}, 1}});
  const TwistedChain u = (X - 1) * integral_x(1, 3, 3) + X * Y * integral_x(1, 2, 3);
  CHECK(reduce_to_integral_basis(u, 3) == PairMap<Poly>{{{1, 3}, X - 1}, {{1, 2}, X * Y}});
  CHECK_THROWS_AS(reduce_to_integral_basis(chain(2, {{L::A(1, 2), 1}}), 2), std::invalid_argument);
}

TEST_CASE("random round trips through the integral basis") {
  std::mt19937_64 rng(43);
  for (int n = 2; n <= 5; ++n) CHECK(check_integral_basis(n, rng, 100).passed);
}

TEST_CASE("integral H_1") {
  for (int n = 2; n <= 6; ++n) {
    const H1Report h = h1_fn(n);
    CHECK(h.rank == std::size_t(n + 1));
    CHECK(h.torsion.empty());
    CHECK(h.c_relations);
    CHECK(h.b_relations);
  }
}
