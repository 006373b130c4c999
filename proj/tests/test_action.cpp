#include <doctest.h>

#include <random>

#include "lkb/action.hpp"
#include "lkb/verify.hpp"

using namespace lkb;

namespace {

Poly P(const char* s) { return parse_poly(s); }
const Poly X = Poly::x(), Y = Poly::y();
using L = CellLabel;

// Position of e_ij in the lexicographic pair basis.
std::size_t idx(int i, int j, int n) {
  std::size_t k = 0;
  for (const auto& p : index_pairs(n)) {
    if (p == IndexPair{i, j}) return k;
    ++k;
  }
  FAIL("pair out of range");
  return 0;
}

// Coordinates of a 2-cycle in V, as a column in the pair basis.
std::vector<Poly> v_column(const TwistedChain& u, int n) {
  const auto m = v_membership(u, n);
  REQUIRE(m);
  std::vector<Poly> col(index_pairs(n).size());
  for (const auto& [p, c] : *m) col[idx(p.first, p.second, n)] = c;
  return col;
}

EdgeWord word(std::initializer_list<std::pair<CellLabel, int>> letters) {
  EdgeWord w;
  for (const auto& [e, s] : letters) w.push_back({e, s});
  return w;
}

}  // namespace

TEST_CASE("LKB generators") {
  const RingMatrix r = lkb_generator(1, 2);
  REQUIRE(r.rows() == 1);
  CHECK(r(0, 0) == P("-x^2*y"));

  const RingMatrix s = lkb_generator(1, 3);
  const std::size_t c = idx(1, 3, 3);
  CHECK(s(idx(2, 3, 3), c) == 1);
  CHECK(s(idx(1, 2, 3), c) == -X * Y * (X - 1));
  CHECK(s(idx(1, 3, 3), c) == 0);

  const RingMatrix t = lkb_generator(2, 4);
  const std::size_t c14 = idx(1, 4, 4);
  for (const auto& [i, j] : index_pairs(4)) {
    const Poly expect = IndexPair{i, j} == IndexPair{1, 4} ? Poly(1)
                        : IndexPair{i, j} == IndexPair{2, 3} ? -Y * (X - 1) * (X - 1)
                                                              : Poly();
    CHECK(t(idx(i, j, 4), c14) == expect);
  }
  CHECK_THROWS_AS(lkb_generator(3, 3), std::out_of_range);
}

TEST_CASE("braid words") {
  CHECK(lkb_word(BraidWord::parse(4, "")) == RingMatrix::identity(6));
  for (int n = 2; n <= 4; ++n) CHECK(lkb_word(BraidWord::parse(n, "1 -1")) == RingMatrix::identity(n * (n - 1) / 2));
  CHECK(lkb_word(BraidWord::parse(3, "1 2 1")) == lkb_word(BraidWord::parse(3, "2 1 2")));
  CHECK(lkb_word(BraidWord::parse(3, "1 2")) == mat_mul(lkb_generator(1, 3), lkb_generator(2, 3)));
  CHECK_THROWS_AS(BraidWord::parse(3, "1 x"), std::invalid_argument);
  CHECK_THROWS_AS(BraidWord::parse(3, "3"), std::invalid_argument);
  CHECK_THROWS_AS(BraidWord::parse(3, "0"), std::invalid_argument);
}

TEST_CASE("matrix-level relations and units") {
  for (int n = 2; n <= 6; ++n) CHECK(check_braid_relations(n, ActionLevel::Matrix).passed);
  const RingMatrix a = lkb_word(BraidWord::parse(5, "1 4")), b = lkb_word(BraidWord::parse(5, "4 1"));
  CHECK(a == b);
  for (int n = 2; n <= 4; ++n) CHECK(check_generator_units(n).passed);
  for (int n = 2; n <= 4; ++n)
    for (int k = 1; k < n; ++k) {
      const auto inv = ring_inverse(lkb_generator(k, n));
      REQUIRE(inv);
      CHECK(mat_mul(*inv, lkb_generator(k, n)) == RingMatrix::identity(n * (n - 1) / 2));
      const auto det = to_laurent(field_det(to_field(lkb_generator(k, n))));
      REQUIRE(det);
      CHECK(det->is_unit());
    }
}

TEST_CASE("edge words of S_k") {
  CHECK(s_edge_word(1, L::a(1), 3) == word({{L::a(1), 1}, {L::a(2), 1}, {L::a(1), -1}}));
  CHECK(s_edge_word(1, L::c(2), 3) ==
        word({{L::a(1), 1}, {L::b(2), 1}, {L::c(2), 1}, {L::b(2), -1}, {L::a(1), -1}}));
  CHECK(s_edge_word(1, L::c(1), 3) == word({{L::c(1), 1}}));
  const WeightMap& pi = sal_fn_cached(3).pi;
  CHECK(word_weight(s_edge_word(1, L::a(1), 3), pi) == X);
  for (int n = 2; n <= 5; ++n) {
    const TwistedComplex& tc = sal_fn_cached(n);
    for (int k = 1; k < n; ++k)
      for (const auto& e : tc.cells1) REQUIRE(word_weight(s_edge_word(k, e, n), tc.pi) == tc.pi.at(e));
  }
}

TEST_CASE("chain maps") {
  const ChainEndo s = chain_action(1, 2);
  const TwistedChain b11 = apply(s.c2, chain(2, {{L::B(1, 1), 1}}), 2);
  CHECK(b11 == chain(2, {{L::B(1, 1), 1}, {L::B(2, 1), X}, {L::B(2, 3), -X * X}}));

  const TwistedComplex& tc = sal_fn_cached(2);
  const std::size_t a1 = tc.index1(L::a(1));
  for (std::size_t r = 0; r < tc.cells1.size(); ++r) {
    const Poly expect = tc.cells1[r] == L::a(1) ? 1 - X : tc.cells1[r] == L::a(2) ? X : Poly();
    CHECK(s.c1(r, a1) == expect);
  }
  for (int n = 2; n <= 5; ++n) {
    const TwistedComplex& t = sal_fn_cached(n);
    for (int k = 1; k < n; ++k) {
      const ChainEndo e = chain_action(k, n);
      REQUIRE(mat_mul(t.d2, e.c2) == mat_mul(e.c1, t.d2));
    }
  }
}

TEST_CASE("action on homology") {
  CHECK(homology_action(1, 2)(0, 0) == P("-x^2*y"));

  const RingMatrix s2 = homology_action(2, 3);
  const std::size_t e12 = idx(1, 2, 3);
  CHECK(s2(idx(1, 3, 3), e12) == X);
  CHECK(s2(idx(1, 2, 3), e12) == 1 - X);
  CHECK(s2(idx(2, 3, 3), e12) == 0);

  const RingMatrix t = homology_action(2, 4);
  CHECK(t(idx(1, 4, 4), idx(1, 4, 4)) == 1);
  CHECK(t(idx(2, 3, 4), idx(1, 4, 4)) == -Y * (X - 1) * (X - 1));

  for (int n = 2; n <= 5; ++n)
    for (int k = 1; k < n; ++k) REQUIRE(homology_action(k, n) == lkb_generator(k, n));
}

TEST_CASE("V is invariant under random positive braid words") {
  std::mt19937_64 rng(51);
  for (int n = 2; n <= 4; ++n) {
    std::uniform_int_distribution<int> gen(1, n - 1);
    std::vector<ChainEndo> maps;
    for (int k = 1; k < n; ++k) maps.push_back(chain_action(k, n));
    for (int trial = 0; trial < 5; ++trial) {
      PairMap<Poly> lambda;
      for (const auto& p : index_pairs(n)) lambda[p] = random_poly(rng, 2, 5, 1, 2);
      TwistedChain u = e_combination(lambda, n);
      BraidWord w{n, {}};
      for (int len = 0; len < 4; ++len) {
        const int k = gen(rng);
        // sigma_w acts on the left, so the last letter applies first
        w.letters.insert(w.letters.begin(), k);
        u = apply(maps[k - 1].c2, u, n);
      }
      const std::vector<Poly> got = v_column(u, n);
      const RingMatrix m = lkb_word(w);
      for (std::size_t r = 0; r < got.size(); ++r) {
        Poly expect;
        for (const auto& [p, c] : lambda) expect += m(r, idx(p.first, p.second, n)) * c;
        REQUIRE(got[r] == expect);
      }
    }
  }
}

TEST_CASE("relations at every level") {
  for (int n = 2; n <= 5; ++n)
    for (auto level : {ActionLevel::Matrix, ActionLevel::Chain, ActionLevel::Homology, ActionLevel::Fork})
      CHECK(check_braid_relations(n, level).passed);
  CHECK(parse_level("chain") == ActionLevel::Chain);
  CHECK(to_string(ActionLevel::Fork) == "fork");
  CHECK_THROWS_AS(parse_level("h1"), std::invalid_argument);
}

TEST_CASE("action on H_1") {
  const IntMatrix h = h1_action(1, 3);
  IntMatrix swap(4, 4);
  swap(0, 1) = swap(1, 0) = swap(2, 2) = swap(3, 3) = 1;
  CHECK(h == swap);
  for (int n = 2; n <= 5; ++n)
    for (int k = 1; k < n; ++k) {
      const IntMatrix a = h1_action(k, n);
      CHECK(a(n, n) == 1);
      CHECK(mat_mul(a, a) == IntMatrix::identity(n + 1));
    }
}

TEST_CASE("H_1 action is the specialized chain action on every edge") {
  for (int n = 2; n <= 4; ++n) {
    const TwistedComplex& tc = sal_fn_cached(n);
    auto slot = [n](const CellLabel& e) { return e.kind == CellKind::C ? std::size_t(n) : std::size_t(e.i - 1); };
    for (int k = 1; k < n; ++k) {
      const IntMatrix c1 = specialize(chain_action(k, n).c1, 1, 1), h = h1_action(k, n);
      for (std::size_t col = 0; col < tc.cells1.size(); ++col) {
        std::vector<Integer> image(n + 1, 0);
        for (std::size_t r = 0; r < tc.cells1.size(); ++r) image[slot(tc.cells1[r])] += c1(r, col);
        for (std::size_t r = 0; r <= std::size_t(n); ++r) REQUIRE(image[r] == h(r, slot(tc.cells1[col])));
      }
    }
  }
}

TEST_CASE("eigen-structure of sigma_1") {
  for (int n = 3; n <= 5; ++n) CHECK(eigen_structure_check(n).passed);
  CHECK(eigen_structure_check(2).detail.find("not applicable") != std::string::npos);
}

TEST_CASE("fork chains") {
  CHECK(fork_chain(1, 2, 3, ForkPart::Class) == X * e_cycle(1, 2, 3));
  CHECK(fork_chain(1, 3, 3, ForkPart::X1) == chain(2, {{L::B(2, 1), X}}));
  CHECK(sal_fn_cached(3).differential(fork_chain(1, 3, 3, ForkPart::Class)).is_zero());
  CHECK_THROWS(fork_chain(1, 2, 3, ForkPart::X1));

  CHECK(verify_fork_boundary(1, 3, 3).passed);
  CHECK(verify_fork_boundary(1, 4, 4).passed);
  CHECK(verify_fork_boundary(2, 4, 5).passed);
  for (int n = 3; n <= 6; ++n)
    for (int p = 1; p <= n; ++p)
      for (int q = p + 2; q <= n; ++q) REQUIRE(verify_fork_boundary(p, q, n).passed);
}

TEST_CASE("forks in the E-basis") {
  CHECK(fork_in_e_basis(1, 3, 3) == PairMap<Poly>{{{1, 3}, X * X}, {{1, 2}, -X * (X - 1)}});
  CHECK(fork_in_e_basis(1, 2, 3) == PairMap<Poly>{{{1, 2}, X}});
  CHECK(fork_in_e_basis(2, 4, 4) == PairMap<Poly>{{{2, 4}, X.pow(3)}, {{2, 3}, -X * X * (X - 1)}});
}

TEST_CASE("fork basis") {
  const RingMatrix f = fork_basis_action(1, 2);
  REQUIRE(f.rows() == 1);
  CHECK(f(0, 0) == P("-x^2*y"));

  const RingMatrix a = fork_basis_action(1, 3), b = fork_basis_action(2, 3);
  CHECK(mat_mul(mat_mul(a, b), a) == mat_mul(mat_mul(b, a), b));

  for (int n = 2; n <= 5; ++n) {
    const RingMatrix p = fork_change_of_basis(n);
    for (const auto& [i, j] : index_pairs(n)) {
      CHECK(p(idx(i, j, n), idx(i, j, n)) == X.pow(j - 1));
      for (const auto& [k, l] : index_pairs(n))
        if (idx(k, l, n) > idx(i, j, n)) CHECK(p(idx(k, l, n), idx(i, j, n)).is_zero());
    }
    CHECK(ring_inverse(p));
  }
}

TEST_CASE("verify rows for the action checks") {
  for (int n = 2; n <= 4; ++n) {
    CHECK(check_chain_and_homology_action(n).passed);
    CHECK(check_forks(n).passed);
    CHECK(check_h1_action(n).passed);
    CHECK(check_not_in_v(n).passed);
  }
}
