#include "lkb/action.hpp"

#include <sstream>

namespace lkb {

namespace {

const Poly X = Poly::x();
const Poly Y = Poly::y();

void check_generator(int k, int n, const char* who) {
  if (n < 2) throw std::out_of_range(std::string(who) + ": n must be at least 2");
  if (k < 1 || k > n - 1) throw std::out_of_range(std::string(who) + ": need 1 <= k <= n-1");
}

std::size_t pair_index(const IndexPair& p, int n) {
  const auto [i, j] = p;
  // pairs (i, .) come after all pairs with a smaller first index
  return static_cast<std::size_t>((i - 1) * n - (i - 1) * i / 2 + (j - i - 1));
}

std::vector<std::string> pair_labels(const char* prefix, int n) {
  std::vector<std::string> out;
  for (const auto& [i, j] : index_pairs(n)) out.push_back(prefix + std::to_string(i) + "," + std::to_string(j));
  return out;
}

RingMatrix labelled(RingMatrix m, const char* prefix, int n) {
  m.set_row_labels(pair_labels(prefix, n));
  m.set_col_labels(pair_labels(prefix, n));
  return m;
}

PairMap<Poly> rho_column(int k, int i, int j) {
  const IndexPair kk{k, k + 1};
  if (k == i - 1) return {{{i - 1, j}, X}, {{i, j}, 1 - X}};
  if (k == i && i < j - 1) return {{{i + 1, j}, 1}, {kk, -(X * Y * (X - 1))}};
  if (k == i && i == j - 1) return {{kk, -(X * X * Y)}};
  if (i < k && k < j - 1) return {{{i, j}, 1}, {kk, -(Y * (X - 1) * (X - 1))}};
  if (i < j - 1 && j - 1 == k) return {{{i, j - 1}, 1}, {kk, -(X * Y * (X - 1))}};
  if (k == j) return {{{i, j + 1}, X}, {{i, j}, 1 - X}};
  return {{{i, j}, 1}};
}

Letter L(const CellLabel& e, int s = 1) { return {e, s}; }

RingMatrix coordinates_matrix(const std::vector<PairMap<Poly>>& columns, int n) {
  const std::size_t m = columns.size();
  RingMatrix out(m, m);
  for (std::size_t c = 0; c < m; ++c)
    for (const auto& [p, v] : columns[c]) out(pair_index(p, n), c) += v;
  return out;
}

std::string relation_name(const std::vector<int>& lhs, const std::vector<int>& rhs) {
  std::ostringstream s;
  for (int k : lhs) s << "s" << k;
  s << " = ";
  for (int k : rhs) s << "s" << k;
  return s.str();
}

}  // namespace

BraidWord BraidWord::parse(int n, const std::string& text) {
  BraidWord w;
  w.n = n;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    int k = 0;
    try {
      k = std::stoi(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || used == 0) throw std::invalid_argument("braid word: '" + tok + "' is not an integer");
    w.letters.push_back(k);
  }
  w.validate();
  return w;
}

void BraidWord::validate() const {
  if (n < 2) throw std::invalid_argument("braid word: n must be at least 2");
  for (int k : letters)
    if (k == 0 || std::abs(k) > n - 1)
      throw std::invalid_argument("braid word: letter " + std::to_string(k) + " out of range for n = " + std::to_string(n));
}

RingMatrix lkb_generator(int k, int n) {
  check_generator(k, n, "lkb_generator");
  const auto pairs = index_pairs(n);
  std::vector<PairMap<Poly>> cols;
  for (const auto& [i, j] : pairs) cols.push_back(rho_column(k, i, j));
  return labelled(coordinates_matrix(cols, n), "e_", n);
}

RingMatrix lkb_word(const BraidWord& w) {
  w.validate();
  const std::size_t m = static_cast<std::size_t>(w.n * (w.n - 1) / 2);
  RingMatrix out = RingMatrix::identity(m);
  for (int k : w.letters) {
    RingMatrix g = lkb_generator(std::abs(k), w.n);
    if (k < 0) {
      auto inv = ring_inverse(g);
      if (!inv) throw std::logic_error("lkb_word: inverse of generator " + std::to_string(-k) + " is not over Z[H]");
      g = *inv;
    }
    out = mat_mul(out, g);
  }
  return labelled(out, "e_", w.n);
}

EdgeWord s_edge_word(int k, const CellLabel& e, int n) {
  check_generator(k, n, "s_edge_word");
  const int i = e.i;
  using C = CellLabel;
  switch (e.kind) {
    case CellKind::A1:
      if (k == i - 1) return {L(C::a(i - 1))};
      if (k == i) return {L(C::a(i)), L(C::a(i + 1)), L(C::a(i), -1)};
      return {L(e)};
    case CellKind::B1:
      if (k == i - 1) return {L(C::b(i)), L(C::b(i - 1)), L(C::b(i), -1)};
      if (k == i) return {L(C::b(i + 1))};
      return {L(e)};
    case CellKind::C:
      if (k == i - 1) return {L(C::a(i - 1)), L(C::b(i)), L(C::c(i)), L(C::b(i), -1), L(C::a(i - 1), -1)};
      return {L(e)};
    default:
      throw std::invalid_argument("s_edge_word: " + e.to_string() + " is not an edge of Sal(F_n)");
  }
}

TwistedChain u_chain(int i, int n) {
  if (i < 1 || i + 1 > n) throw std::out_of_range("u_chain: need 1 <= i < n");
  using C = CellLabel;
  return chain(2, {{C::B(i, 1), X - 1},
                   {C::B(i, 2), -(X - 1)},
                   {C::B(i + 1, 2), -(X - 1)},
                   {C::B(i + 1, 3), X - 1},
                   {C::A(i, i + 1), -Y}});
}

TwistedChain s_cell_image(int k, const CellLabel& cell, int n) {
  check_generator(k, n, "s_cell_image");
  using C = CellLabel;
  const int i = cell.i;
  if (cell.kind == CellKind::A2) {
    const int j = cell.j;
    if (k == i - 1) return chain(2, {{C::A(i, j), 1 - X}, {C::A(i - 1, j), X}});
    if (k == i && i < j - 1) return chain(2, {{C::A(i + 1, j), 1}});
    if (k == i && i == j - 1) return u_chain(i, n);
    if (i < j - 1 && j - 1 == k) return chain(2, {{C::A(i, j - 1), 1}});
    if (k == j) return chain(2, {{C::A(i, j), 1 - X}, {C::A(i, j + 1), X}});
    return chain(2, {{cell, 1}});
  }
  if (cell.kind != CellKind::B2) throw std::invalid_argument("s_cell_image: " + cell.to_string() + " is not a 2-cell");
  switch (cell.r) {
    case 1:
      if (k == i - 1) return chain(2, {{C::B(i, 3), X}});
      if (k == i) return chain(2, {{C::B(i, 1), 1}, {C::B(i + 1, 1), X}, {C::B(i + 1, 3), -(X * X)}});
      break;
    case 2:
      if (k == i - 1) return u_chain(i - 1, n) + chain(2, {{C::B(i, 3), 1}, {C::B(i - 1, 1), -X}, {C::B(i - 1, 2), X}});
      if (k == i) return chain(2, {{C::B(i, 1), 1}, {C::B(i + 1, 2), X}, {C::B(i + 1, 3), -X}}) + Y * u_chain(i, n);
      break;
    default:
      if (k == i - 1)
        return chain(2, {{C::B(i, 3), 1}, {C::B(i - 1, 3), X}, {C::B(i - 1, 1), -(X * X)}}) - X * (Y - 1) * u_chain(i - 1, n);
      if (k == i) return chain(2, {{C::B(i, 1), X}}) + (Y - 1) * u_chain(i, n);
      break;
  }
  return chain(2, {{cell, 1}});
}

ChainEndo chain_action(int k, int n) {
  check_generator(k, n, "chain_action");
  const TwistedComplex& tc = sal_fn_cached(n);
  ChainEndo s;
  s.c2 = RingMatrix(tc.cells2.size(), tc.cells2.size());
  for (std::size_t c = 0; c < tc.cells2.size(); ++c) {
    const TwistedChain image = s_cell_image(k, tc.cells2[c], n);
    for (const auto& [cell, v] : image.coefficients()) s.c2(tc.index2(cell), c) = v;
  }
  s.c1 = RingMatrix(tc.cells1.size(), tc.cells1.size());
  for (std::size_t c = 0; c < tc.cells1.size(); ++c) {
    const EdgeWord w = s_edge_word(k, tc.cells1[c], n);
    if (word_weight(w, tc.pi) != tc.pi.at(tc.cells1[c]))
      throw std::logic_error("chain_action: S_" + std::to_string(k) + " changes the weight of " + tc.cells1[c].to_string());
    const TwistedChain image = word_to_chain(w, tc.pi);
    for (const auto& [e, v] : image.coefficients()) s.c1(tc.index1(e), c) = v;
  }
  if (mat_mul(tc.d2, s.c2) != mat_mul(s.c1, tc.d2))
    throw std::logic_error("chain_action: S_" + std::to_string(k) + " is not a chain map for n = " + std::to_string(n));
  s.c2.set_row_labels(tc.d2.col_labels());
  s.c2.set_col_labels(tc.d2.col_labels());
  s.c1.set_row_labels(tc.d2.row_labels());
  s.c1.set_col_labels(tc.d2.row_labels());
  return s;
}

TwistedChain apply(const RingMatrix& c2, const TwistedChain& u, int n) {
  const TwistedComplex& tc = sal_fn_cached(n);
  TwistedChain out(2);
  for (const auto& [cell, v] : u.coefficients()) {
    const std::size_t col = tc.index2(cell);
    for (std::size_t r = 0; r < tc.cells2.size(); ++r)
      if (!c2(r, col).is_zero()) out.add(tc.cells2[r], v * c2(r, col));
  }
  return out;
}

namespace {

// Z[H]-coordinates over {E_ij} of each column of M applied to the E_ij.
RingMatrix induced_on_e(const RingMatrix& c2, int n, const char* who) {
  std::vector<PairMap<Poly>> cols;
  for (const auto& [i, j] : index_pairs(n)) {
    auto coords = v_membership(apply(c2, e_cycle(i, j, n), n), n);
    if (!coords)
      throw std::logic_error(std::string(who) + ": image of E_" + std::to_string(i) + "," + std::to_string(j) +
                             " leaves V");
    cols.push_back(*coords);
  }
  return labelled(coordinates_matrix(cols, n), "E_", n);
}

}  // namespace

RingMatrix homology_action(int k, int n) {
  const RingMatrix m = induced_on_e(chain_action(k, n).c2, n, "homology_action");
  if (m != lkb_generator(k, n))
    throw std::logic_error("homology_action: sigma_" + std::to_string(k) + " on E differs from rho_k, n = " + std::to_string(n));
  return m;
}

IntMatrix h1_action(int k, int n) {
  const TwistedComplex& tc = sal_fn_cached(n);
  const IntMatrix c1 = specialize(chain_action(k, n).c1, 1, 1);
  // [b_i] = [a_i] and [c_i] = [c_1]
  auto slot = [n](const CellLabel& e) -> std::size_t {
    return e.kind == CellKind::C ? static_cast<std::size_t>(n) : static_cast<std::size_t>(e.i - 1);
  };
  const std::size_t m = static_cast<std::size_t>(n) + 1;
  IntMatrix out(m, m);
  std::vector<CellLabel> basis;
  for (int i = 1; i <= n; ++i) basis.push_back(CellLabel::a(i));
  basis.push_back(CellLabel::c(1));
  for (std::size_t c = 0; c < m; ++c) {
    const std::size_t col = tc.index1(basis[c]);
    for (std::size_t r = 0; r < tc.cells1.size(); ++r) out(slot(tc.cells1[r]), c) += c1(r, col);
  }
  std::vector<std::string> labels;
  for (const auto& e : basis) labels.push_back("[" + e.to_string() + "]");
  out.set_row_labels(labels);
  out.set_col_labels(labels);
  return out;
}

CheckReport eigen_structure_check(int n) {
  CheckReport rep{"eigen-structure of sigma_1", n, false, "", std::nullopt};
  if (n < 3) {
    rep.passed = true;
    rep.detail = "not applicable (needs n >= 3)";
    return rep;
  }
  const RingMatrix s1 = homology_action(1, n);
  const std::size_t m = s1.rows();
  auto vec = [&](const PairMap<Poly>& coords) {
    RingMatrix v(m, 1);
    for (const auto& [p, c] : coords) v(pair_index(p, n), 0) += c;
    return v;
  };
  auto scaled = [](const RingMatrix& v, const Poly& c) {
    RingMatrix out = v;
    for (std::size_t r = 0; r < v.rows(); ++r) out(r, 0) = c * v(r, 0);
    return out;
  };
  std::vector<std::pair<std::string, RingMatrix>> family;
  std::vector<std::string> failures;
  auto expect = [&](const std::string& name, const RingMatrix& v, const Poly& lambda) {
    if (mat_mul(s1, v) != scaled(v, lambda)) failures.push_back(name);
    family.emplace_back(name, v);
  };
  expect("E_1,2", vec({{{1, 2}, 1}}), -(X * X * Y));
  for (int j = 3; j <= n; ++j)
    expect("F_" + std::to_string(j), vec({{{1, j}, X * Y - 1}, {{2, j}, -(X * Y - 1)}, {{1, 2}, Y * (1 - X)}}), -X);
  const Poly x2y1 = X * X * Y + 1;
  for (int j = 3; j <= n; ++j)
    expect("G_" + std::to_string(j), vec({{{1, j}, X * x2y1}, {{2, j}, x2y1}, {{1, 2}, X * X * Y * (1 - X)}}), 1);
  for (int i = 3; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) expect("E_" + std::to_string(i) + "," + std::to_string(j), vec({{{i, j}, 1}}), 1);

  RingMatrix basis(m, family.size());
  for (std::size_t c = 0; c < family.size(); ++c)
    for (std::size_t r = 0; r < m; ++r) basis(r, c) = family[c].second(r, 0);
  const std::size_t rank = field_rank(to_field(basis));
  const bool full = family.size() == m && rank == m;
  rep.passed = failures.empty() && full;
  std::ostringstream d;
  d << family.size() << " eigenvectors, rank " << rank << " of " << m;
  for (const auto& f : failures) d << "; " << f << " is not an eigenvector";
  rep.detail = d.str();
  if (!rep.passed) rep.witness = to_json(basis);
  return rep;
}

TwistedChain fork_chain(int p, int q, int n, ForkPart part) {
  if (!(1 <= p && p < q && q <= n)) throw std::out_of_range("fork_chain: need 1 <= p < q <= n");
  if (part != ForkPart::Class && q == p + 1) throw std::out_of_range("fork_chain: X1 and X2 need q > p+1");
  const Poly lead = e_leading();
  auto X1 = [&] {
    TwistedChain u(2);
    for (int k = p + 1; k < q; ++k) u.add(CellLabel::B(k, 1), X.pow(k - 1));
    return u;
  };
  auto X2 = [&] {
    TwistedChain u = X.pow(p) * (X - 1) * v_chain(p, VKind::b, n);
    u += X.pow(q - 1) * (X - 1) * v_chain(q, VKind::a, n);
    u.add(CellLabel::A(p, q), X.pow(q - 1) * lead);
    for (int k = p + 1; k < q; ++k) u.add(CellLabel::A(p, k), -(X.pow(k - 1) * (X - 1) * lead));
    return u;
  };
  switch (part) {
    case ForkPart::X1:
      return X1();
    case ForkPart::X2:
      return X2();
    case ForkPart::Class:
      break;
  }
  if (q == p + 1) return X.pow(p) * e_cycle(p, q, n);
  TwistedChain u = X2() - (X - 1) * (X - 1) * (X * Y + 1) * X1();
  if (!sal_fn_cached(n).differential(u).is_zero()) throw std::logic_error("fork_chain: fork class is not a cycle");
  return u;
}

CheckReport verify_fork_boundary(int p, int q, int n) {
  CheckReport rep{"fork boundary identity", n, false, "", std::nullopt};
  const TwistedComplex& tc = sal_fn_cached(n);
  const TwistedChain d2 = tc.differential(fork_chain(p, q, n, ForkPart::X2));
  const TwistedChain d1 = tc.differential(fork_chain(p, q, n, ForkPart::X1));
  TwistedChain closed(1);
  for (int k = p + 1; k < q; ++k) closed.add(CellLabel::a(k), -(X.pow(k - 1) * (Y - 1)));
  closed.add(CellLabel::c(p + 1), -X.pow(p));
  closed.add(CellLabel::c(q), X.pow(q - 1));
  const Poly f = (X - 1) * (X - 1) * (X * Y + 1);
  const bool first = d2 == f * d1;
  const bool second = d1 == closed;
  rep.passed = first && second;
  rep.detail = "(p,q) = (" + std::to_string(p) + "," + std::to_string(q) + ")";
  if (!rep.passed) rep.witness = nlohmann::json{{"dX2", to_json(d2)}, {"dX1", to_json(d1)}, {"closed", to_json(closed)}};
  return rep;
}

PairMap<Poly> fork_in_e_basis(int p, int q, int n) {
  auto coords = v_membership(fork_chain(p, q, n, ForkPart::Class), n);
  if (!coords) throw std::logic_error("fork_in_e_basis: fork class is not in V");
  PairMap<Poly> expected{{{p, q}, X.pow(q - 1)}};
  for (int k = p + 1; k < q; ++k) expected[{p, k}] = -(X.pow(k - 1) * (X - 1));
  if (*coords != expected)
    throw std::logic_error("fork_in_e_basis: coordinates of the fork class (" + std::to_string(p) + "," +
                           std::to_string(q) + ") differ from the closed form");
  return *coords;
}

RingMatrix fork_change_of_basis(int n) {
  std::vector<PairMap<Poly>> cols;
  for (const auto& [p, q] : index_pairs(n)) cols.push_back(fork_in_e_basis(p, q, n));
  RingMatrix m = coordinates_matrix(cols, n);
  m.set_row_labels(pair_labels("E_", n));
  m.set_col_labels(pair_labels("X_", n));
  return m;
}

RingMatrix fork_basis_action(int k, int n) {
  const RingMatrix p = fork_change_of_basis(n);
  const auto p_inv = ring_inverse(p);
  if (!p_inv) throw std::logic_error("fork_basis_action: change of basis is not invertible over Z[H]");
  return labelled(mat_mul(*p_inv, mat_mul(homology_action(k, n), p)), "X_", n);
}

ActionLevel parse_level(const std::string& s) {
  if (s == "matrix") return ActionLevel::Matrix;
  if (s == "chain") return ActionLevel::Chain;
  if (s == "homology") return ActionLevel::Homology;
  if (s == "fork") return ActionLevel::Fork;
  throw std::invalid_argument("unknown level '" + s + "' (expected matrix, chain, homology or fork)");
}

std::string to_string(ActionLevel level) {
  switch (level) {
    case ActionLevel::Matrix:
      return "matrix";
    case ActionLevel::Chain:
      return "chain";
    case ActionLevel::Homology:
      return "homology";
    case ActionLevel::Fork:
      break;
  }
  return "fork";
}

CheckReport check_braid_relations(int n, ActionLevel level) {
  CheckReport rep{"braid relations (" + to_string(level) + ")", n, false, "", std::nullopt};
  if (n < 2) throw std::out_of_range("check_braid_relations: n must be at least 2");
  std::vector<RingMatrix> gens(static_cast<std::size_t>(n));
  for (int k = 1; k < n; ++k) {
    switch (level) {
      case ActionLevel::Matrix:
        gens[k] = lkb_generator(k, n);
        break;
      case ActionLevel::Chain:
        gens[k] = chain_action(k, n).c2;
        break;
      case ActionLevel::Homology:
        gens[k] = homology_action(k, n);
        break;
      case ActionLevel::Fork:
        gens[k] = fork_basis_action(k, n);
        break;
    }
  }
  auto product = [&](const std::vector<int>& word) {
    RingMatrix m = gens[word.front()];
    for (std::size_t t = 1; t < word.size(); ++t) m = mat_mul(m, gens[word[t]]);
    // chain maps only need to agree on H_2
    if (level == ActionLevel::Chain) return induced_on_e(m, n, "check_braid_relations");
    return m;
  };
  std::size_t checked = 0;
  for (int k = 1; k < n; ++k)
    for (int l = k + 1; l < n; ++l) {
      std::vector<int> lhs, rhs;
      if (l == k + 1) {
        lhs = {k, l, k};
        rhs = {l, k, l};
      } else {
        lhs = {k, l};
        rhs = {l, k};
      }
      ++checked;
      if (product(lhs) != product(rhs)) {
        rep.detail = "fails: " + relation_name(lhs, rhs);
        rep.witness = nlohmann::json{{"lhs", to_json(product(lhs))}, {"rhs", to_json(product(rhs))}};
        return rep;
      }
    }
  rep.passed = true;
  rep.detail = std::to_string(checked) + " relations";
  return rep;
}

CheckReport check_generator_units(int n) {
  CheckReport rep{"generator determinants are units", n, true, "", std::nullopt};
  for (int k = 1; k < n; ++k) {
    const RationalFunction det = field_det(to_field(lkb_generator(k, n)));
    const auto d = to_laurent(det);
    const auto inv = det.is_zero() ? std::nullopt : to_laurent(RationalFunction(1) / det);
    if (!d || !inv || !d->is_unit()) {
      rep.passed = false;
      rep.detail = "det rho_" + std::to_string(k) + " = " + det.to_string();
      return rep;
    }
    if (k == 1) rep.detail = "det rho_1 = " + d->to_string();
  }
  return rep;
}

}  // namespace lkb
