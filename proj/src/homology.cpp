#include "lkb/homology.hpp"

#include <memory>
#include <mutex>

namespace lkb {

namespace {

const Poly X = Poly::x();
const Poly Y = Poly::y();

void check_pair(int i, int j, int n, const char* who) {
  if (!(1 <= i && i < j && j <= n)) throw std::out_of_range(std::string(who) + ": need 1 <= i < j <= n");
}

// Checks v == c * u, coefficientwise.
bool scaled_equal(const TwistedChain& u, const Poly& c, const TwistedChain& v) { return c * u == v; }

}  // namespace

const TwistedComplex& sal_fn_cached(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<TwistedComplex>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<TwistedComplex>(sal_fn(n));
  return *slot;
}

Poly e_leading() { return (Y - 1) * (X * Y + 1); }

std::vector<IndexPair> index_pairs(int n) {
  std::vector<IndexPair> out;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) out.emplace_back(i, j);
  return out;
}

TwistedChain v_chain(int i, VKind kind, int n) {
  if (i < 1 || i > n) throw std::out_of_range("v_chain: index out of range");
  auto B = [i](int r) { return CellLabel::B(i, r); };
  switch (kind) {
    case VKind::b:
      return chain(2, {{B(1), -(X * Y)}, {B(2), X * (Y - 1)}, {B(3), 1}});
    case VKind::a:
      return chain(2, {{B(1), 1}, {B(2), X * (Y - 1)}, {B(3), -(X * Y)}});
    case VKind::zero:
      break;
  }
  return chain(2, {{B(1), -Y}, {B(2), Y - 1}, {B(3), -Y}});
}

TwistedChain e_cycle(int i, int j, int n) {
  check_pair(i, j, n, "e_cycle");
  TwistedChain u = chain(2, {{CellLabel::A(i, j), e_leading()}});
  u += (X - 1) * v_chain(i, VKind::b, n);
  u += (X - 1) * v_chain(j, VKind::a, n);
  const Poly sq = (X - 1) * (X - 1);
  for (int k = i + 1; k < j; ++k) u += sq * v_chain(k, VKind::zero, n);
  return u;
}

RingMatrix e_matrix(int n) {
  const TwistedComplex& tc = sal_fn_cached(n);
  const auto pairs = index_pairs(n);
  RingMatrix m(tc.cells2.size(), pairs.size());
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < pairs.size(); ++c) {
    const auto [i, j] = pairs[c];
    const TwistedChain e = e_cycle(i, j, n);
    for (const auto& [cell, coeff] : e.coefficients()) m(tc.index2(cell), c) = coeff;
    labels.push_back("E_" + std::to_string(i) + "," + std::to_string(j));
  }
  std::vector<std::string> rows;
  for (const auto& cell : tc.cells2) rows.push_back(cell.to_string());
  m.set_row_labels(rows);
  m.set_col_labels(labels);
  return m;
}

KernelReport kernel_rank(int n) {
  const TwistedComplex& tc = sal_fn_cached(n);
  const auto kernel = field_kernel(to_field(tc.d2));
  const FieldMatrix e = to_field(e_matrix(n));
  KernelReport r;
  r.dimension = kernel.size();
  r.e_independent = field_rank(e) == e.cols();
  r.e_spans = true;
  for (const auto& x : field_solve_many(e, kernel))
    if (!x) r.e_spans = false;
  return r;
}

TwistedChain eta(const CellLabel& edge, int n) {
  const int i = edge.i;
  auto B = [i](int r) { return CellLabel::B(i, r); };
  switch (edge.kind) {
    case CellKind::A1:
      return chain(2, {{B(1), -(X * Y - Y + 1)}, {B(2), -(Y - 1)}, {B(3), Y}});
    case CellKind::B1:
      return v_chain(i, VKind::b, n);
    case CellKind::C:
      if (i == n + 1) return TwistedChain(2);
      return chain(2, {{B(1), -(Y * (Y - 1))}, {B(2), (Y - 1) * (Y - 1)}, {B(3), -(Y * (Y - 1))}});
    default:
      throw std::invalid_argument("eta: not an edge of Sal(F_n)");
  }
}

EtaReport verify_eta_triangular(int n) {
  const TwistedComplex& tc = sal_fn_cached(n);
  std::vector<CellLabel> order;
  for (int i = n; i >= 1; --i)
    for (int r = 1; r <= 3; ++r) order.push_back(CellLabel::B(i, r));
  EtaReport rep;
  rep.matrix = RingMatrix(order.size(), order.size());
  for (std::size_t c = 0; c < order.size(); ++c) {
    TwistedChain image(2);
    const TwistedChain boundary = tc.differential(chain(2, {{order[c], 1}}));
    for (const auto& [e, coeff] : boundary.coefficients()) image += coeff * eta(e, n);
    for (std::size_t r = 0; r < order.size(); ++r) rep.matrix(r, c) = image.coefficient(order[r]);
  }
  std::vector<std::string> labels;
  for (const auto& cell : order) labels.push_back(cell.to_string());
  rep.matrix.set_row_labels(labels);
  rep.matrix.set_col_labels(labels);

  bool upper = true, lower = true;
  for (std::size_t r = 0; r < order.size(); ++r)
    for (std::size_t c = 0; c < order.size(); ++c) {
      if (r > c && !rep.matrix(r, c).is_zero()) upper = false;
      if (r < c && !rep.matrix(r, c).is_zero()) lower = false;
    }
  rep.triangular = upper || lower;
  rep.diagonal_nonzero = true;
  for (std::size_t r = 0; r < order.size(); ++r) {
    rep.diagonal.push_back(rep.matrix(r, r));
    if (rep.matrix(r, r).is_zero()) rep.diagonal_nonzero = false;
  }
  return rep;
}

TwistedChain e_combination(const PairMap<Poly>& coeffs, int n) {
  TwistedChain u(2);
  for (const auto& [p, c] : coeffs)
    if (!c.is_zero()) u += c * e_cycle(p.first, p.second, n);
  return u;
}

PairMap<RationalFunction> e_coordinates(const TwistedChain& u, int n) {
  if (u.degree() != 2) throw std::invalid_argument("e_coordinates: expected a 2-chain");
  if (!sal_fn_cached(n).differential(u).is_zero()) throw std::invalid_argument("e_coordinates: chain is not a cycle");
  const Poly lead = e_leading();
  PairMap<RationalFunction> out;
  PairMap<Poly> numerators;
  for (const auto& [cell, c] : u.coefficients())
    if (cell.kind == CellKind::A2) {
      numerators[{cell.i, cell.j}] = c;
      out[{cell.i, cell.j}] = RationalFunction(c, lead);
    }
  // lead * u must equal the combination of the numerators, B-cells included
  if (!scaled_equal(u, lead, e_combination(numerators, n)))
    throw std::logic_error("e_coordinates: cycle is not in the span of the E_ij");
  return out;
}

std::optional<PairMap<Poly>> v_membership(const TwistedChain& u, int n) {
  PairMap<Poly> out;
  for (const auto& [p, c] : e_coordinates(u, n)) {
    auto q = to_laurent(c);
    if (!q) return std::nullopt;
    out[p] = *q;
  }
  return out;
}

TwistedChain integral_x(int i, int j, int n) {
  check_pair(i, j, n, "integral_x");
  if (j == i + 1) return e_cycle(i, j, n);
  auto A = [](int a, int b) { return CellLabel::A(a, b); };
  auto B = [](int a, int r) { return CellLabel::B(a, r); };
  auto E = [n](int a, int b) { return e_cycle(a, b, n); };
  const Poly xy1 = X * Y + 1;
  TwistedChain cells(2), rational(2);
  Poly denom;
  if (i == 1 && j == 3) {
    cells = chain(2, {{A(1, 2), xy1},
                      {A(2, 3), xy1},
                      {A(1, 3), -xy1},
                      {B(2, 1), -(X - 1)},
                      {B(2, 2), X * X - 1},
                      {B(2, 3), -(X - 1)}});
    rational = E(1, 2) + E(2, 3) - E(1, 3);
    denom = Y - 1;
  } else if (j == i + 2) {
    cells = chain(2, {{A(i - 1, i), X * Y},
                      {A(i, i + 1), Y * (X - 1)},
                      {A(i + 1, i + 2), -1},
                      {A(i - 1, i + 1), -(X * Y)},
                      {A(i, i + 2), 1},
                      {B(i, 2), X * (X - 1)},
                      {B(i, 3), -(X - 1)},
                      {B(i + 1, 2), -(X - 1)},
                      {B(i + 1, 3), X - 1}});
    rational = X * Y * E(i - 1, i) + (X - 1) * Y * E(i, i + 1) - E(i + 1, i + 2) - X * Y * E(i - 1, i + 1) + E(i, i + 2);
    denom = e_leading();
  } else {
    cells = chain(2, {{A(i, j), 1}, {A(i, j - 1), -1}, {A(i + 1, j), -1}, {A(i + 1, j - 1), 1}});
    rational = E(i + 1, j - 1) - E(i, j - 1) - E(i + 1, j) + E(i, j);
    denom = e_leading();
  }
  if (!scaled_equal(cells, denom, rational))
    throw std::logic_error("integral_x: cell form and E-form disagree at (" + std::to_string(i) + "," + std::to_string(j) + ")");
  return cells;
}

PairMap<Poly> reduce_to_integral_basis(const TwistedChain& u, int n) {
  if (u.degree() != 2) throw std::invalid_argument("reduce_to_integral_basis: expected a 2-chain");
  if (!sal_fn_cached(n).differential(u).is_zero())
    throw std::invalid_argument("reduce_to_integral_basis: chain is not a cycle");
  PairMap<Poly> out;
  TwistedChain rest = u;
  for (;;) {
    std::optional<IndexPair> top;
    for (const auto& [cell, c] : rest.coefficients())
      if (cell.kind == CellKind::A2) {
        const IndexPair p{cell.i, cell.j};
        if (!top || AOrder{}(*top, p)) top = p;
      }
    if (!top) break;
    const auto [i, j] = *top;
    const Poly alpha = rest.coefficient(CellLabel::A(i, j));
    Poly divisor = 1;
    if (j == i + 1) divisor = e_leading();
    else if (i == 1 && j == 3) divisor = -(X * Y + 1);
    const auto q = try_div_exact(alpha, divisor);
    if (!q)
      throw std::logic_error("reduce_to_integral_basis: leading coefficient " + alpha.to_string() + " at A_" +
                             std::to_string(i) + "," + std::to_string(j) + " is not divisible by " + divisor.to_string());
    out[*top] += *q;
    rest -= *q * integral_x(i, j, n);
  }
  if (!rest.is_zero())
    throw std::logic_error("reduce_to_integral_basis: nonzero remainder " + rest.to_string() + " without A-cells");
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

H1Report h1_fn(int n) {
  const TwistedComplex& tc = sal_fn_cached(n);
  const IntMatrix d2 = untwist(tc);
  const SmithForm s = int_smith(d2);
  H1Report r;
  // the single vertex makes the untwisted d1 zero
  r.rank = tc.cells1.size() - s.rank;
  for (const auto& f : s.invariant_factors)
    if (f != 1) r.torsion.push_back(f);

  auto relation = [&](const CellLabel& plus, const CellLabel& minus) {
    std::vector<Integer> v(tc.cells1.size(), 0);
    v[tc.index1(plus)] += 1;
    v[tc.index1(minus)] -= 1;
    return int_in_column_lattice(d2, v);
  };
  r.c_relations = r.b_relations = true;
  for (int i = 2; i <= n + 1; ++i)
    if (!relation(CellLabel::c(i), CellLabel::c(1))) r.c_relations = false;
  for (int i = 1; i <= n; ++i)
    if (!relation(CellLabel::b(i), CellLabel::a(i))) r.b_relations = false;
  return r;
}

}  // namespace lkb
