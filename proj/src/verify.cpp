#include "lkb/verify.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace lkb {

namespace {

const Poly X = Poly::x();
const Poly Y = Poly::y();

CheckReport not_applicable(const std::string& check, int n, const std::string& why) {
  return {check, n, true, "not applicable (" + why + ")", std::nullopt};
}

CheckReport guarded(const std::string& check, int n, const std::function<CheckReport()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return {check, n, false, std::string("error: ") + e.what(), std::nullopt};
  }
}

}  // namespace

Poly random_poly(std::mt19937_64& rng, int deg, int coeff, int neg, int terms) {
  std::uniform_int_distribution<int> e(-neg, deg - neg), c(-coeff, coeff), t(0, terms);
  std::vector<Poly::Term> out;
  const int count = t(rng);
  for (int k = 0; k < count; ++k) out.push_back({{e(rng), e(rng)}, Integer(c(rng))});
  return Poly::from_terms(std::move(out));
}

std::vector<Line> random_arrangement(std::mt19937_64& rng, int max_lines) {
  std::uniform_int_distribution<int> count(1, max_lines), num(-4, 4), den(1, 3);
  const int target = count(rng);
  std::vector<Line> lines;
  while (static_cast<int>(lines.size()) < target) {
    Rational a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
    a.canonicalize();
    b.canonicalize();
    c.canonicalize();
    if (a == 0 && b == 0) continue;
    const Line l = Line::make(a, b, c);
    if (std::find(lines.begin(), lines.end(), l) == lines.end()) lines.push_back(l);
  }
  return lines;
}

CheckReport check_differential_formulas(int n) {
  return guarded("differential closed forms", n, [n] {
    const TwistedComplex& tc = sal_fn_cached(n);
    using C = CellLabel;
    std::size_t cells = 0;
    std::vector<std::string> bad;
    for (const auto& cell : tc.cells2) {
      const int i = cell.i;
      TwistedChain expected(1);
      if (cell.kind == CellKind::A2) {
        expected = chain(1, {{C::a(cell.j), X - 1}, {C::b(i), -(X - 1)}});
      } else if (cell.r == 1) {
        expected = chain(1, {{C::a(i), 1 - Y}, {C::c(i), -1}, {C::c(i + 1), X}});
      } else if (cell.r == 2) {
        expected = chain(1, {{C::a(i), -Y}, {C::b(i), Y}, {C::c(i), -1}, {C::c(i + 1), 1}});
      } else {
        expected = chain(1, {{C::b(i), Y - 1}, {C::c(i), -X}, {C::c(i + 1), 1}});
      }
      ++cells;
      if (tc.differential(chain(2, {{cell, 1}})) != expected) bad.push_back(cell.to_string());
    }
    CheckReport r{"differential closed forms", n, bad.empty(), std::to_string(cells) + " cells", std::nullopt};
    if (!bad.empty()) r.detail = "mismatch at " + bad.front();
    return r;
  });
}

CheckReport check_kernel_basis(int n) {
  return guarded("rational kernel basis", n, [n] {
    const KernelReport k = kernel_rank(n);
    const EtaReport eta = verify_eta_triangular(n);
    bool cycles = true;
    for (const auto& [i, j] : index_pairs(n))
      if (!sal_fn_cached(n).differential(e_cycle(i, j, n)).is_zero()) cycles = false;
    const std::size_t expected = static_cast<std::size_t>(n * (n - 1) / 2);
    CheckReport r{"rational kernel basis", n, false, "", std::nullopt};
    r.passed = cycles && k.dimension == expected && k.e_independent && k.e_spans && eta.triangular &&
               eta.diagonal_nonzero;
    std::ostringstream d;
    d << "dim ker = " << k.dimension << " (expected " << expected << ")" << (k.e_spans ? ", E spans" : ", E does not span")
      << (eta.triangular && eta.diagonal_nonzero ? ", eta o d triangular" : ", eta o d not triangular");
    r.detail = d.str();
    if (!r.passed) r.witness = to_json(eta.matrix);
    return r;
  });
}

CheckReport check_h1_fn(int n) {
  return guarded("integral H_1 of Sal(F_n)", n, [n] {
    const H1Report h = h1_fn(n);
    CheckReport r{"integral H_1 of Sal(F_n)", n, false, "", std::nullopt};
    r.passed = h.rank == static_cast<std::size_t>(n + 1) && h.torsion.empty() && h.c_relations && h.b_relations;
    r.detail = "rank " + std::to_string(h.rank) + (h.torsion.empty() ? ", torsion-free" : ", torsion") +
               (h.c_relations ? ", [c_i]=[c_1]" : "") + (h.b_relations ? ", [b_i]=[a_i]" : "");
    return r;
  });
}

CheckReport check_integral_basis(int n, std::mt19937_64& rng, int round_trips) {
  return guarded("integral basis", n, [&rng, n, round_trips] {
    const TwistedComplex& tc = sal_fn_cached(n);
    const auto pairs = index_pairs(n);
    std::vector<TwistedChain> xs;
    for (const auto& [i, j] : pairs) {
      TwistedChain u = integral_x(i, j, n);  // also checks the two forms agree
      if (!tc.differential(u).is_zero())
        return CheckReport{"integral basis", n, false, "X_" + std::to_string(i) + "," + std::to_string(j) + " is not a cycle",
                           to_json(u)};
      xs.push_back(std::move(u));
    }
    for (int t = 0; t < round_trips; ++t) {
      PairMap<Poly> lambda;
      TwistedChain u(2);
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        const Poly c = random_poly(rng, 3, 20);
        if (c.is_zero()) continue;
        lambda[pairs[p]] = c;
        u += c * xs[p];
      }
      if (reduce_to_integral_basis(u, n) != lambda)
        return CheckReport{"integral basis", n, false, "round trip " + std::to_string(t) + " differs", to_json(u)};
    }
    return CheckReport{"integral basis", n, true,
                       std::to_string(pairs.size()) + " basis cycles, " + std::to_string(round_trips) + " round trips",
                       std::nullopt};
  });
}

CheckReport check_lkb_matrices(int n) {
  return guarded("LKB matrices: relations and inverses", n, [n] {
    CheckReport rel = check_braid_relations(n, ActionLevel::Matrix);
    CheckReport units = check_generator_units(n);
    bool inverses = true;
    for (int k = 1; k < n; ++k) {
      const RingMatrix g = lkb_generator(k, n);
      const auto inv = ring_inverse(g);
      if (!inv || mat_mul(g, *inv) != RingMatrix::identity(g.rows())) inverses = false;
    }
    CheckReport r{"LKB matrices: relations and inverses", n, rel.passed && units.passed && inverses, "", rel.witness};
    r.detail = rel.detail + "; " + (inverses ? "inverses over Z[H]" : "an inverse leaves Z[H]") + "; " + units.detail;
    return r;
  });
}

CheckReport check_chain_and_homology_action(int n) {
  return guarded("chain map and action on E", n, [n] {
    for (int k = 1; k < n; ++k) {
      chain_action(k, n);     // chain map and pi-invariance, throws on failure
      homology_action(k, n);  // equals rho_k, throws on failure
    }
    const CheckReport hom = check_braid_relations(n, ActionLevel::Homology);
    const CheckReport ch = check_braid_relations(n, ActionLevel::Chain);
    CheckReport r{"chain map and action on E", n, hom.passed && ch.passed, "", std::nullopt};
    r.detail = "d S2 = S1 d, pi-invariant, sigma_k on E equals rho_k for all k; relations on H_2: " +
               (hom.passed && ch.passed ? std::string("hold") : hom.detail + " / " + ch.detail);
    if (!hom.passed) r.witness = hom.witness;
    if (!ch.passed) r.witness = ch.witness;
    return r;
  });
}

CheckReport check_not_in_v(int n) {
  if (n < 3) return not_applicable("H_2 strictly larger than V", n, "needs n >= 3");
  return guarded("H_2 strictly larger than V", n, [n] {
    const TwistedChain x13 = integral_x(1, 3, n);
    const bool cycle = sal_fn_cached(n).differential(x13).is_zero();
    const bool outside = !v_membership(x13, n).has_value();
    const auto coords = e_coordinates(x13, n);
    const RationalFunction inv(1, Y - 1);
    const bool expected = coords.size() == 3 && coords.at({1, 2}) == inv && coords.at({2, 3}) == inv &&
                          coords.at({1, 3}) == RationalFunction(-1, Y - 1);
    return CheckReport{"H_2 strictly larger than V", n, cycle && outside && expected,
                       "X_1,3 = (E_1,2 + E_2,3 - E_1,3)/(y-1) is a cycle outside V", std::nullopt};
  });
}

CheckReport check_eigen_structure(int n) {
  if (n < 3) return not_applicable("eigen-structure of sigma_1", n, "needs n >= 3");
  return guarded("eigen-structure of sigma_1", n, [n] { return eigen_structure_check(n); });
}

CheckReport check_forks(int n) {
  if (n < 3) return not_applicable("fork classes", n, "needs n >= 3");
  return guarded("fork classes", n, [n] {
    std::size_t boundaries = 0;
    for (int p = 1; p <= n; ++p)
      for (int q = p + 2; q <= n; ++q) {
        CheckReport b = verify_fork_boundary(p, q, n);
        if (!b.passed) return b;
        ++boundaries;
      }
    const RingMatrix P = fork_change_of_basis(n);  // checks every closed form
    bool triangular = true;
    for (std::size_t r = 0; r < P.rows(); ++r)
      for (std::size_t c = 0; c < r; ++c)
        if (!P(r, c).is_zero()) triangular = false;
    CheckReport rel = check_braid_relations(n, ActionLevel::Fork);
    CheckReport r{"fork classes", n, triangular && rel.passed, "", rel.witness};
    r.detail = std::to_string(boundaries) + " boundary identities, E-expansions match, fork basis relations: " + rel.detail;
    return r;
  });
}

CheckReport check_h1_action(int n) {
  return guarded("action on H_1", n, [n] {
    const std::size_t m = static_cast<std::size_t>(n) + 1;
    for (int k = 1; k < n; ++k) {
      IntMatrix expected = IntMatrix::identity(m);
      expected(k - 1, k - 1) = 0;
      expected(k, k) = 0;
      expected(k - 1, k) = 1;
      expected(k, k - 1) = 1;
      const IntMatrix got = h1_action(k, n);
      if (got != expected)
        return CheckReport{"action on H_1", n, false, "sigma_" + std::to_string(k) + " is not the transposition",
                           nlohmann::json(render_text(got))};
    }
    return CheckReport{"action on H_1", n, true, "sigma_k swaps [a_k], [a_k+1] and fixes [c_1]", std::nullopt};
  });
}

CheckReport check_sal_an_quotient(int n) {
  return guarded("cells of Sal(A_n)/Sigma_2", n, [n] {
    const CwComplex cw = sal_an_mod_sigma2(n);
    const std::size_t pairs = static_cast<std::size_t>((n + 1) * (n + 2) / 2);
    const std::size_t edges = static_cast<std::size_t>(n + 1 + 2 * n * (n + 1));
    const std::size_t faces = static_cast<std::size_t>(2 * n * (n - 1) + 3 * n);
    bool table = true;
    using K = CellKind;
    auto P = [](int i, int j) { return CellLabel{K::P, i, j}; };
    for (int i = 1; i <= n; ++i)
      for (int j = i; j <= n; ++j) {
        auto ok = [&](K kind, CellLabel s, CellLabel t) {
          const CellLabel e{kind, i, j};
          return cw.source.at(e) == s && cw.target.at(e) == t;
        };
        table = table && ok(K::aE, P(i, j), P(i, j + 1)) && ok(K::abarE, P(i, j + 1), P(i, j)) &&
                ok(K::bE, P(i + 1, j + 1), P(i, j + 1)) && ok(K::bbarE, P(i, j + 1), P(i + 1, j + 1));
      }
    for (int i = 1; i <= n + 1; ++i) {
      const CellLabel c{K::cE, i};
      table = table && cw.source.at(c) == P(i, i) && cw.target.at(c) == P(i, i);
    }
    const bool counts = cw.vertices.size() == pairs && cw.edges.size() == edges && cw.faces.size() == faces;
    const bool closes = cw.all_words_close();
    std::ostringstream d;
    d << cw.vertices.size() << " vertices, " << cw.edges.size() << " edges, " << cw.faces.size() << " 2-cells"
      << (closes ? ", boundary words close" : ", a boundary word does not close")
      << (table ? ", source/target table holds" : ", source/target table violated");
    return CheckReport{"cells of Sal(A_n)/Sigma_2", n, counts && closes && table, d.str(), std::nullopt};
  });
}

CheckReport check_arrangement(const std::vector<Line>& lines, const std::string& name) {
  const int count = static_cast<int>(lines.size());
  return guarded("Salvetti complex: " + name, count, [&] {
    const FacetComplex fc = build_facets(lines);
    const SalvettiComplex sc = build_salvetti(fc);
    std::size_t around = 0;
    for (std::size_t v = 0; v < fc.vertices.size(); ++v) around += cyclic_order_at_vertex(fc, v).size();
    // each line carries one more edge than it has vertices
    bool per_line = true;
    for (std::size_t l = 0; l < lines.size(); ++l) {
      std::size_t on = 0, edges = 0;
      for (const auto& v : fc.vertices) on += v.sign[l] == 0;
      for (const auto& e : fc.edges) edges += e.line == l;
      per_line = per_line && edges == on + 1;
    }
    const bool counts = sc.cw.vertices.size() == fc.chambers.size() && sc.cw.edges.size() == 2 * fc.edges.size() &&
                        sc.cw.faces.size() == around && per_line;
    // Euler characteristic of the plane: V - E + F = 1 over the facets
    const bool euler = static_cast<long>(fc.vertices.size()) - static_cast<long>(fc.edges.size()) +
                           static_cast<long>(fc.chambers.size()) ==
                       1;
    const bool closes = sc.cw.all_words_close();
    const SalvettiH1 h = salvetti_h1(sc);
    const bool meridians = std::all_of(h.meridian_matches_line.begin(), h.meridian_matches_line.end(), [](bool b) { return b; });
    const bool h1 = h.rank == lines.size() && h.torsion.empty();
    std::ostringstream d;
    d << lines.size() << " lines, " << fc.chambers.size() << " chambers, " << sc.cw.edges.size() << " edges, "
      << sc.cw.faces.size() << " 2-cells, H1 rank " << h.rank << (h.torsion.empty() ? "" : " with torsion");
    return CheckReport{"Salvetti complex: " + name, count, counts && euler && closes && meridians && h1, d.str(),
                       std::nullopt};
  });
}

std::vector<CheckReport> run_verify_suite(const VerifyOptions& opt) {
  if (opt.max_n < 2) throw std::invalid_argument("verify: --max-n must be at least 2");
  std::mt19937_64 rng(opt.seed);
  std::vector<CheckReport> rows;
  auto sweep = [&](const std::function<CheckReport(int)>& f) {
    for (int n = 2; n <= opt.max_n; ++n) rows.push_back(f(n));
  };
  sweep(check_differential_formulas);
  sweep(check_kernel_basis);
  sweep(check_h1_fn);
  sweep([&](int n) { return check_integral_basis(n, rng, 10); });
  sweep(check_lkb_matrices);
  sweep(check_chain_and_homology_action);
  sweep(check_not_in_v);
  sweep(check_eigen_structure);
  sweep(check_forks);
  sweep(check_h1_action);
  sweep(check_sal_an_quotient);
  sweep([](int n) { return check_arrangement(braid_arrangement(n), "A_" + std::to_string(n)); });
  return rows;
}

}  // namespace lkb
