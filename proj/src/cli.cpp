#include "lkb/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "lkb/verify.hpp"

namespace lkb {

namespace {

struct Options {
  int n = 4;
  std::string format = "text";
  std::string out;
  std::uint64_t seed = 0;
  int max_n = 6;
  std::optional<int> k;
  std::optional<std::string> word;
  std::string input;
  std::string kind = "fn";
  std::string level = "homology";
};

// Thrown for computed results that contradict the expected structure.
struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool json_mode(const Options& o) { return o.format == "json"; }

void emit_json(std::ostream& os, const nlohmann::json& j) { os << j.dump(2) << '\n'; }

void print_matrix(std::ostream& os, const std::string& title, const RingMatrix& m) {
  os << title << '\n' << render_text(m) << '\n';
}

void cmd_rep(const Options& o, std::ostream& os) {
  if (o.word) {
    const RingMatrix m = lkb_word(BraidWord::parse(o.n, *o.word));
    if (json_mode(o)) return emit_json(os, {{"n", o.n}, {"matrix", to_json(m)}});
    return print_matrix(os, "word \"" + *o.word + "\", n = " + std::to_string(o.n), m);
  }
  std::vector<int> ks;
  if (o.k) ks.push_back(*o.k);
  else
    for (int k = 1; k < o.n; ++k) ks.push_back(k);
  nlohmann::json all = nlohmann::json::array();
  for (int k : ks) {
    const RingMatrix m = lkb_generator(k, o.n);
    if (json_mode(o)) all.push_back({{"n", o.n}, {"k", k}, {"matrix", to_json(m)}});
    else print_matrix(os, "rho_" + std::to_string(k) + ", n = " + std::to_string(o.n), m);
  }
  if (json_mode(o)) emit_json(os, o.k ? all[0] : nlohmann::json{{"n", o.n}, {"generators", all}});
}

void cmd_complex(const Options& o, std::ostream& os) {
  if (o.kind == "an") {
    const CwComplex cw = sal_an_mod_sigma2(o.n);
    const bool closes = cw.all_words_close();
    if (json_mode(o)) {
      nlohmann::json j = to_json(cw);
      j["n"] = o.n;
      j["words_close"] = closes;
      emit_json(os, j);
    } else {
      os << "Sal(A_" << o.n << ")/Sigma_2: " << cw.vertices.size() << " vertices, " << cw.edges.size() << " edges, "
         << cw.faces.size() << " 2-cells\n";
      for (const auto& e : cw.edges)
        os << "  " << std::left << std::setw(12) << e.to_string() << cw.source.at(e).to_string() << " -> "
           << cw.target.at(e).to_string() << '\n';
      for (const auto& f : cw.faces) os << "  d " << f.to_string() << " = " << to_string(cw.boundary.at(f)) << '\n';
      os << "boundary words close: " << (closes ? "yes" : "no") << '\n';
    }
    if (!closes) throw VerificationFailure("a boundary word of Sal(A_n)/Sigma_2 does not close");
    return;
  }
  if (o.kind != "fn") throw std::invalid_argument("--kind must be fn or an");
  const TwistedComplex& tc = sal_fn_cached(o.n);
  if (json_mode(o)) return emit_json(os, to_json(tc));
  os << "Sal(F_" << o.n << "): 1 vertex, " << tc.cells1.size() << " edges, " << tc.cells2.size() << " 2-cells\n";
  os << "pi: a_i, b_i -> x; c_i -> y\n";
  for (const auto& f : tc.cells2) os << "  d " << f.to_string() << " = " << tc.differential(chain(2, {{f, 1}})).to_string() << '\n';
}

void cmd_homology(const Options& o, std::ostream& os) {
  const int n = o.n;
  const KernelReport k = kernel_rank(n);
  const EtaReport eta = verify_eta_triangular(n);
  const H1Report h1 = h1_fn(n);
  std::vector<std::pair<IndexPair, TwistedChain>> basis;
  for (const auto& [i, j] : index_pairs(n)) basis.push_back({{i, j}, integral_x(i, j, n)});
  const std::size_t expected = static_cast<std::size_t>(n * (n - 1) / 2);
  const bool ok = k.dimension == expected && k.e_spans && k.e_independent && eta.triangular && eta.diagonal_nonzero &&
                  h1.rank == static_cast<std::size_t>(n + 1) && h1.torsion.empty() && h1.c_relations && h1.b_relations;
  if (json_mode(o)) {
    nlohmann::json torsion = nlohmann::json::array();
    for (const auto& t : h1.torsion) torsion.push_back(t.get_str());
    nlohmann::json xs = nlohmann::json::array();
    for (const auto& [p, u] : basis) xs.push_back({{"i", p.first}, {"j", p.second}, {"chain", to_json(u)}});
    emit_json(os, {{"n", n},
                   {"kernel_rank", k.dimension},
                   {"e_spans_kernel", k.e_spans},
                   {"eta_triangular", eta.triangular && eta.diagonal_nonzero},
                   {"h1", {{"rank", h1.rank}, {"torsion", torsion}, {"c_relations", h1.c_relations}, {"b_relations", h1.b_relations}}},
                   {"integral_basis", xs}});
  } else {
    os << "n = " << n << '\n';
    os << "dim ker d over Q(x,y): " << k.dimension << " (E_ij " << (k.e_spans ? "span" : "do not span") << ")\n";
    os << "eta o d on B-cells: " << (eta.triangular ? "triangular" : "not triangular") << ", diagonal "
       << (eta.diagonal_nonzero ? "nonzero" : "has zeros") << '\n';
    os << "H_1(Sal(F_n); Z): rank " << h1.rank << ", torsion " << (h1.torsion.empty() ? "none" : "present")
       << ", [c_i]=[c_1] " << (h1.c_relations ? "yes" : "no") << ", [b_i]=[a_i] " << (h1.b_relations ? "yes" : "no")
       << '\n';
    os << "integral basis:\n";
    for (const auto& [p, u] : basis) os << "  X_" << p.first << "," << p.second << " = " << u.to_string() << '\n';
  }
  if (!ok) throw VerificationFailure("homology checks failed for n = " + std::to_string(n));
}

void cmd_action(const Options& o, std::ostream& os) {
  const ActionLevel level = parse_level(o.level);
  std::vector<int> ks;
  if (o.k) ks.push_back(*o.k);
  else
    for (int k = 1; k < o.n; ++k) ks.push_back(k);
  nlohmann::json gens = nlohmann::json::array();
  for (int k : ks) {
    nlohmann::json entry{{"k", k}};
    switch (level) {
      case ActionLevel::Matrix:
        entry["matrix"] = to_json(lkb_generator(k, o.n));
        if (!json_mode(o)) print_matrix(os, "rho_" + std::to_string(k), lkb_generator(k, o.n));
        break;
      case ActionLevel::Chain: {
        const ChainEndo s = chain_action(k, o.n);
        entry["c2"] = to_json(s.c2);
        entry["c1"] = to_json(s.c1);
        if (!json_mode(o)) {
          print_matrix(os, "S_" + std::to_string(k) + " on C_2", s.c2);
          print_matrix(os, "S_" + std::to_string(k) + " on C_1", s.c1);
        }
        break;
      }
      case ActionLevel::Homology:
        entry["matrix"] = to_json(homology_action(k, o.n));
        if (!json_mode(o)) print_matrix(os, "sigma_" + std::to_string(k) + " on E", homology_action(k, o.n));
        break;
      case ActionLevel::Fork:
        entry["matrix"] = to_json(fork_basis_action(k, o.n));
        if (!json_mode(o)) print_matrix(os, "sigma_" + std::to_string(k) + " on forks", fork_basis_action(k, o.n));
        break;
    }
    const IntMatrix h1 = h1_action(k, o.n);
    if (json_mode(o)) {
      nlohmann::json rows = nlohmann::json::array();
      for (std::size_t r = 0; r < h1.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < h1.cols(); ++c) row.push_back(h1(r, c).get_str());
        rows.push_back(row);
      }
      entry["h1"] = {{"labels", h1.row_labels()}, {"entries", rows}};
    } else {
      os << "sigma_" << k << " on H_1\n" << render_text(h1) << '\n';
    }
    gens.push_back(entry);
  }
  const CheckReport rel = check_braid_relations(o.n, level);
  if (json_mode(o)) emit_json(os, {{"n", o.n}, {"level", o.level}, {"generators", gens}, {"relations", to_json(rel)}});
  else os << "braid relations at " << o.level << " level: " << (rel.passed ? "hold" : "FAIL") << " (" << rel.detail << ")\n";
  if (!rel.passed) throw VerificationFailure("braid relations fail at " + o.level + " level");
}

void cmd_fork(const Options& o, std::ostream& os) {
  const int n = o.n;
  std::vector<CheckReport> bounds;
  for (int p = 1; p <= n; ++p)
    for (int q = p + 2; q <= n; ++q) bounds.push_back(verify_fork_boundary(p, q, n));
  const RingMatrix P = fork_change_of_basis(n);
  const CheckReport rel = check_braid_relations(n, ActionLevel::Fork);
  bool ok = rel.passed;
  for (const auto& b : bounds) ok = ok && b.passed;
  if (json_mode(o)) {
    nlohmann::json bs = nlohmann::json::array(), gens = nlohmann::json::array();
    for (const auto& b : bounds) bs.push_back(to_json(b));
    for (int k = 1; k < n; ++k) gens.push_back({{"k", k}, {"matrix", to_json(fork_basis_action(k, n))}});
    emit_json(os, {{"n", n}, {"boundary_checks", bs}, {"change_of_basis", to_json(P)}, {"generators", gens}, {"relations", to_json(rel)}});
  } else {
    for (const auto& b : bounds) os << "dX2 = (x-1)^2(xy+1) dX1 at " << b.detail << ": " << (b.passed ? "holds" : "FAILS") << '\n';
    print_matrix(os, "fork classes in E-coordinates", P);
    for (int k = 1; k < n; ++k) print_matrix(os, "sigma_" + std::to_string(k) + " on forks", fork_basis_action(k, n));
    os << "braid relations in the fork basis: " << (rel.passed ? "hold" : "FAIL") << '\n';
  }
  if (!ok) throw VerificationFailure("fork checks failed");
}

void cmd_arrangement(const Options& o, std::ostream& os) {
  std::ifstream in(o.input);
  if (!in) throw std::invalid_argument("cannot read " + o.input);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::vector<Line> lines = parse_arrangement(buf.str());
  const FacetComplex fc = build_facets(lines);
  const SalvettiComplex sc = build_salvetti(fc);
  const SalvettiH1 h1 = salvetti_h1(sc);
  const bool closes = sc.cw.all_words_close();
  if (json_mode(o)) {
    nlohmann::json torsion = nlohmann::json::array();
    for (const auto& t : h1.torsion) torsion.push_back(t.get_str());
    emit_json(os, {{"lines", lines.size()},
                   {"facets", {{"vertices", fc.vertices.size()}, {"edges", fc.edges.size()}, {"chambers", fc.chambers.size()}}},
                   {"salvetti", to_json(sc)},
                   {"h1", {{"rank", h1.rank}, {"torsion", torsion}, {"meridians", h1.meridian_matches_line}}},
                   {"words_close", closes}});
  } else {
    os << "lines " << lines.size() << '\n';
    os << "facets: vertices " << fc.vertices.size() << ", edges " << fc.edges.size() << ", chambers "
       << fc.chambers.size() << '\n';
    os << "Sal: vertices " << sc.cw.vertices.size() << ", edges " << sc.cw.edges.size() << ", 2-cells "
       << sc.cw.faces.size() << '\n';
    os << "chambers " << fc.chambers.size() << ", edges(Sal) " << sc.cw.edges.size() << ", H1 rank " << h1.rank;
    if (!h1.torsion.empty()) {
      os << ", torsion";
      for (const auto& t : h1.torsion) os << ' ' << t.get_str();
    }
    os << '\n';
  }
  if (!closes) throw VerificationFailure("a Salvetti boundary word does not close");
}

int cmd_verify(const Options& o, std::ostream& os) {
  const std::vector<CheckReport> rows = run_verify_suite({o.max_n, o.seed});
  const CheckReport* first_failure = nullptr;
  for (const auto& r : rows)
    if (!r.passed && !first_failure) first_failure = &r;
  if (json_mode(o)) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& r : rows) checks.push_back(to_json(r));
    emit_json(os, {{"max_n", o.max_n}, {"seed", o.seed}, {"passed", first_failure == nullptr}, {"checks", checks}});
  } else {
    std::size_t width = 5;
    for (const auto& r : rows) width = std::max(width, r.check.size());
    for (const auto& r : rows) {
      const bool na = r.detail.rfind("not applicable", 0) == 0;
      os << std::left << std::setw(static_cast<int>(width) + 2) << r.check << "n=" << std::setw(3) << r.n
         << std::setw(6) << (na ? "N/A" : r.passed ? "PASS" : "FAIL") << r.detail << '\n';
    }
    os << (first_failure ? "FAILED" : "all checks passed") << '\n';
    if (first_failure && first_failure->witness) os << "witness: " << first_failure->witness->dump(2) << '\n';
  }
  return first_failure ? 1 : 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact computations with the Lawrence-Krammer-Bigelow representation and Salvetti complexes", "lkb"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--n", o.n, "strand count")->check(CLI::Range(2, 64));
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--out", o.out, "output file (default: standard output)");
  app.add_option("--seed", o.seed, "seed for randomized checks");
  app.add_option("--max-n", o.max_n, "largest n in verify sweeps")->check(CLI::Range(2, 64));

  auto* rep = app.add_subcommand("rep", "LKB generator matrices or the matrix of a braid word");
  rep->add_option("--k", o.k, "generator index");
  rep->add_option("--word", o.word, "braid word such as \"1 2 -1\"");
  auto* cx = app.add_subcommand("complex", "the complexes Sal(F_n) and Sal(A_n)/Sigma_2");
  cx->add_option("--kind", o.kind, "fn or an")->check(CLI::IsMember({"fn", "an"}));
  app.add_subcommand("homology", "kernel, integral basis and H_1");
  auto* act = app.add_subcommand("action", "braid group action on chains and homology");
  act->add_option("--k", o.k, "generator index");
  act->add_option("--level", o.level, "matrix, chain, homology or fork")
      ->check(CLI::IsMember({"matrix", "chain", "homology", "fork"}));
  app.add_subcommand("fork", "fork classes and the fork basis");
  auto* arr = app.add_subcommand("arrangement", "Salvetti complex of a line arrangement");
  arr->add_option("--input", o.input, "arrangement JSON file")->required();
  app.add_subcommand("verify", "run every check for n = 2..max-n");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return 2;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  std::ostringstream buf;
  int code = 0;
  try {
    if (o.k && (*o.k < 1 || *o.k > o.n - 1)) throw std::invalid_argument("--k must lie in 1..n-1");
    if (cmd == "rep") cmd_rep(o, buf);
    else if (cmd == "complex") cmd_complex(o, buf);
    else if (cmd == "homology") cmd_homology(o, buf);
    else if (cmd == "action") cmd_action(o, buf);
    else if (cmd == "fork") cmd_fork(o, buf);
    else if (cmd == "arrangement") cmd_arrangement(o, buf);
    else code = cmd_verify(o, buf);
  } catch (const VerificationFailure& e) {
    err << "verification failed: " << e.what() << '\n';
    code = 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "verification failed: " << e.what() << '\n';
    code = 1;
  }

  if (o.out.empty()) {
    out << buf.str();
  } else {
    std::ofstream file(o.out);
    if (!(file << buf.str())) {
      err << "error: cannot write " << o.out << '\n';
      return 2;
    }
  }
  return code;
}

}  // namespace lkb
