#include "lkb/arrangement.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

namespace lkb {

Line Line::make(const Rational& a, const Rational& b, const Rational& c) {
  if (a == 0 && b == 0) throw ArrangementInputError("line with a = b = 0");
  Integer l = 1;
  for (const Rational* q : {&a, &b, &c}) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q->get_den_mpz_t());
  Line line;
  line.a = Rational(a * l).get_num();
  line.b = Rational(b * l).get_num();
  line.c = Rational(c * l).get_num();
  Integer g = 0;
  for (const Integer* v : {&line.a, &line.b, &line.c}) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v->get_mpz_t());
  line.a /= g;
  line.b /= g;
  line.c /= g;
  if (line.a < 0 || (line.a == 0 && line.b < 0)) {
    line.a = -line.a;
    line.b = -line.b;
    line.c = -line.c;
  }
  return line;
}

int Line::side(const Rational& x1, const Rational& x2) const {
  return sgn(Rational(a) * x1 + Rational(b) * x2 - Rational(c));
}

std::string Line::to_string() const {
  return a.get_str() + "*x1 + " + b.get_str() + "*x2 = " + c.get_str();
}

bool facet_leq(const SignVector& f, const SignVector& g) {
  if (f.size() != g.size()) return false;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] != 0 && f[i] != g[i]) return false;
  return true;
}

namespace {

SignVector sign_at(const std::vector<Line>& lines, const Point& p) {
  SignVector s(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) s[i] = static_cast<std::int8_t>(lines[i].side(p.x1, p.x2));
  return s;
}

template <class Facet>
std::size_t index_by_sign(const std::vector<Facet>& list, const SignVector& s, const char* what) {
  auto it = std::lower_bound(list.begin(), list.end(), s, [](const Facet& f, const SignVector& v) { return f.sign < v; });
  if (it == list.end() || it->sign != s) throw std::out_of_range(std::string("no ") + what + " with that sign vector");
  return static_cast<std::size_t>(it - list.begin());
}

// Counterclockwise angle comparison of two nonzero direction vectors,
// starting from the positive x1-axis.
bool angle_less(const Point& u, const Point& v) {
  auto half = [](const Point& p) { return (p.x2 > 0 || (p.x2 == 0 && p.x1 > 0)) ? 0 : 1; };
  const int hu = half(u), hv = half(v);
  if (hu != hv) return hu < hv;
  return u.x1 * v.x2 - u.x2 * v.x1 > 0;
}

Rational parse_rational(const std::string& s, const std::string& where) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  const std::size_t num_start = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  bool ok = i > num_start;
  if (ok && i < s.size() && s[i] == '/') {
    const std::size_t den_start = ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    ok = i > den_start;
  }
  if (!ok || i != s.size()) throw ArrangementInputError(where + ": '" + s + "' is not a rational of the form p or p/q");
  std::string clean = s[0] == '+' ? s.substr(1) : s;
  Rational q(clean);
  if (q.get_den() == 0) throw ArrangementInputError(where + ": zero denominator");
  q.canonicalize();
  return q;
}

}  // namespace

std::size_t FacetComplex::chamber_index(const SignVector& s) const { return index_by_sign(chambers, s, "chamber"); }
std::size_t FacetComplex::edge_index(const SignVector& s) const { return index_by_sign(edges, s, "edge"); }

FacetComplex build_facets(const std::vector<Line>& lines) {
  FacetComplex fc;
  fc.lines = lines;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].a == 0 && lines[i].b == 0) throw ArrangementInputError("line " + std::to_string(i) + " is degenerate");
    for (std::size_t j = 0; j < i; ++j)
      if (lines[i] == lines[j])
        throw ArrangementInputError("lines " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
  }

  // vertices: distinct pairwise intersections
  std::vector<Point> points;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const Line& l = lines[i];
      const Line& m = lines[j];
      const Integer det = l.a * m.b - l.b * m.a;
      if (det == 0) continue;
      Point p{Rational(l.c * m.b - l.b * m.c, det), Rational(l.a * m.c - l.c * m.a, det)};
      p.x1.canonicalize();
      p.x2.canonicalize();
      if (std::find(points.begin(), points.end(), p) == points.end()) points.push_back(p);
    }
  for (const auto& p : points) {
    FacetVertex v{p, sign_at(lines, p), {}};
    for (std::size_t i = 0; i < lines.size(); ++i)
      if (v.sign[i] == 0) v.lines.push_back(i);
    fc.vertices.push_back(std::move(v));
  }
  std::sort(fc.vertices.begin(), fc.vertices.end(), [](const auto& u, const auto& v) { return u.sign < v.sign; });

  // edges: pieces of each line between consecutive vertices
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const Line& l = lines[li];
    const Point dir{Rational(-l.b), Rational(l.a)};
    auto param = [&](const Point& p) { return Rational(dir.x1 * p.x1 + dir.x2 * p.x2); };
    std::vector<std::size_t> on;
    for (std::size_t v = 0; v < fc.vertices.size(); ++v)
      if (fc.vertices[v].sign[li] == 0) on.push_back(v);
    std::sort(on.begin(), on.end(),
              [&](std::size_t u, std::size_t v) { return param(fc.vertices[u].point) < param(fc.vertices[v].point); });

    auto push_edge = [&](const Point& p, std::vector<std::size_t> ends) {
      fc.edges.push_back({li, p, sign_at(lines, p), std::move(ends)});
    };
    if (on.empty()) {
      const Rational norm2 = Rational(l.a * l.a + l.b * l.b);
      push_edge({Rational(l.c * l.a) / norm2, Rational(l.c * l.b) / norm2}, {});
      continue;
    }
    const Point& first = fc.vertices[on.front()].point;
    const Point& last = fc.vertices[on.back()].point;
    push_edge({first.x1 - dir.x1, first.x2 - dir.x2}, {on.front()});
    for (std::size_t k = 0; k + 1 < on.size(); ++k) {
      const Point& p = fc.vertices[on[k]].point;
      const Point& q = fc.vertices[on[k + 1]].point;
      push_edge({(p.x1 + q.x1) / 2, (p.x2 + q.x2) / 2}, {on[k], on[k + 1]});
    }
    push_edge({last.x1 + dir.x1, last.x2 + dir.x2}, {on.back()});
  }
  std::sort(fc.edges.begin(), fc.edges.end(), [](const auto& u, const auto& v) { return u.sign < v.sign; });

  // chambers: push each edge's representative off its carrier on both sides
  Integer max_coeff = 0;
  for (const auto& l : lines)
    for (const Integer* v : {&l.a, &l.b, &l.c})
      if (abs(*v) > max_coeff) max_coeff = abs(*v);
  const Rational eps0(Integer(1), 4 * (1 + max_coeff) * (1 + static_cast<long>(lines.size())));
  std::map<SignVector, Point> found;
  if (lines.empty()) found.emplace(SignVector{}, Point{0, 0});
  for (const auto& e : fc.edges) {
    const Line& l = lines[e.line];
    for (int side : {-1, 1}) {
      SignVector want = e.sign;
      want[e.line] = static_cast<std::int8_t>(side);
      Rational eps = eps0;
      Point p;
      for (;;) {
        p = {e.point.x1 + side * eps * Rational(l.a), e.point.x2 + side * eps * Rational(l.b)};
        if (sign_at(lines, p) == want) break;
        eps /= 2;
      }
      found.emplace(want, p);
    }
  }
  for (auto& [s, p] : found) fc.chambers.push_back({p, s});
  return fc;
}

std::vector<std::size_t> cyclic_order_at_vertex(const FacetComplex& fc, std::size_t vertex) {
  const FacetVertex& v = fc.vertices.at(vertex);
  std::vector<std::size_t> around;
  for (std::size_t c = 0; c < fc.chambers.size(); ++c)
    if (facet_leq(v.sign, fc.chambers[c].sign)) around.push_back(c);
  auto dir = [&](std::size_t c) {
    return Point{fc.chambers[c].point.x1 - v.point.x1, fc.chambers[c].point.x2 - v.point.x2};
  };
  std::sort(around.begin(), around.end(), [&](std::size_t a, std::size_t b) { return angle_less(dir(a), dir(b)); });
  // chambers are sorted by sign vector, so the smallest index is the start
  auto start = std::min_element(around.begin(), around.end());
  std::rotate(around.begin(), start, around.end());
  if (around.size() != 2 * v.lines.size())
    throw std::logic_error("cyclic_order_at_vertex: expected two chambers per line through the vertex");
  return around;
}

SalvettiComplex build_salvetti(const FacetComplex& fc) {
  SalvettiComplex sc;
  sc.facets = fc;
  CwComplex& cw = sc.cw;
  auto w = [](std::size_t k) { return CellLabel{CellKind::GenVertex, static_cast<int>(k + 1)}; };
  auto e = [](std::size_t k) { return CellLabel{CellKind::GenEdge, static_cast<int>(k + 1)}; };
  for (std::size_t k = 0; k < fc.chambers.size(); ++k) cw.vertices.push_back(w(k));

  // directed edge whose source is chamber `from`, across edge facet m
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> directed;
  for (std::size_t m = 0; m < fc.edges.size(); ++m) {
    const auto& f = fc.edges[m];
    SignVector sc_sign = f.sign, sd_sign = f.sign;
    sc_sign[f.line] = -1;
    sd_sign[f.line] = 1;
    const std::size_t c = fc.chamber_index(sc_sign);
    const std::size_t d = fc.chamber_index(sd_sign);
    for (auto [k, from, to] : {std::tuple{2 * m, c, d}, std::tuple{2 * m + 1, d, c}}) {
      cw.edges.push_back(e(k));
      cw.source[e(k)] = w(from);
      cw.target[e(k)] = w(to);
      sc.edge_facet.push_back(m);
      sc.edge_carrier.push_back(f.line);
      directed[{m, from}] = k;
    }
  }

  auto step = [&](std::size_t from, std::size_t to) {
    SignVector s = fc.chambers[from].sign;
    const SignVector& t = fc.chambers[to].sign;
    std::size_t diff = s.size();
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i] != t[i]) {
        if (diff != s.size()) throw std::logic_error("build_salvetti: consecutive chambers differ in two lines");
        diff = i;
      }
    s[diff] = 0;
    return e(directed.at({fc.edge_index(s), from}));
  };

  for (std::size_t v = 0; v < fc.vertices.size(); ++v) {
    const auto ring = cyclic_order_at_vertex(fc, v);
    const std::size_t len = ring.size(), half = len / 2;
    for (std::size_t s = 0; s < len; ++s) {
      EdgeWord word;
      for (std::size_t i = 1; i <= half; ++i) word.push_back({step(ring[(s + i - 1) % len], ring[(s + i) % len]), 1});
      for (std::size_t i = half; i >= 1; --i)
        word.push_back({step(ring[(s + len - i + 1) % len], ring[(s + len - i) % len]), -1});
      const CellLabel face{CellKind::GenFace, static_cast<int>(cw.faces.size() + 1)};
      cw.faces.push_back(face);
      cw.boundary[face] = std::move(word);
      sc.face_origin.push_back({v, ring[s]});
    }
  }
  return sc;
}

SalvettiH1 salvetti_h1(const SalvettiComplex& sc) {
  const IntMatrix d1 = sc.cw.boundary1();
  const IntMatrix d2 = sc.cw.boundary2();
  const SmithForm s1 = int_smith(d1);
  const SmithForm s2 = int_smith(d2);
  SalvettiH1 out;
  out.rank = sc.cw.edges.size() - s1.rank - s2.rank;
  for (const auto& f : s2.invariant_factors)
    if (f != 1) out.torsion.push_back(f);

  const std::size_t facets = sc.facets.edges.size();
  std::vector<std::size_t> first_on_line(sc.facets.lines.size(), facets);
  for (std::size_t m = 0; m < facets; ++m)
    if (first_on_line[sc.facets.edges[m].line] == facets) first_on_line[sc.facets.edges[m].line] = m;
  for (std::size_t m = 0; m < facets; ++m) {
    const std::size_t base = first_on_line[sc.facets.edges[m].line];
    std::vector<Integer> v(sc.cw.edges.size(), 0);
    v[2 * m] += 1;
    v[2 * m + 1] += 1;
    v[2 * base] -= 1;
    v[2 * base + 1] -= 1;
    out.meridian_matches_line.push_back(int_in_column_lattice(d2, v));
  }
  return out;
}

TwistedComplex salvetti_twisted_complex(const SalvettiComplex& sc, const std::vector<Poly>& line_weights) {
  if (line_weights.size() != sc.facets.lines.size())
    throw std::invalid_argument("salvetti_twisted_complex: one weight per line is required");
  TwistedComplex tc;
  tc.cells0 = sc.cw.vertices;
  tc.cells1 = sc.cw.edges;
  tc.cells2 = sc.cw.faces;
  tc.source = sc.cw.source;
  tc.target = sc.cw.target;
  tc.boundary = sc.cw.boundary;
  for (std::size_t k = 0; k < tc.cells1.size(); ++k) tc.pi[tc.cells1[k]] = line_weights[sc.edge_carrier[k]];
  assemble_differentials(tc);
  return tc;
}

std::vector<Line> parse_arrangement(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ArrangementInputError(std::string("arrangement JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("lines") || !j["lines"].is_array())
    throw ArrangementInputError("arrangement JSON: expected an object with a \"lines\" array");
  std::vector<Line> lines;
  for (std::size_t i = 0; i < j["lines"].size(); ++i) {
    const auto& entry = j["lines"][i];
    const std::string where = "lines[" + std::to_string(i) + "]";
    if (!entry.is_object()) throw ArrangementInputError(where + ": expected an object");
    Rational coeff[3];
    const char* names[3] = {"a", "b", "c"};
    for (int k = 0; k < 3; ++k) {
      const std::string field = where + "." + names[k];
      if (!entry.contains(names[k])) throw ArrangementInputError(field + ": missing");
      const auto& v = entry[names[k]];
      if (v.is_string()) {
        coeff[k] = parse_rational(v.get<std::string>(), field);
      } else if (v.is_number_integer()) {
        coeff[k] = Rational(v.get<long>());
      } else {
        throw ArrangementInputError(field + ": expected a string such as \"3/2\"");
      }
    }
    if (coeff[0] == 0 && coeff[1] == 0) throw ArrangementInputError(where + ": a and b are both zero");
    Line line = Line::make(coeff[0], coeff[1], coeff[2]);
    for (std::size_t k = 0; k < lines.size(); ++k)
      if (lines[k] == line) throw ArrangementInputError(where + ": duplicates lines[" + std::to_string(k) + "]");
    lines.push_back(line);
  }
  return lines;
}

nlohmann::json to_json(const SalvettiComplex& sc) {
  nlohmann::json j = to_json(sc.cw);
  nlohmann::json lines = nlohmann::json::array();
  for (const auto& l : sc.facets.lines) lines.push_back({{"a", l.a.get_str()}, {"b", l.b.get_str()}, {"c", l.c.get_str()}});
  j["lines"] = lines;
  for (std::size_t k = 0; k < sc.edge_carrier.size(); ++k) j["edges"][k]["carrier"] = sc.edge_carrier[k];
  for (std::size_t t = 0; t < sc.face_origin.size(); ++t) {
    j["faces"][t]["vertex_facet"] = sc.face_origin[t].vertex;
    j["faces"][t]["chamber"] = sc.face_origin[t].chamber;
  }
  return j;
}

std::vector<Line> braid_arrangement(int n) {
  std::vector<Line> lines;
  for (int t = 1; t <= n; ++t) lines.push_back(Line::make(1, 0, t));
  for (int t = 1; t <= n; ++t) lines.push_back(Line::make(0, 1, t));
  lines.push_back(Line::make(1, -1, 0));
  return lines;
}

}  // namespace lkb
