#include "lkb/complex.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace lkb {

int CellLabel::dimension() const {
  switch (kind) {
    case CellKind::Vertex:
    case CellKind::P:
    case CellKind::GenVertex:
      return 0;
    case CellKind::C:
    case CellKind::A1:
    case CellKind::B1:
    case CellKind::aE:
    case CellKind::abarE:
    case CellKind::bE:
    case CellKind::bbarE:
    case CellKind::cE:
    case CellKind::GenEdge:
      return 1;
    default:
      return 2;
  }
}

std::string CellLabel::to_string() const {
  auto two = [&](const char* p) { return std::string(p) + std::to_string(i) + "," + std::to_string(j); };
  auto one = [&](const char* p) { return std::string(p) + std::to_string(i); };
  switch (kind) {
    case CellKind::Vertex: return "*";
    case CellKind::C: return one("c_");
    case CellKind::A1: return one("a_");
    case CellKind::B1: return one("b_");
    case CellKind::A2: return two("A_");
    case CellKind::B2: return "B_" + std::to_string(i) + "," + std::to_string(r);
    case CellKind::P: return two("P_");
    case CellKind::aE: return two("a_");
    case CellKind::abarE: return two("abar_");
    case CellKind::bE: return two("b_");
    case CellKind::bbarE: return two("bbar_");
    case CellKind::cE: return one("c_");
    case CellKind::A4: return two("A_") + "," + std::to_string(r);
    case CellKind::B4: return "B_" + std::to_string(i) + "," + std::to_string(r);
    case CellKind::GenVertex: return one("w_");
    case CellKind::GenEdge: return one("e_");
    case CellKind::GenFace: return one("f_");
  }
  return "?";
}

EdgeWord inverse(const EdgeWord& w) {
  EdgeWord out(w.rbegin(), w.rend());
  for (auto& l : out) l.sign = -l.sign;
  return out;
}

EdgeWord concat(EdgeWord a, const EdgeWord& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::string to_string(const EdgeWord& w) {
  std::string s;
  for (const auto& l : w) {
    if (!s.empty()) s += ' ';
    s += l.edge.to_string();
    if (l.sign < 0) s += "^-1";
  }
  return s;
}

namespace {

const Poly& weight_of(const WeightMap& pi, const CellLabel& e) {
  auto it = pi.find(e);
  if (it == pi.end()) throw std::invalid_argument("no weight for edge " + e.to_string());
  return it->second;
}

nlohmann::json word_json(const EdgeWord& w) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& l : w) j.push_back({l.edge.to_string(), l.sign});
  return j;
}

std::vector<std::string> label_strings(const std::vector<CellLabel>& cells) {
  std::vector<std::string> out;
  out.reserve(cells.size());
  for (const auto& c : cells) out.push_back(c.to_string());
  return out;
}

}  // namespace

Poly word_weight(const EdgeWord& w, const WeightMap& pi) {
  Poly p = 1;
  for (const auto& l : w) p *= weight_of(pi, l.edge).pow(l.sign);
  return p;
}

Poly TwistedChain::coefficient(const CellLabel& cell) const {
  auto it = coeffs_.find(cell);
  return it == coeffs_.end() ? Poly() : it->second;
}

void TwistedChain::add(const CellLabel& cell, const Poly& c) {
  if (c.is_zero()) return;
  if (cell.dimension() != degree_)
    throw std::invalid_argument("cell " + cell.to_string() + " has the wrong dimension for a degree " +
                                std::to_string(degree_) + " chain");
  auto [it, inserted] = coeffs_.try_emplace(cell, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

TwistedChain& TwistedChain::operator+=(const TwistedChain& other) {
  if (other.degree_ != degree_) throw std::invalid_argument("adding chains of different degree");
  for (const auto& [cell, c] : other.coeffs_) add(cell, c);
  return *this;
}

TwistedChain& TwistedChain::operator-=(const TwistedChain& other) {
  if (other.degree_ != degree_) throw std::invalid_argument("subtracting chains of different degree");
  for (const auto& [cell, c] : other.coeffs_) add(cell, -c);
  return *this;
}

TwistedChain operator*(const Poly& c, const TwistedChain& u) {
  TwistedChain out(u.degree_);
  if (c.is_zero()) return out;
  for (const auto& [cell, v] : u.coeffs_) out.coeffs_.emplace(cell, c * v);
  return out;
}

std::string TwistedChain::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string s;
  for (const auto& [cell, c] : coeffs_) {
    if (!s.empty()) s += " + ";
    s += "(" + c.to_string() + ")*" + cell.to_string();
  }
  return s;
}

TwistedChain chain(int degree, std::initializer_list<std::pair<CellLabel, Poly>> terms) {
  TwistedChain u(degree);
  for (const auto& [cell, c] : terms) u.add(cell, c);
  return u;
}

nlohmann::json to_json(const TwistedChain& u) {
  nlohmann::json coeffs = nlohmann::json::object();
  for (const auto& [cell, c] : u.coefficients()) coeffs[cell.to_string()] = to_json(c);
  return {{"degree", u.degree()}, {"coefficients", coeffs}};
}

TwistedChain word_to_chain(const EdgeWord& w, const WeightMap& pi) {
  TwistedChain out(1);
  Poly prefix = 1;
  for (const auto& l : w) {
    const Poly& p = weight_of(pi, l.edge);
    if (l.sign > 0) {
      out.add(l.edge, prefix);
      prefix *= p;
    } else {
      prefix *= p.pow(-1);
      out.add(l.edge, -prefix);
    }
  }
  return out;
}

std::size_t TwistedComplex::index1(const CellLabel& e) const {
  auto it = std::find(cells1.begin(), cells1.end(), e);
  if (it == cells1.end()) throw std::invalid_argument("edge " + e.to_string() + " is not in the complex");
  return static_cast<std::size_t>(it - cells1.begin());
}

std::size_t TwistedComplex::index2(const CellLabel& f) const {
  auto it = std::find(cells2.begin(), cells2.end(), f);
  if (it == cells2.end()) throw std::invalid_argument("2-cell " + f.to_string() + " is not in the complex");
  return static_cast<std::size_t>(it - cells2.begin());
}

TwistedChain TwistedComplex::differential(const TwistedChain& u) const {
  if (u.degree() == 2) {
    TwistedChain out(1);
    for (const auto& [cell, c] : u.coefficients()) {
      const std::size_t col = index2(cell);
      for (std::size_t i = 0; i < cells1.size(); ++i)
        if (!d2(i, col).is_zero()) out.add(cells1[i], c * d2(i, col));
    }
    return out;
  }
  if (u.degree() == 1) {
    TwistedChain out(0);
    for (const auto& [cell, c] : u.coefficients()) {
      const std::size_t col = index1(cell);
      for (std::size_t i = 0; i < cells0.size(); ++i)
        if (!d1(i, col).is_zero()) out.add(cells0[i], c * d1(i, col));
    }
    return out;
  }
  throw std::invalid_argument("differential: degree 0 chains have zero boundary");
}

void assemble_differentials(TwistedComplex& tc) {
  tc.d1 = RingMatrix(tc.cells0.size(), tc.cells1.size());
  for (std::size_t j = 0; j < tc.cells1.size(); ++j) {
    const CellLabel& e = tc.cells1[j];
    const auto s = std::find(tc.cells0.begin(), tc.cells0.end(), tc.source.at(e)) - tc.cells0.begin();
    const auto t = std::find(tc.cells0.begin(), tc.cells0.end(), tc.target.at(e)) - tc.cells0.begin();
    tc.d1(static_cast<std::size_t>(t), j) += weight_of(tc.pi, e);
    tc.d1(static_cast<std::size_t>(s), j) -= 1;
  }
  tc.d2 = RingMatrix(tc.cells1.size(), tc.cells2.size());
  for (std::size_t j = 0; j < tc.cells2.size(); ++j) {
    const TwistedChain col = word_to_chain(tc.boundary.at(tc.cells2[j]), tc.pi);
    for (const auto& [e, c] : col.coefficients()) tc.d2(tc.index1(e), j) = c;
  }
  tc.d1.set_row_labels(label_strings(tc.cells0));
  tc.d1.set_col_labels(label_strings(tc.cells1));
  tc.d2.set_row_labels(label_strings(tc.cells1));
  tc.d2.set_col_labels(label_strings(tc.cells2));
}

TwistedComplex sal_fn(int n) {
  if (n < 2) throw std::invalid_argument("sal_fn: n must be at least 2");
  TwistedComplex tc;
  tc.n = n;
  const CellLabel star = CellLabel::vertex();
  tc.cells0 = {star};
  for (int i = 1; i <= n + 1; ++i) tc.cells1.push_back(CellLabel::c(i));
  for (int i = 1; i <= n; ++i) tc.cells1.push_back(CellLabel::a(i));
  for (int i = 1; i <= n; ++i) tc.cells1.push_back(CellLabel::b(i));
  for (const auto& e : tc.cells1) {
    tc.source[e] = star;
    tc.target[e] = star;
    tc.pi[e] = e.kind == CellKind::C ? Poly::y() : Poly::x();
  }

  auto a = [](int i, int s = 1) { return Letter{CellLabel::a(i), s}; };
  auto b = [](int i, int s = 1) { return Letter{CellLabel::b(i), s}; };
  auto c = [](int i, int s = 1) { return Letter{CellLabel::c(i), s}; };
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      tc.cells2.push_back(CellLabel::A(i, j));
      tc.boundary[CellLabel::A(i, j)] = {b(i), a(j), b(i, -1), a(j, -1)};
    }
  for (int i = 1; i <= n; ++i) {
    tc.cells2.push_back(CellLabel::B(i, 1));
    tc.cells2.push_back(CellLabel::B(i, 2));
    tc.cells2.push_back(CellLabel::B(i, 3));
    tc.boundary[CellLabel::B(i, 1)] = {a(i), c(i + 1), a(i, -1), c(i, -1)};
    tc.boundary[CellLabel::B(i, 2)] = {c(i + 1), b(i), a(i, -1), c(i, -1)};
    tc.boundary[CellLabel::B(i, 3)] = {c(i + 1), b(i), c(i, -1), b(i, -1)};
  }
  assemble_differentials(tc);
  return tc;
}

IntMatrix untwist(const TwistedComplex& tc) { return specialize(tc.d2, 1, 1); }

CellLabel CwComplex::start_vertex(const CellLabel& face) const {
  const EdgeWord& w = boundary.at(face);
  if (w.empty()) throw std::invalid_argument("face with empty boundary");
  return w.front().sign > 0 ? source.at(w.front().edge) : target.at(w.front().edge);
}

bool CwComplex::word_closes(const EdgeWord& w) const {
  if (w.empty()) return true;
  const CellLabel start = w.front().sign > 0 ? source.at(w.front().edge) : target.at(w.front().edge);
  CellLabel at = start;
  for (const auto& l : w) {
    const CellLabel& from = l.sign > 0 ? source.at(l.edge) : target.at(l.edge);
    if (from != at) return false;
    at = l.sign > 0 ? target.at(l.edge) : source.at(l.edge);
  }
  return at == start;
}

bool CwComplex::all_words_close() const {
  return std::all_of(faces.begin(), faces.end(), [&](const CellLabel& f) { return word_closes(boundary.at(f)); });
}

IntMatrix CwComplex::boundary1() const {
  IntMatrix m(vertices.size(), edges.size());
  auto vpos = [&](const CellLabel& v) {
    return static_cast<std::size_t>(std::find(vertices.begin(), vertices.end(), v) - vertices.begin());
  };
  for (std::size_t j = 0; j < edges.size(); ++j) {
    m(vpos(target.at(edges[j])), j) += 1;
    m(vpos(source.at(edges[j])), j) -= 1;
  }
  return m;
}

IntMatrix CwComplex::boundary2() const {
  IntMatrix m(edges.size(), faces.size());
  for (std::size_t j = 0; j < faces.size(); ++j)
    for (const auto& l : boundary.at(faces[j])) {
      const auto i = std::find(edges.begin(), edges.end(), l.edge) - edges.begin();
      m(static_cast<std::size_t>(i), j) += l.sign;
    }
  return m;
}

CwComplex sal_an_mod_sigma2(int n) {
  if (n < 2) throw std::invalid_argument("sal_an_mod_sigma2: n must be at least 2");
  CwComplex cw;
  auto P = [](int i, int j) { return CellLabel{CellKind::P, i, j}; };
  auto lab = [](CellKind k, int i, int j = 0) { return CellLabel{k, i, j}; };
  for (int i = 1; i <= n + 1; ++i)
    for (int j = i; j <= n + 1; ++j) cw.vertices.push_back(P(i, j));

  for (int i = 1; i <= n + 1; ++i) {
    const CellLabel c = lab(CellKind::cE, i);
    cw.edges.push_back(c);
    cw.source[c] = cw.target[c] = P(i, i);
  }
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      const CellLabel a = lab(CellKind::aE, i, j), abar = lab(CellKind::abarE, i, j);
      const CellLabel b = lab(CellKind::bE, i, j), bbar = lab(CellKind::bbarE, i, j);
      cw.edges.insert(cw.edges.end(), {a, abar, b, bbar});
      cw.source[a] = cw.target[abar] = P(i, j);
      cw.source[abar] = cw.target[a] = P(i, j + 1);
      cw.source[b] = cw.target[bbar] = P(i + 1, j + 1);
      cw.source[bbar] = cw.target[b] = P(i, j + 1);
    }
  std::sort(cw.edges.begin(), cw.edges.end());

  auto L = [&](CellKind k, int i, int j, int s = 1) { return Letter{lab(k, i, j), s}; };
  auto C = [&](int i, int s = 1) { return Letter{lab(CellKind::cE, i), s}; };
  using K = CellKind;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      const CellLabel f1{K::A4, i, j, 1}, f2{K::A4, i, j, 2}, f3{K::A4, i, j, 3}, f4{K::A4, i, j, 4};
      cw.faces.insert(cw.faces.end(), {f1, f2, f3, f4});
      // (b_{i,j-1} a_ij)(a_{i+1,j} b_ij)^{-1}
      cw.boundary[f1] = {L(K::bE, i, j - 1), L(K::aE, i, j), L(K::bE, i, j, -1), L(K::aE, i + 1, j, -1)};
      // (abar_{i+1,j} b_{i,j-1})(b_ij abar_ij)^{-1}
      cw.boundary[f2] = {L(K::abarE, i + 1, j), L(K::bE, i, j - 1), L(K::abarE, i, j, -1), L(K::bE, i, j, -1)};
      // (a_ij bbar_ij)(bbar_{i,j-1} a_{i+1,j})^{-1}
      cw.boundary[f3] = {L(K::aE, i, j), L(K::bbarE, i, j), L(K::aE, i + 1, j, -1), L(K::bbarE, i, j - 1, -1)};
      // (bbar_ij abar_{i+1,j})(abar_ij bbar_{i,j-1})^{-1}
      cw.boundary[f4] = {L(K::bbarE, i, j), L(K::abarE, i + 1, j), L(K::bbarE, i, j - 1, -1), L(K::abarE, i, j, -1)};
    }
  for (int i = 1; i <= n; ++i) {
    const CellLabel f1{K::B4, i, 0, 1}, f2{K::B4, i, 0, 2}, f3{K::B4, i, 0, 3};
    cw.faces.insert(cw.faces.end(), {f1, f2, f3});
    // (a_ii bbar_ii c_{i+1})(c_i a_ii bbar_ii)^{-1}
    cw.boundary[f1] = {L(K::aE, i, i), L(K::bbarE, i, i), C(i + 1), L(K::bbarE, i, i, -1), L(K::aE, i, i, -1),
                       C(i, -1)};
    // (bbar_ii c_{i+1} b_ii)(abar_ii c_i a_ii)^{-1}
    cw.boundary[f2] = {L(K::bbarE, i, i), C(i + 1), L(K::bE, i, i), L(K::aE, i, i, -1), C(i, -1),
                       L(K::abarE, i, i, -1)};
    // (c_{i+1} b_ii abar_ii)(b_ii abar_ii c_i)^{-1}
    cw.boundary[f3] = {C(i + 1), L(K::bE, i, i), L(K::abarE, i, i), C(i, -1), L(K::abarE, i, i, -1),
                       L(K::bE, i, i, -1)};
  }
  return cw;
}

nlohmann::json to_json(const TwistedComplex& tc) {
  nlohmann::json j;
  j["n"] = tc.n;
  j["basis"] = {{"0", label_strings(tc.cells0)}, {"1", label_strings(tc.cells1)}, {"2", label_strings(tc.cells2)}};
  j["differential"] = to_json(tc.d2);
  j["d1"] = to_json(tc.d1);
  if (tc.n > 0) {
    j["pi"] = {{"a", "x"}, {"b", "x"}, {"c", "y"}};
  } else {
    nlohmann::json pi = nlohmann::json::object();
    for (const auto& [e, w] : tc.pi) pi[e.to_string()] = w.to_string();
    j["pi"] = pi;
  }
  nlohmann::json words = nlohmann::json::object();
  for (const auto& f : tc.cells2) words[f.to_string()] = word_json(tc.boundary.at(f));
  j["boundary"] = words;
  return j;
}

nlohmann::json to_json(const CwComplex& cw) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : cw.edges)
    edges.push_back({{"label", e.to_string()}, {"source", cw.source.at(e).to_string()},
                     {"target", cw.target.at(e).to_string()}});
  nlohmann::json faces = nlohmann::json::array();
  for (const auto& f : cw.faces) faces.push_back({{"label", f.to_string()}, {"boundary", word_json(cw.boundary.at(f))}});
  return {{"vertices", label_strings(cw.vertices)}, {"edges", edges}, {"faces", faces}};
}

}  // namespace lkb
