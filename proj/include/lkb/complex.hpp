#pragma once

// Cell labels, edge words and twisted chains for the complexes Sal(F_n) and
// Sal(A_n)/Sigma_2, and the twisted cellular chain complex C_*(F_n; Gamma_pi).

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lkb/linalg.hpp"
#include "lkb/ring.hpp"

namespace lkb {

enum class CellKind : std::uint8_t {
  // Sal(F_n), in basis order
  Vertex,  // the unique vertex *
  C,       // c_i, 1 <= i <= n+1
  A1,      // a_i, 1 <= i <= n
  B1,      // b_i, 1 <= i <= n
  A2,      // A_ij, 1 <= i < j <= n
  B2,      // B_{i,r}, 1 <= i <= n, r in 1..3
  // Sal(A_n)/Sigma_2
  P,      // P_ij, 1 <= i <= j <= n+1
  aE,     // a_ij
  abarE,  // abar_ij
  bE,     // b_ij
  bbarE,  // bbar_ij
  cE,     // c_i
  A4,     // A_{ij,r}, r in 1..4
  B4,     // B_{i,r}, r in 1..3
  // Salvetti complex of a general arrangement
  GenVertex,
  GenEdge,
  GenFace,
};

struct CellLabel {
  CellKind kind = CellKind::Vertex;
  int i = 0;
  int j = 0;
  int r = 0;

  static CellLabel vertex() { return {CellKind::Vertex}; }
  static CellLabel c(int i) { return {CellKind::C, i}; }
  static CellLabel a(int i) { return {CellKind::A1, i}; }
  static CellLabel b(int i) { return {CellKind::B1, i}; }
  static CellLabel A(int i, int j) { return {CellKind::A2, i, j}; }
  static CellLabel B(int i, int r) { return {CellKind::B2, i, 0, r}; }

  int dimension() const;
  std::string to_string() const;

  friend auto operator<=>(const CellLabel&, const CellLabel&) = default;
};

struct Letter {
  CellLabel edge;
  int sign = 1;  // +1 or -1

  friend bool operator==(const Letter&, const Letter&) = default;
};

using EdgeWord = std::vector<Letter>;

EdgeWord inverse(const EdgeWord& w);
EdgeWord concat(EdgeWord a, const EdgeWord& b);
std::string to_string(const EdgeWord& w);

// Weight pi(e) of each edge label, a monomial of Z[H].
using WeightMap = std::map<CellLabel, Poly>;

// pi of a word: product of weights raised to the letter signs.
Poly word_weight(const EdgeWord& w, const WeightMap& pi);

// Finitely supported map from cells of one dimension to Z[H].
class TwistedChain {
 public:
  explicit TwistedChain(int degree = 2) : degree_(degree) {}

  int degree() const { return degree_; }
  const std::map<CellLabel, Poly>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  Poly coefficient(const CellLabel& cell) const;

  // Adds c * cell; drops the entry if it cancels.
  void add(const CellLabel& cell, const Poly& c);
  TwistedChain& operator+=(const TwistedChain& other);
  TwistedChain& operator-=(const TwistedChain& other);
  friend TwistedChain operator+(TwistedChain a, const TwistedChain& b) { return a += b; }
  friend TwistedChain operator-(TwistedChain a, const TwistedChain& b) { return a -= b; }
  friend TwistedChain operator*(const Poly& c, const TwistedChain& u);

  friend bool operator==(const TwistedChain&, const TwistedChain&) = default;

  std::string to_string() const;

 private:
  int degree_;
  std::map<CellLabel, Poly> coeffs_;
};

TwistedChain chain(int degree, std::initializer_list<std::pair<CellLabel, Poly>> terms);

nlohmann::json to_json(const TwistedChain& u);

// Twisted 1-chain of a word: letter i contributes eps_i * pi^{(i)} * alpha_i,
// where pi^{(i)} is the weight of the prefix before it, extended by
// alpha_i^{-1} when eps_i = -1.
TwistedChain word_to_chain(const EdgeWord& w, const WeightMap& pi);

struct TwistedComplex {
  int n = 0;  // strand count for Sal(F_n); 0 for a general arrangement
  std::vector<CellLabel> cells0, cells1, cells2;
  std::map<CellLabel, EdgeWord> boundary;        // 2-cell -> boundary word
  std::map<CellLabel, CellLabel> source, target;  // edge -> vertex
  WeightMap pi;
  RingMatrix d1;  // C_1 -> C_0, column j is d(cells1[j])
  RingMatrix d2;  // C_2 -> C_1, column j is d(cells2[j])

  std::size_t index1(const CellLabel& e) const;
  std::size_t index2(const CellLabel& f) const;

  // Z[H]-linear extension of d on 2-chains (or on 1-chains, via d1).
  TwistedChain differential(const TwistedChain& u) const;
};

// Build d1 and d2 from cells, boundary words, endpoints and weights.
void assemble_differentials(TwistedComplex& tc);

// Sal(F_n) with pi(a_i) = pi(b_i) = x and pi(c_i) = y.
TwistedComplex sal_fn(int n);

// Integer boundary matrix of d2 at x = y = 1.
IntMatrix untwist(const TwistedComplex& tc);

// Untwisted CW complex given by explicit cells and words.
struct CwComplex {
  std::vector<CellLabel> vertices, edges, faces;
  std::map<CellLabel, CellLabel> source, target;
  std::map<CellLabel, EdgeWord> boundary;

  // Basepoint of a face: source of its first letter (or target if inverted).
  CellLabel start_vertex(const CellLabel& face) const;
  // Whether each boundary word chains correctly and returns to its start.
  bool word_closes(const EdgeWord& w) const;
  bool all_words_close() const;
  IntMatrix boundary1() const;
  IntMatrix boundary2() const;
};

CwComplex sal_an_mod_sigma2(int n);

nlohmann::json to_json(const TwistedComplex& tc);
nlohmann::json to_json(const CwComplex& cw);

}  // namespace lkb
