#pragma once

// Facets of a real line arrangement, computed with exact rationals, and the
// Salvetti complex built from them.

#include <cstdint>
#include <string>
#include <vector>

#include "lkb/complex.hpp"
#include "lkb/ring.hpp"

namespace lkb {

class ArrangementInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// {(x1,x2) : a*x1 + b*x2 = c}, scaled to coprime integers with (a,b)
// lexicographically positive.
struct Line {
  Integer a, b, c;

  static Line make(const Rational& a, const Rational& b, const Rational& c);
  // Sign of a*x1 + b*x2 - c.
  int side(const Rational& x1, const Rational& x2) const;
  std::string to_string() const;

  friend bool operator==(const Line&, const Line&) = default;
};

struct Point {
  Rational x1, x2;

  friend bool operator==(const Point&, const Point&) = default;
};

// Entries in {-1, 0, +1}, one per line.
using SignVector = std::vector<std::int8_t>;

// Whether the facet with sign f lies in the closure of the facet with sign g.
bool facet_leq(const SignVector& f, const SignVector& g);

struct FacetVertex {
  Point point;
  SignVector sign;
  std::vector<std::size_t> lines;  // lines through the vertex
};

struct FacetEdge {
  std::size_t line = 0;  // carrier
  Point point;
  SignVector sign;
  std::vector<std::size_t> vertices;  // 0, 1 or 2 endpoints
};

struct FacetChamber {
  Point point;
  SignVector sign;
};

// All lists are sorted by sign vector.
struct FacetComplex {
  std::vector<Line> lines;
  std::vector<FacetVertex> vertices;
  std::vector<FacetEdge> edges;
  std::vector<FacetChamber> chambers;

  std::size_t chamber_index(const SignVector& s) const;
  std::size_t edge_index(const SignVector& s) const;
};

FacetComplex build_facets(const std::vector<Line>& lines);

// Chambers around a vertex, counterclockwise, starting from the one with the
// lexicographically smallest sign vector.
std::vector<std::size_t> cyclic_order_at_vertex(const FacetComplex& fc, std::size_t vertex);

// Vertex w_{k+1} for chamber k. Edge facet m gives e_{2m+1} = a(F,C) and
// e_{2m+2} = a(F,D), where C is the chamber with the smaller sign vector.
// Face f_{t+1} is A(P,C) for the t-th (vertex, chamber) pair.
struct SalvettiComplex {
  FacetComplex facets;
  CwComplex cw;
  std::vector<std::size_t> edge_facet;    // per directed edge
  std::vector<std::size_t> edge_carrier;  // per directed edge
  struct FaceOrigin {
    std::size_t vertex;
    std::size_t chamber;
  };
  std::vector<FaceOrigin> face_origin;
};

SalvettiComplex build_salvetti(const FacetComplex& fc);

struct SalvettiH1 {
  std::size_t rank = 0;
  std::vector<Integer> torsion;
  // Per edge facet: whether its meridian loop a(F,C) a(F,D) is homologous to
  // the meridian of the first edge facet on the same line.
  std::vector<bool> meridian_matches_line;
};

SalvettiH1 salvetti_h1(const SalvettiComplex& sc);

// Each directed edge is weighted by the monomial of its carrier line.
TwistedComplex salvetti_twisted_complex(const SalvettiComplex& sc, const std::vector<Poly>& line_weights);

// {"lines":[{"a":"1","b":"0","c":"2"},...]}, rationals as "p/q" or integers.
std::vector<Line> parse_arrangement(const std::string& text);
nlohmann::json to_json(const SalvettiComplex& sc);

// x1 = t and x2 = t for t = 1..n, and x1 = x2.
std::vector<Line> braid_arrangement(int n);

}  // namespace lkb
