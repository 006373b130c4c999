#pragma once

// Exact arithmetic in Z[x^{+-1}, y^{+-1}] and its fraction field Q(x,y).

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"

namespace lkb {

using Integer = mpz_class;
using Rational = mpq_class;

class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raised by try_div_exact when the divisor's leading coefficient (after
// monomial clearing) is not a unit of Z.
class UnsupportedDivisor : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// x^ex y^ey
struct Exponent {
  std::int64_t ex = 0;
  std::int64_t ey = 0;

  friend bool operator==(const Exponent&, const Exponent&) = default;
};

// Graded lexicographic, x before y: compare total degree, then the x-degree.
struct MonomialOrder {
  static std::strong_ordering compare(const Exponent& a, const Exponent& b) {
    if (auto c = (a.ex + a.ey) <=> (b.ex + b.ey); c != 0) return c;
    return a.ex <=> b.ex;
  }
  bool operator()(const Exponent& a, const Exponent& b) const { return compare(a, b) < 0; }
};

class LaurentPolynomial {
 public:
  struct Term {
    Exponent exp;
    Integer coeff;

    friend bool operator==(const Term&, const Term&) = default;
  };

  LaurentPolynomial() = default;
  LaurentPolynomial(long c);  // NOLINT: constants convert implicitly
  explicit LaurentPolynomial(const Integer& c);

  // Arbitrary term list; duplicates are merged and zeros dropped.
  static LaurentPolynomial from_terms(std::vector<Term> terms);
  static LaurentPolynomial monomial(const Integer& c, std::int64_t ex, std::int64_t ey);
  static LaurentPolynomial x() { return monomial(1, 1, 0); }
  static LaurentPolynomial y() { return monomial(1, 0, 1); }

  // Terms sorted by MonomialOrder, largest first.
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  // Units of Z[H] are +-x^a y^b.
  bool is_unit() const;

  const Term& leading_term() const;
  // Componentwise minimum of the exponents; (0,0) for zero.
  Exponent min_exponents() const;
  // gcd of the coefficients, nonnegative; 0 for zero.
  Integer content() const;

  // Multiply by x^ex y^ey.
  LaurentPolynomial shifted(std::int64_t ex, std::int64_t ey) const;
  // Divide every coefficient by c, which must divide all of them.
  LaurentPolynomial divided_by_integer(const Integer& c) const;
  // Only units may be raised to negative powers.
  LaurentPolynomial pow(std::int64_t e) const;

  LaurentPolynomial operator-() const;
  LaurentPolynomial& operator+=(const LaurentPolynomial& g);
  LaurentPolynomial& operator-=(const LaurentPolynomial& g);
  LaurentPolynomial& operator*=(const LaurentPolynomial& g);
  friend LaurentPolynomial operator+(LaurentPolynomial f, const LaurentPolynomial& g) { return f += g; }
  friend LaurentPolynomial operator-(LaurentPolynomial f, const LaurentPolynomial& g) { return f -= g; }
  friend LaurentPolynomial operator*(const LaurentPolynomial& f, const LaurentPolynomial& g);

  friend bool operator==(const LaurentPolynomial&, const LaurentPolynomial&) = default;
  // Arbitrary but fixed total order, for use as a map key.
  friend std::strong_ordering operator<=>(const LaurentPolynomial& f, const LaurentPolynomial& g);

  // Exact value at a point with nonzero coordinates.
  Rational eval(const Rational& x0, const Rational& y0) const;

  // Text form, e.g. "x^2*y - 2*x + 1", "x^-1*y".
  std::string to_string() const;

 private:
  void canonicalize();

  std::vector<Term> terms_;
};

using Poly = LaurentPolynomial;

// Quotient q with f = q*g when it exists in Z[H]. g must be nonzero and its
// leading coefficient after monomial clearing must be +-1.
std::optional<Poly> try_div_exact(const Poly& f, const Poly& g);

// Exact division for an arbitrary nonzero divisor: succeeds iff g divides f in
// Z[H]. Leading coefficients are checked for integer divisibility at each step.
std::optional<Poly> divide_exact(const Poly& f, const Poly& g);

// Parse the text form produced by to_string (also accepts "2*x*y^-1", "-1").
Poly parse_poly(const std::string& text);

// {"terms":[[e_x,e_y,"coeff"],...]}, terms in descending MonomialOrder.
nlohmann::json to_json(const Poly& f);
Poly poly_from_json(const nlohmann::json& j);

// Element of Q(x,y). The denominator is kept free of monomial factors, with
// positive leading coefficient, and coprime in content to the numerator.
// Lowest terms are not maintained; equality is by cross-multiplication.
class RationalFunction {
 public:
  RationalFunction() : num_(0), den_(1) {}
  RationalFunction(long c) : num_(c), den_(1) {}  // NOLINT
  RationalFunction(Poly num);                      // NOLINT
  RationalFunction(Poly num, Poly den);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RationalFunction operator-() const;
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction& operator+=(const RationalFunction& b) { return *this = *this + b; }
  RationalFunction& operator-=(const RationalFunction& b) { return *this = *this - b; }
  RationalFunction& operator*=(const RationalFunction& b) { return *this = *this * b; }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

  Rational eval(const Rational& x0, const Rational& y0) const;
  std::string to_string() const;

 private:
  void normalize();

  Poly num_;
  Poly den_;
};

// The Laurent polynomial equal to a, if there is one.
std::optional<Poly> to_laurent(const RationalFunction& a);

nlohmann::json to_json(const RationalFunction& a);

}  // namespace lkb
