#include "lkb/ring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace lkb {

namespace {

bool exp_greater(const LaurentPolynomial::Term& a, const LaurentPolynomial::Term& b) {
  return MonomialOrder::compare(a.exp, b.exp) > 0;
}

Rational rational_pow(const Rational& base, std::int64_t e) {
  if (e == 0) return 1;
  const auto mag = static_cast<unsigned long>(e < 0 ? -e : e);
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), mag);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), mag);
  Rational r = e > 0 ? Rational(num, den) : Rational(den, num);
  r.canonicalize();
  return r;
}

// Bounding box of the exponents of a nonzero polynomial.
struct Box {
  Exponent lo, hi;
  Box(Exponent l, Exponent h) : lo(l), hi(h) {}
  explicit Box(const LaurentPolynomial& f) : lo(f.terms().front().exp), hi(lo) {
    for (const auto& t : f.terms()) {
      lo.ex = std::min(lo.ex, t.exp.ex);
      lo.ey = std::min(lo.ey, t.exp.ey);
      hi.ex = std::max(hi.ex, t.exp.ex);
      hi.ey = std::max(hi.ey, t.exp.ey);
    }
  }
  std::int64_t width() const { return hi.ex - lo.ex + 1; }
  std::int64_t height() const { return hi.ey - lo.ey + 1; }
  bool contains(const Exponent& e) const { return lo.ex <= e.ex && e.ex <= hi.ex && lo.ey <= e.ey && e.ey <= hi.ey; }
  // dense storage pays off when the box is not much larger than the work
  bool dense_ok(std::size_t work) const {
    const std::int64_t cells = width() * height();
    return cells <= (1 << 16) && cells <= 16 * static_cast<std::int64_t>(work) + 64;
  }
};

// Coefficients over a box, swept in descending monomial order.
class DenseGrid {
 public:
  explicit DenseGrid(const Box& b) : box_(b), cells_(static_cast<std::size_t>(b.width() * b.height())) {}

  Integer& at(const Exponent& e) {
    return cells_[static_cast<std::size_t>((e.ey - box_.lo.ey) * box_.width() + (e.ex - box_.lo.ex))];
  }
  void addmul(const Exponent& e, const Integer& a, const Integer& b) {
    mpz_addmul(at(e).get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  }
  void submul(const Exponent& e, const Integer& a, const Integer& b) {
    mpz_submul(at(e).get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  }

  // Calls f(exponent) over the box from the largest monomial down.
  template <class F>
  bool sweep(F&& f) {
    const std::int64_t dlo = box_.lo.ex + box_.lo.ey, dhi = box_.hi.ex + box_.hi.ey;
    for (std::int64_t d = dhi; d >= dlo; --d) {
      const std::int64_t xhi = std::min(box_.hi.ex, d - box_.lo.ey), xlo = std::max(box_.lo.ex, d - box_.hi.ey);
      for (std::int64_t x = xhi; x >= xlo; --x)
        if (!f(Exponent{x, d - x})) return false;
    }
    return true;
  }

  std::vector<LaurentPolynomial::Term> take_terms() {
    std::vector<LaurentPolynomial::Term> out;
    sweep([&](const Exponent& e) {
      Integer& c = at(e);
      if (c != 0) out.push_back({e, std::move(c)});
      return true;
    });
    return out;
  }

  const Box& box() const { return box_; }

 private:
  Box box_;
  std::vector<Integer> cells_;
};

}  // namespace

LaurentPolynomial::LaurentPolynomial(long c) {
  if (c != 0) terms_.push_back({{0, 0}, Integer(c)});
}

LaurentPolynomial::LaurentPolynomial(const Integer& c) {
  if (c != 0) terms_.push_back({{0, 0}, c});
}

LaurentPolynomial LaurentPolynomial::from_terms(std::vector<Term> terms) {
  LaurentPolynomial f;
  f.terms_ = std::move(terms);
  f.canonicalize();
  return f;
}

LaurentPolynomial LaurentPolynomial::monomial(const Integer& c, std::int64_t ex, std::int64_t ey) {
  LaurentPolynomial f;
  if (c != 0) f.terms_.push_back({{ex, ey}, c});
  return f;
}

void LaurentPolynomial::canonicalize() {
  std::sort(terms_.begin(), terms_.end(), exp_greater);
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().exp == t.exp) {
      merged.back().coeff += t.coeff;
    } else {
      if (!merged.empty() && merged.back().coeff == 0) merged.pop_back();
      merged.push_back(std::move(t));
    }
  }
  if (!merged.empty() && merged.back().coeff == 0) merged.pop_back();
  terms_ = std::move(merged);
}

bool LaurentPolynomial::is_one() const {
  return terms_.size() == 1 && terms_[0].exp == Exponent{} && terms_[0].coeff == 1;
}

bool LaurentPolynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exp == Exponent{});
}

bool LaurentPolynomial::is_unit() const {
  return terms_.size() == 1 && abs(terms_[0].coeff) == 1;
}

const LaurentPolynomial::Term& LaurentPolynomial::leading_term() const {
  if (terms_.empty()) throw std::logic_error("leading term of the zero polynomial");
  return terms_.front();
}

Exponent LaurentPolynomial::min_exponents() const {
  if (terms_.empty()) return {};
  Exponent m = terms_.front().exp;
  for (const auto& t : terms_) {
    m.ex = std::min(m.ex, t.exp.ex);
    m.ey = std::min(m.ey, t.exp.ey);
  }
  return m;
}

Integer LaurentPolynomial::content() const {
  Integer g = 0;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

LaurentPolynomial LaurentPolynomial::shifted(std::int64_t ex, std::int64_t ey) const {
  LaurentPolynomial f = *this;
  for (auto& t : f.terms_) {
    t.exp.ex += ex;
    t.exp.ey += ey;
  }
  return f;  // the order is translation invariant
}

LaurentPolynomial LaurentPolynomial::divided_by_integer(const Integer& c) const {
  if (c == 0) throw DivisionByZero("integer division by zero");
  LaurentPolynomial f = *this;
  for (auto& t : f.terms_) {
    if (!mpz_divisible_p(t.coeff.get_mpz_t(), c.get_mpz_t()))
      throw std::logic_error("divided_by_integer: inexact division");
    mpz_divexact(t.coeff.get_mpz_t(), t.coeff.get_mpz_t(), c.get_mpz_t());
  }
  return f;
}

LaurentPolynomial LaurentPolynomial::pow(std::int64_t e) const {
  if (e < 0) {
    if (!is_unit()) throw std::domain_error("negative power of a non-unit");
    const auto& t = terms_[0];
    const Integer c = (t.coeff < 0 && e % 2 != 0) ? Integer(-1) : Integer(1);
    return monomial(c, t.exp.ex * e, t.exp.ey * e);
  }
  LaurentPolynomial result(1), base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

LaurentPolynomial LaurentPolynomial::operator-() const {
  LaurentPolynomial f = *this;
  for (auto& t : f.terms_) t.coeff = -t.coeff;
  return f;
}

LaurentPolynomial& LaurentPolynomial::operator+=(const LaurentPolynomial& g) {
  if (g.terms_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + g.terms_.size());
  auto a = terms_.begin();
  auto b = g.terms_.begin();
  while (a != terms_.end() || b != g.terms_.end()) {
    if (b == g.terms_.end() || (a != terms_.end() && MonomialOrder::compare(a->exp, b->exp) > 0)) {
      out.push_back(std::move(*a++));
    } else if (a == terms_.end() || MonomialOrder::compare(a->exp, b->exp) < 0) {
      out.push_back(*b++);
    } else {
      Integer c = a->coeff + b->coeff;
      if (c != 0) out.push_back({a->exp, std::move(c)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator-=(const LaurentPolynomial& g) {
  return *this += -g;
}

LaurentPolynomial operator*(const LaurentPolynomial& f, const LaurentPolynomial& g) {
  if (f.is_zero() || g.is_zero()) return {};
  const Box bf(f), bg(g);
  Box box{{bf.lo.ex + bg.lo.ex, bf.lo.ey + bg.lo.ey}, {bf.hi.ex + bg.hi.ex, bf.hi.ey + bg.hi.ey}};
  if (!box.dense_ok(f.size() * g.size())) {
    std::vector<LaurentPolynomial::Term> out;
    out.reserve(f.terms_.size() * g.terms_.size());
    for (const auto& s : f.terms_)
      for (const auto& t : g.terms_)
        out.push_back({{s.exp.ex + t.exp.ex, s.exp.ey + t.exp.ey}, s.coeff * t.coeff});
    return LaurentPolynomial::from_terms(std::move(out));
  }
  DenseGrid acc(box);
  for (const auto& s : f.terms_)
    for (const auto& t : g.terms_)
      acc.addmul({s.exp.ex + t.exp.ex, s.exp.ey + t.exp.ey}, s.coeff, t.coeff);
  LaurentPolynomial r;
  r.terms_ = acc.take_terms();
  return r;
}

LaurentPolynomial& LaurentPolynomial::operator*=(const LaurentPolynomial& g) {
  return *this = *this * g;
}

std::strong_ordering operator<=>(const LaurentPolynomial& f, const LaurentPolynomial& g) {
  if (auto c = f.terms_.size() <=> g.terms_.size(); c != 0) return c;
  for (std::size_t i = 0; i < f.terms_.size(); ++i) {
    const auto& s = f.terms_[i];
    const auto& t = g.terms_[i];
    if (auto c = MonomialOrder::compare(s.exp, t.exp); c != 0) return c;
    int c = cmp(s.coeff, t.coeff);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

Rational LaurentPolynomial::eval(const Rational& x0, const Rational& y0) const {
  if (x0 == 0 || y0 == 0) throw std::domain_error("Laurent polynomial evaluated at a zero coordinate");
  Rational sum = 0;
  for (const auto& t : terms_) sum += Rational(t.coeff) * rational_pow(x0, t.exp.ex) * rational_pow(y0, t.exp.ey);
  return sum;
}

std::string LaurentPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    const bool negative = t.coeff < 0;
    const Integer mag = abs(t.coeff);
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;

    std::vector<std::string> factors;
    const bool unit_monomial = t.exp == Exponent{};
    if (mag != 1 || unit_monomial) factors.push_back(mag.get_str());
    auto var = [&](char name, std::int64_t e) {
      if (e == 0) return;
      std::string s(1, name);
      if (e != 1) s += "^" + std::to_string(e);
      factors.push_back(s);
    };
    var('x', t.exp.ex);
    var('y', t.exp.ey);
    for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
  }
  return os.str();
}

std::optional<Poly> divide_exact(const Poly& f, const Poly& g) {
  if (g.is_zero()) throw DivisionByZero("exact division by the zero polynomial");
  if (f.is_zero()) return Poly();
  const Box bf(f), bg(g);
  // the bounding box of a product is the sum of the boxes
  if (bf.width() < bg.width() || bf.height() < bg.height()) return std::nullopt;
  const Exponent shift{bf.lo.ex - bg.lo.ex, bf.lo.ey - bg.lo.ey};
  const Box qbox{shift, {bf.hi.ex - bg.hi.ex, bf.hi.ey - bg.hi.ey}};
  const auto& lead = g.leading_term();

  std::vector<Poly::Term> quotient;
  auto step = [&](auto&& subtract, const Exponent& at, const Integer& c) {
    const Exponent e{at.ex - lead.exp.ex, at.ey - lead.exp.ey};
    if (!qbox.contains(e) || !mpz_divisible_p(c.get_mpz_t(), lead.coeff.get_mpz_t())) return false;
    Integer q;
    mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), lead.coeff.get_mpz_t());
    subtract(e, q);
    quotient.push_back({e, std::move(q)});
    return true;
  };

  if (bf.dense_ok(f.size() * 4)) {
    DenseGrid rem(bf);
    for (const auto& t : f.terms()) rem.at(t.exp) = t.coeff;
    const bool ok = rem.sweep([&](const Exponent& at) {
      const Integer c = rem.at(at);
      if (c == 0) return true;
      return step([&](const Exponent& e, const Integer& q) {
        for (const auto& t : g.terms()) rem.submul({e.ex + t.exp.ex, e.ey + t.exp.ey}, q, t.coeff);
      }, at, c);
    });
    if (!ok) return std::nullopt;
  } else {
    Poly rem = f;
    while (!rem.is_zero()) {
      const auto lt = rem.leading_term();
      const bool ok = step([&](const Exponent& e, const Integer& q) { rem -= Poly::monomial(q, e.ex, e.ey) * g; },
                           lt.exp, lt.coeff);
      if (!ok) return std::nullopt;
    }
  }
  Poly q = Poly::from_terms(std::move(quotient));
  if (q * g != f) throw std::logic_error("divide_exact: quotient failed re-verification");
  return q;
}

std::optional<Poly> try_div_exact(const Poly& f, const Poly& g) {
  if (g.is_zero()) throw DivisionByZero("try_div_exact: zero divisor");
  if (abs(g.leading_term().coeff) != 1)
    throw UnsupportedDivisor("try_div_exact: divisor " + g.to_string() + " has non-unit leading coefficient");
  return divide_exact(f, g);
}

Poly parse_poly(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("empty polynomial text");

  std::vector<Poly::Term> terms;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("cannot parse polynomial '" + text + "' at offset " + std::to_string(pos) + ": " + why);
  };
  auto read_int = [&]() {
    std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos || !std::isdigit(static_cast<unsigned char>(s[pos - 1]))) fail("expected an integer");
    return s.substr(start, pos - start);
  };

  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!terms.empty()) {
      fail("expected '+' or '-'");
    }
    Poly::Term term{{0, 0}, Integer(sign)};
    bool need_factor = true;
    while (need_factor) {
      if (pos >= s.size()) fail("unexpected end");
      const char ch = s[pos];
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        term.coeff *= Integer(read_int());
      } else if (ch == 'x' || ch == 'y') {
        ++pos;
        std::int64_t e = 1;
        if (pos < s.size() && s[pos] == '^') {
          ++pos;
          e = std::stoll(read_int());
        }
        (ch == 'x' ? term.exp.ex : term.exp.ey) += e;
      } else {
        fail(std::string("unexpected character '") + ch + "'");
      }
      need_factor = pos < s.size() && s[pos] == '*';
      if (need_factor) ++pos;
    }
    terms.push_back(std::move(term));
  }
  return Poly::from_terms(std::move(terms));
}

nlohmann::json to_json(const Poly& f) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : f.terms()) terms.push_back({t.exp.ex, t.exp.ey, t.coeff.get_str()});
  return {{"terms", terms}};
}

Poly poly_from_json(const nlohmann::json& j) {
  std::vector<Poly::Term> terms;
  for (const auto& t : j.at("terms")) {
    if (!t.is_array() || t.size() != 3) throw std::invalid_argument("polynomial term must be [e_x,e_y,\"coeff\"]");
    terms.push_back({{t[0].get<std::int64_t>(), t[1].get<std::int64_t>()}, Integer(t[2].get<std::string>())});
  }
  return Poly::from_terms(std::move(terms));
}

// ---------------------------------------------------------------------------

RationalFunction::RationalFunction(Poly num) : num_(std::move(num)), den_(1) {}

RationalFunction::RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void RationalFunction::normalize() {
  if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = 1;
    return;
  }
  const Exponent m = den_.min_exponents();
  den_ = den_.shifted(-m.ex, -m.ey);
  num_ = num_.shifted(-m.ex, -m.ey);

  Integer g;
  const Integer cn = num_.content();
  const Integer cd = den_.content();
  mpz_gcd(g.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
  if (g != 1) {
    num_ = num_.divided_by_integer(g);
    den_ = den_.divided_by_integer(g);
  }
  if (den_.leading_term().coeff < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (den_.is_one()) return;
  if (auto q = divide_exact(num_, den_)) {
    num_ = std::move(*q);
    den_ = 1;
  }
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.den_.is_one() && b.den_.is_one()) return RationalFunction(a.num_ * b.num_);
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw DivisionByZero("division by the zero rational function");
  return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

Rational RationalFunction::eval(const Rational& x0, const Rational& y0) const {
  const Rational d = den_.eval(x0, y0);
  if (d == 0) throw DivisionByZero("rational function evaluated at a pole");
  return num_.eval(x0, y0) / d;
}

std::string RationalFunction::to_string() const {
  if (den_.is_one()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

std::optional<Poly> to_laurent(const RationalFunction& a) {
  if (a.den().is_one()) return a.num();
  if (abs(a.den().leading_term().coeff) == 1) return try_div_exact(a.num(), a.den());
  // Non-unit leading coefficient: strip the common content, then divide.
  Integer g;
  const Integer cn = a.num().content();
  const Integer cd = a.den().content();
  mpz_gcd(g.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
  return divide_exact(a.num().divided_by_integer(g), a.den().divided_by_integer(g));
}

nlohmann::json to_json(const RationalFunction& a) {
  return {{"num", to_json(a.num())}, {"den", to_json(a.den())}};
}

}  // namespace lkb
