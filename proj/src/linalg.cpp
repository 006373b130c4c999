#include "lkb/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <set>

namespace lkb {

template <class T>
std::vector<std::string> Matrix<T>::checked_labels(std::vector<std::string> labels, std::size_t n) {
  if (labels.empty()) return labels;
  if (labels.size() != n) throw DimensionMismatch("label count does not match the matrix dimension");
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) throw std::invalid_argument("matrix labels must be unique");
  return labels;
}

template class Matrix<Poly>;
template class Matrix<RationalFunction>;
template class Matrix<Integer>;

namespace {

template <class T>
void check_product_shape(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows())
    throw DimensionMismatch("mat_mul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " times " +
                            std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
}

template <class T>
bool entry_is_zero(const T& v) {
  if constexpr (std::is_same_v<T, Integer>) {
    return v == 0;
  } else {
    return v.is_zero();
  }
}

template <class T>
void product_row(const Matrix<T>& a, const Matrix<T>& b, Matrix<T>& c, std::size_t i) {
  for (std::size_t k = 0; k < a.cols(); ++k) {
    const T& aik = a(i, k);
    if (entry_is_zero(aik)) continue;
    for (std::size_t j = 0; j < b.cols(); ++j) {
      if (entry_is_zero(b(k, j))) continue;
      c(i, j) += aik * b(k, j);
    }
  }
}

template <class T>
void with_labels(const Matrix<T>& a, const Matrix<T>& b, Matrix<T>& c) {
  c.set_row_labels(a.row_labels());
  c.set_col_labels(b.col_labels());
}

// One Bareiss step for row i against pivot row r, pivot column c. Entries to
// the left of c that are zero in the pivot row keep their exact minor value.
void eliminate_row(RingMatrix& m, std::size_t r, std::size_t c, std::size_t i, const Poly& p, const Poly& prev) {
  const Poly f = m(i, c);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Poly v = p * m(i, j);
    if (!f.is_zero() && !m(r, j).is_zero()) v -= f * m(r, j);
    if (!prev.is_one() && !v.is_zero()) {
      auto q = divide_exact(v, prev);
      if (!q) throw std::logic_error("fraction-free elimination: inexact Bareiss division");
      v = std::move(*q);
    }
    m(i, j) = std::move(v);
  }
}

template <bool Parallel>
RowEchelon rref_impl(RingMatrix m) {
  RowEchelon out;
  Poly prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    // sparsest nonzero candidate, first on ties; the reduced form and pivot
    // columns do not depend on this choice
    std::size_t s = m.rows();
    for (std::size_t i = r; i < m.rows(); ++i)
      if (!m(i, c).is_zero() && (s == m.rows() || m(i, c).size() < m(s, c).size())) s = i;
    if (s == m.rows()) continue;
    if (s != r) {
      m.swap_rows(s, r);
      out.swap_sign = -out.swap_sign;
    }
    const Poly p = m(r, c);
    const auto nrows = static_cast<std::ptrdiff_t>(m.rows());
    if constexpr (Parallel) {
      std::atomic<bool> failed{false};
#pragma omp parallel for schedule(dynamic)
      for (std::ptrdiff_t i = 0; i < nrows; ++i) {
        if (static_cast<std::size_t>(i) == r || failed.load()) continue;
        try {
          eliminate_row(m, r, c, static_cast<std::size_t>(i), p, prev);
        } catch (...) {
          failed = true;
        }
      }
      if (failed) throw std::logic_error("fraction-free elimination: inexact Bareiss division");
    } else {
      for (std::ptrdiff_t i = 0; i < nrows; ++i)
        if (static_cast<std::size_t>(i) != r) eliminate_row(m, r, c, static_cast<std::size_t>(i), p, prev);
    }
    out.pivot_cols.push_back(c);
    prev = p;
    ++r;
  }
  out.pivot = prev;
  out.form = std::move(m);
  return out;
}

Poly row_scale(std::span<const RationalFunction> row) {
  Poly scale = 1;
  std::vector<Poly> seen;
  for (const auto& v : row) {
    if (v.den().is_one() || std::find(seen.begin(), seen.end(), v.den()) != seen.end()) continue;
    seen.push_back(v.den());
    // keep the scale small when one denominator divides another
    if (divide_exact(scale, v.den())) continue;
    if (divide_exact(v.den(), scale)) scale = v.den();
    else scale *= v.den();
  }
  return scale;
}

Poly times_scale(const RationalFunction& v, const Poly& scale) {
  if (v.den().is_one()) return v.num() * scale;
  auto q = divide_exact(v.num() * scale, v.den());
  if (!q) throw std::logic_error("clear_denominators: scale is not a multiple of the denominator");
  return *q;
}

}  // namespace

template <class T>
Matrix<T> mat_mul(const Matrix<T>& a, const Matrix<T>& b) {
  check_product_shape(a, b);
  Matrix<T> c(a.rows(), b.cols());
  const auto nrows = static_cast<std::ptrdiff_t>(a.rows());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < nrows; ++i) product_row(a, b, c, static_cast<std::size_t>(i));
  with_labels(a, b, c);
  return c;
}

template <class T>
Matrix<T> mat_mul_serial(const Matrix<T>& a, const Matrix<T>& b) {
  check_product_shape(a, b);
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) product_row(a, b, c, i);
  with_labels(a, b, c);
  return c;
}

template Matrix<Poly> mat_mul(const Matrix<Poly>&, const Matrix<Poly>&);
template Matrix<RationalFunction> mat_mul(const Matrix<RationalFunction>&, const Matrix<RationalFunction>&);
template Matrix<Integer> mat_mul(const Matrix<Integer>&, const Matrix<Integer>&);
template Matrix<Poly> mat_mul_serial(const Matrix<Poly>&, const Matrix<Poly>&);
template Matrix<RationalFunction> mat_mul_serial(const Matrix<RationalFunction>&, const Matrix<RationalFunction>&);
template Matrix<Integer> mat_mul_serial(const Matrix<Integer>&, const Matrix<Integer>&);

FieldMatrix to_field(const RingMatrix& a) {
  FieldMatrix f(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) f(i, j) = RationalFunction(a(i, j));
  f.set_row_labels(a.row_labels());
  f.set_col_labels(a.col_labels());
  return f;
}

IntMatrix specialize(const RingMatrix& a, const Rational& x0, const Rational& y0) {
  IntMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Rational v = a(i, j).eval(x0, y0);
      if (v.get_den() != 1) throw std::domain_error("specialize: non-integral value");
      out(i, j) = v.get_num();
    }
  out.set_row_labels(a.row_labels());
  out.set_col_labels(a.col_labels());
  return out;
}

ClearedRows clear_denominators(const FieldMatrix& a) {
  ClearedRows out{RingMatrix(a.rows(), a.cols()), std::vector<Poly>(a.rows())};
  for (std::size_t i = 0; i < a.rows(); ++i) {
    out.scale[i] = row_scale(a.row(i));
    for (std::size_t j = 0; j < a.cols(); ++j) out.matrix(i, j) = times_scale(a(i, j), out.scale[i]);
  }
  return out;
}

RowEchelon fraction_free_rref(RingMatrix m) { return rref_impl<true>(std::move(m)); }
RowEchelon fraction_free_rref_serial(RingMatrix m) { return rref_impl<false>(std::move(m)); }

std::vector<FieldVector> field_kernel(const FieldMatrix& a) {
  const RingMatrix cleared = clear_denominators(a).matrix;
  const RowEchelon e = fraction_free_rref(cleared);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;

  std::vector<FieldVector> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    // pivot * v, which has Z[H] entries
    std::vector<Poly> scaled(a.cols());
    scaled[f] = e.pivot;
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) scaled[e.pivot_cols[r]] = -e.form(r, f);
    for (std::size_t i = 0; i < cleared.rows(); ++i) {
      Poly s;
      for (std::size_t j = 0; j < cleared.cols(); ++j)
        if (!scaled[j].is_zero()) s += cleared(i, j) * scaled[j];
      if (!s.is_zero()) throw std::logic_error("field_kernel: returned vector is not in the kernel");
    }
    FieldVector v(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j)
      v[j] = (j == f) ? RationalFunction(1) : RationalFunction(scaled[j], e.pivot);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t field_rank(const FieldMatrix& a) {
  return fraction_free_rref(clear_denominators(a).matrix).pivot_cols.size();
}

FieldVector mat_vec(const FieldMatrix& a, const FieldVector& v) {
  if (v.size() != a.cols()) throw DimensionMismatch("mat_vec: vector length does not match column count");
  FieldVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero() && !v[j].is_zero()) out[i] += a(i, j) * v[j];
  return out;
}

std::vector<std::optional<FieldVector>> field_solve_many(const FieldMatrix& a, const std::vector<FieldVector>& bs) {
  const std::size_t n = a.cols(), k = bs.size();
  // Each right-hand side is scaled by its own common denominator first, so
  // that a large denominator in one b does not inflate the whole system.
  std::vector<Poly> b_scale(k);
  FieldMatrix aug(a.rows(), n + k);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
  for (std::size_t c = 0; c < k; ++c) {
    if (bs[c].size() != a.rows()) throw DimensionMismatch("field_solve: right-hand side length does not match row count");
    b_scale[c] = row_scale(bs[c]);
    for (std::size_t i = 0; i < a.rows(); ++i) aug(i, n + c) = times_scale(bs[c][i], b_scale[c]);
  }
  const RingMatrix cleared = clear_denominators(aug).matrix;
  const RowEchelon e = fraction_free_rref(cleared);
  std::size_t rank = 0;
  while (rank < e.pivot_cols.size() && e.pivot_cols[rank] < n) ++rank;

  std::vector<std::optional<FieldVector>> out(k);
  for (std::size_t c = 0; c < k; ++c) {
    bool consistent = true;
    for (std::size_t r = rank; r < e.form.rows(); ++r)
      if (!e.form(r, n + c).is_zero()) consistent = false;
    if (!consistent) continue;

    std::vector<Poly> scaled(n);
    for (std::size_t r = 0; r < rank; ++r) scaled[e.pivot_cols[r]] = e.form(r, n + c);
    for (std::size_t i = 0; i < cleared.rows(); ++i) {
      Poly s;
      for (std::size_t j = 0; j < n; ++j)
        if (!scaled[j].is_zero()) s += cleared(i, j) * scaled[j];
      if (s != e.pivot * cleared(i, n + c)) throw std::logic_error("field_solve: solution failed re-verification");
    }
    FieldVector x(n);
    for (std::size_t j = 0; j < n; ++j)
      if (!scaled[j].is_zero()) x[j] = RationalFunction(scaled[j], e.pivot * b_scale[c]);
    out[c] = std::move(x);
  }
  return out;
}

std::optional<FieldVector> field_solve(const FieldMatrix& a, const FieldVector& b) {
  return field_solve_many(a, {b}).front();
}

RationalFunction field_det(const FieldMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("field_det: matrix is not square");
  if (a.rows() == 0) return 1;
  const ClearedRows cr = clear_denominators(a);
  const RowEchelon e = fraction_free_rref(cr.matrix);
  if (e.pivot_cols.size() < a.rows()) return 0;
  Poly scale = 1;
  for (const auto& s : cr.scale) scale *= s;
  return RationalFunction(e.swap_sign < 0 ? -e.pivot : e.pivot, scale);
}

namespace {

// Reduce [a | I]; returns pivot*inverse as polynomials, or nullopt if singular.
std::optional<std::pair<RingMatrix, Poly>> scaled_inverse(const FieldMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("inverse: matrix is not square");
  const std::size_t n = a.rows();
  const ClearedRows cr = clear_denominators(a);
  RingMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = cr.matrix(i, j);
    aug(i, n + i) = cr.scale[i];
  }
  RowEchelon e = fraction_free_rref(std::move(aug));
  if (e.pivot_cols.size() < n || e.pivot_cols[n - 1] != n - 1) return std::nullopt;
  RingMatrix scaled(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scaled(i, j) = e.form(i, n + j);
  return std::make_pair(std::move(scaled), e.pivot);
}

}  // namespace

std::optional<FieldMatrix> field_inverse(const FieldMatrix& a) {
  auto s = scaled_inverse(a);
  if (!s) return std::nullopt;
  FieldMatrix inv(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) inv(i, j) = RationalFunction(s->first(i, j), s->second);
  return inv;
}

std::optional<RingMatrix> ring_inverse(const RingMatrix& a) {
  auto s = scaled_inverse(to_field(a));
  if (!s) throw std::domain_error("ring_inverse: matrix is singular");
  RingMatrix inv(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      auto q = divide_exact(s->first(i, j), s->second);
      if (!q) return std::nullopt;
      inv(i, j) = std::move(*q);
    }
  if (mat_mul(a, inv) != RingMatrix::identity(a.rows()))
    throw std::logic_error("ring_inverse: inverse failed re-verification");
  inv.set_row_labels(a.col_labels());
  inv.set_col_labels(a.row_labels());
  return inv;
}

// Classical Smith reduction: bring a smallest nonzero entry to the corner,
// clear its row and column by integer division steps, and repair
// divisibility of the remaining block by adding rows.
SmithForm int_smith(IntMatrix a) {
  SmithForm out;
  const std::size_t rows = a.rows(), cols = a.cols();
  auto swap_cols = [&](std::size_t p, std::size_t q) {
    if (p == q) return;
    for (std::size_t i = 0; i < rows; ++i) std::swap(a(i, p), a(i, q));
  };

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // smallest nonzero magnitude in the trailing block
      std::size_t bi = rows, bj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a(i, j) != 0 && (bi == rows || mpz_cmpabs(a(i, j).get_mpz_t(), a(bi, bj).get_mpz_t()) < 0)) {
            bi = i;
            bj = j;
          }
      if (bi == rows) return out;
      a.swap_rows(t, bi);
      swap_cols(t, bj);

      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        for (std::size_t j = t; j < cols; ++j) a(i, j) -= q * a(t, j);
        if (a(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        for (std::size_t i = t; i < rows; ++i) a(i, j) -= q * a(i, t);
        if (a(t, j) != 0) dirty = true;
      }
      if (dirty) continue;

      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      for (std::size_t j = t; j < cols; ++j) a(t, j) += a(bad, j);
    }
    out.invariant_factors.push_back(abs(a(t, t)));
    ++out.rank;
  }
  return out;
}

bool int_in_column_lattice(const IntMatrix& a, const std::vector<Integer>& v) {
  if (v.size() != a.rows()) throw DimensionMismatch("int_in_column_lattice: vector length does not match row count");
  IntMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = v[i];
  }
  // Same rank means same rational span; then the lattices agree iff their
  // indices in that span (products of invariant factors) agree.
  const SmithForm s = int_smith(a);
  const SmithForm t = int_smith(std::move(aug));
  if (s.rank != t.rank) return false;
  Integer ps = 1, pt = 1;
  for (const auto& d : s.invariant_factors) ps *= d;
  for (const auto& d : t.invariant_factors) pt *= d;
  return ps == pt;
}

nlohmann::json to_json(const RingMatrix& a) {
  nlohmann::json entries = nlohmann::json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < a.cols(); ++j) row.push_back(to_json(a(i, j)));
    entries.push_back(std::move(row));
  }
  return {{"rows", a.rows()},
          {"cols", a.cols()},
          {"row_labels", a.row_labels()},
          {"col_labels", a.col_labels()},
          {"entries", std::move(entries)}};
}

RingMatrix ring_matrix_from_json(const nlohmann::json& j) {
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  RingMatrix m(rows, cols);
  const auto& entries = j.at("entries");
  if (entries.size() != rows) throw DimensionMismatch("matrix JSON: row count mismatch");
  for (std::size_t i = 0; i < rows; ++i) {
    if (entries[i].size() != cols) throw DimensionMismatch("matrix JSON: column count mismatch");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = poly_from_json(entries[i][c]);
  }
  if (j.contains("row_labels")) m.set_row_labels(j["row_labels"].get<std::vector<std::string>>());
  if (j.contains("col_labels")) m.set_col_labels(j["col_labels"].get<std::vector<std::string>>());
  return m;
}

}  // namespace lkb
