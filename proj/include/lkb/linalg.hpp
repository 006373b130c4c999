#pragma once

// Dense exact linear algebra over Z[H], Q(x,y) and Z.
//
// Elimination over Q(x,y) never works with fractions: each row is first
// multiplied by its denominators, then reduced by fraction-free Gauss-Jordan
// (Bareiss) over Z[H], where every division is exact. Pivots are chosen by
// scanning columns left to right and taking the first nonzero row, so bases
// and solutions are reproducible.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lkb/ring.hpp"

namespace lkb {

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  const std::vector<std::string>& row_labels() const { return row_labels_; }
  const std::vector<std::string>& col_labels() const { return col_labels_; }
  void set_row_labels(std::vector<std::string> labels) { row_labels_ = checked_labels(std::move(labels), rows_); }
  void set_col_labels(std::vector<std::string> labels) { col_labels_ = checked_labels(std::move(labels), cols_); }

  // Entries and shape only; labels are annotations.
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  static std::vector<std::string> checked_labels(std::vector<std::string> labels, std::size_t n);

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
};

using RingMatrix = Matrix<Poly>;
using FieldMatrix = Matrix<RationalFunction>;
using IntMatrix = Matrix<Integer>;
using FieldVector = std::vector<RationalFunction>;

// Row-parallel product (OpenMP). Bit-identical to mat_mul_serial.
template <class T>
Matrix<T> mat_mul(const Matrix<T>& a, const Matrix<T>& b);
template <class T>
Matrix<T> mat_mul_serial(const Matrix<T>& a, const Matrix<T>& b);

FieldMatrix to_field(const RingMatrix& a);
// Entrywise evaluation; every value must be an integer.
IntMatrix specialize(const RingMatrix& a, const Rational& x0, const Rational& y0);

struct ClearedRows {
  RingMatrix matrix;        // row i equals scale[i] times row i of the input
  std::vector<Poly> scale;  // nonzero
};
ClearedRows clear_denominators(const FieldMatrix& a);

struct RowEchelon {
  RingMatrix form;                      // fraction-free reduced row echelon form
  std::vector<std::size_t> pivot_cols;  // pivot of row r sits at (r, pivot_cols[r])
  Poly pivot = 1;                       // every pivot entry equals this value
  int swap_sign = 1;                    // sign of the row permutation applied
};

// Fraction-free Gauss-Jordan. Rows of each elimination step are updated in
// parallel; the result is bit-identical to the serial version.
RowEchelon fraction_free_rref(RingMatrix m);
RowEchelon fraction_free_rref_serial(RingMatrix m);

// Basis of the right kernel: one vector per non-pivot column, with a 1 in
// that column. Each returned vector is re-verified.
std::vector<FieldVector> field_kernel(const FieldMatrix& a);
std::size_t field_rank(const FieldMatrix& a);
std::optional<FieldVector> field_solve(const FieldMatrix& a, const FieldVector& b);
// One elimination for all right-hand sides; nullopt where inconsistent.
std::vector<std::optional<FieldVector>> field_solve_many(const FieldMatrix& a, const std::vector<FieldVector>& bs);
RationalFunction field_det(const FieldMatrix& a);
FieldVector mat_vec(const FieldMatrix& a, const FieldVector& v);

// Inverse over Q(x,y) of a square matrix; nullopt if singular.
std::optional<FieldMatrix> field_inverse(const FieldMatrix& a);
// Inverse with Z[H] entries; nullopt if the inverse over Q(x,y) is not
// integral. Throws if a is singular.
std::optional<RingMatrix> ring_inverse(const RingMatrix& a);

struct SmithForm {
  std::vector<Integer> invariant_factors;  // positive, each divides the next
  std::size_t rank = 0;
};
SmithForm int_smith(IntMatrix a);

// Whether v is an integer combination of the columns of a.
bool int_in_column_lattice(const IntMatrix& a, const std::vector<Integer>& v);

nlohmann::json to_json(const RingMatrix& a);
RingMatrix ring_matrix_from_json(const nlohmann::json& j);

extern template class Matrix<Poly>;
extern template class Matrix<RationalFunction>;
extern template class Matrix<Integer>;

}  // namespace lkb
