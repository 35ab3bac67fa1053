#ifndef PFORMS_EXACT_HPP
#define PFORMS_EXACT_HPP

// Exact rational scalars, vectors and dense matrices, with the Gaussian
// elimination routines the structural modules are built on.

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pforms {

using Rational = mpq_class;
using Vector = std::vector<Rational>;

/// Raised when an input violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an internal consistency check fails (a broken invariant).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& value);

Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t i);
bool is_zero(const Vector& v);
Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scale(const Rational& s, const Vector& v);
Rational dot(const Vector& a, const Vector& b);

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);
  /// Builds a matrix whose columns are the given vectors.
  static Matrix from_columns(const std::vector<Vector>& columns, std::size_t height);
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t width);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Vector col(std::size_t c) const;

  Matrix transpose() const;
  Matrix operator*(const Matrix& other) const;
  Vector operator*(const Vector& v) const;
  Matrix operator+(const Matrix& other) const;
  Matrix operator-(const Matrix& other) const;
  Matrix scaled(const Rational& s) const;
  bool operator==(const Matrix& other) const;
  bool is_zero() const;
  Rational trace() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Reduced row echelon form; `pivots` receives the pivot column of each nonzero row.
Matrix rref(Matrix m, std::vector<std::size_t>* pivots = nullptr);
std::size_t rank(const Matrix& m);
/// Basis of {x : m x = 0}, one vector per free column, in rref-canonical form.
std::vector<Vector> nullspace(const Matrix& m);
Rational determinant(Matrix m);
/// Throws ConsistencyError when m is singular.
Matrix inverse(const Matrix& m);
/// Unique solution of m x = b; throws ConsistencyError if none or not unique.
Vector solve_unique(const Matrix& m, const Vector& b);
/// Independent subset spanning the same space, in rref-canonical form.
std::vector<Vector> span_basis(const std::vector<Vector>& vectors, std::size_t dim);
/// True iff every leading principal minor is positive.
bool is_positive_definite(const Matrix& symmetric);

/// True iff value is the square of a rational number.
bool is_rational_square(const Rational& value);

}  // namespace pforms

#endif
