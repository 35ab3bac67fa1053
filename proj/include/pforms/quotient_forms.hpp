#ifndef PFORMS_QUOTIENT_FORMS_HPP
#define PFORMS_QUOTIENT_FORMS_HPP

// The M-representation g/m with its bidegree splitting, and the bigraded
// exterior algebra of forms on it: wedge, the invariant-form differential and
// its K/P parts, the K-Hodge star, the K-codifferential and the m-invariance
// solver.
//
// Basis of g/m, in order:
//   (1,0): an orthogonal frame of (g/m)_0 = g_0 cap q starting with E, then
//          F_X = X + m for X running over the basis of g_1, ..., g_k;
//   (0,1): G_Y = Y + theta(Y) + m for Y running over the basis of g_-1, ..., g_-k.
// Forms are expanded in the dual basis; a monomial is a strictly increasing
// index tuple and monomials are ordered lexicographically.

#include "pforms/grading.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace pforms {

/// coefficient * sqrt(radicand).
struct Surd {
  Rational coefficient;
  Rational radicand = 1;

  bool is_zero() const { return sgn(coefficient) == 0; }
  /// Exact comparison of two surds.
  bool operator==(const Surd& other) const;
  double to_double() const;
};

/// Writes sqrt(value) = factor * sqrt(r) with r a positive integer free of
/// small square factors; returns {factor, r}.
std::pair<Rational, Rational> normalize_radical(const Rational& value);

/// Slice membership of a basis vector of g/m.
struct BasisSource {
  /// Grading degree i of the vector X it comes from (F_X, G_Y, or (g/m)_0).
  int degree = 0;
  /// X for (1,0) vectors, Y for (0,1) vectors.
  Vector source;
};

struct QuotientModule {
  LieAlgebra algebra;
  Grading grading;
  std::vector<Vector> m_basis;
  std::size_t dimension = 0;  // dim g - dim m
  std::size_t dim10 = 0;
  std::size_t dim01 = 0;
  std::size_t n = 0;  // dim g/p
  std::size_t d = 0;  // dim (g/m)_0
  std::vector<BasisSource> sources;
  /// Representative in g of every basis vector (columns of the section map).
  std::vector<Vector> section;
  /// dimension x dim g, kernel m.
  Matrix projection;
  Matrix theta_m;
  /// i -> projector onto (g/m)_i in g/m coordinates.
  std::map<int, Matrix> slice_projectors;
  Matrix projector10;
  Matrix projector01;
  Vector grading_element;
  /// Coordinates of proj([s_a, s_b]), indexed [a][b].
  std::vector<std::vector<Vector>> bracket_table;
  /// Induced action of each m_basis element on g/m.
  std::vector<Matrix> m_action;
  /// a0 acting on the (0,1) factor through (g/m)^{0,1} = g/p, G_Y -> G_[H,Y].
  std::vector<Matrix> a0_action01;

  Vector project(const Vector& x) const { return projection * x; }
  /// F_X for X in p_+ and G_Y for Y in g_-.
  Vector f_vector(const Vector& x) const { return project(x); }
  Vector g_vector(const Vector& y) const { return project(add(y, algebra.apply_theta(y))); }
};

QuotientModule quotient_module(const LieAlgebra& algebra, const Grading& grading);

/// Exact checks of the QuotientModule invariants; empty string on success.
std::string check_quotient_module(const QuotientModule& qm);

/// B_theta on (g/m)^{1,0} through (g/m)^{1,0} = p/m -> g/k = q.
struct MetricData {
  Matrix gram;
  Matrix gram_inverse;
  Rational gram_det;
  /// Orthogonal frames (coordinates in g/m) of (g/m)^{1,0} and (g/m)_0, in basis orientation.
  std::vector<Vector> frame10;
  std::vector<Vector> frame0;
};

MetricData metric_data(const QuotientModule& qm);

/// Sparse expansion over all of Lambda (g/m)^*, keyed by index bitmask.
using SparseForm = std::map<std::uint32_t, Rational>;

/// An alternating form of pure bidegree (p, q), value sqrt(radicand) * sum coeff_I e^I.
class BigradedForm {
 public:
  BigradedForm() = default;
  BigradedForm(std::size_t dim10, std::size_t dim01, int p, int q);

  int p() const { return p_; }
  int q() const { return q_; }
  std::size_t dim10() const { return dim10_; }
  std::size_t dim01() const { return dim01_; }
  /// Number of monomials of this bidegree.
  std::size_t size() const { return coeffs_.size(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  std::vector<Rational>& coefficients() { return coeffs_; }
  const Rational& radicand() const { return radicand_; }
  /// Multiplies the value by sqrt(value); keeps the radicand normalized.
  void multiply_by_sqrt(const Rational& value);
  void set_radicand(const Rational& r) { radicand_ = r; }

  /// Global index tuple of monomial i.
  std::vector<std::size_t> monomial(std::size_t i) const;
  /// Index of a strictly increasing global index tuple of this bidegree.
  std::size_t index_of(const std::vector<std::size_t>& tuple) const;
  Rational& operator[](const std::vector<std::size_t>& tuple) { return coeffs_[index_of(tuple)]; }
  const Rational& operator[](const std::vector<std::size_t>& tuple) const { return coeffs_[index_of(tuple)]; }

  bool is_zero() const;
  /// Evaluation on p + q vectors of g/m.
  Surd evaluate(const std::vector<Vector>& vectors) const;

  SparseForm to_sparse() const;
  static BigradedForm from_sparse(const SparseForm& sparse, std::size_t dim10, std::size_t dim01, int p, int q,
                                  const Rational& radicand = 1);

  BigradedForm operator+(const BigradedForm& other) const;
  BigradedForm operator-(const BigradedForm& other) const;
  BigradedForm scaled(const Rational& s) const;
  /// Same value, including the radical factor.
  bool equals(const BigradedForm& other) const;

 private:
  std::size_t dim10_ = 0;
  std::size_t dim01_ = 0;
  int p_ = 0;
  int q_ = 0;
  std::vector<Rational> coeffs_;
  Rational radicand_ = 1;
};

/// The constant (0,0)-form with value c.
BigradedForm constant_form(const QuotientModule& qm, const Rational& c);
/// The dual covector e^i.
BigradedForm dual_covector(const QuotientModule& qm, std::size_t i);

BigradedForm wedge(const BigradedForm& a, const BigradedForm& b);

struct InvarianceCertificate {
  bool invariant = true;
  /// First m_basis direction with a nonzero Lie derivative.
  std::size_t failing_direction = 0;
  /// Nonzero coefficients of L_Z omega for that direction.
  std::vector<std::pair<std::vector<std::size_t>, Rational>> residual;
};

/// L_Z omega for the endomorphism `action` of g/m (derivation extension of the dual action).
BigradedForm lie_derivative(const Matrix& action, const BigradedForm& form);
InvarianceCertificate is_m_invariant(const QuotientModule& qm, const BigradedForm& form);

/// Bidegree components of d(omega), ordered (p+1, q) then (p, q+1). Throws
/// InvalidArgument when omega is not m-invariant.
std::vector<BigradedForm> differential(const QuotientModule& qm, const BigradedForm& form);
BigradedForm d_k(const QuotientModule& qm, const BigradedForm& form);
BigradedForm d_p(const QuotientModule& qm, const BigradedForm& form);

BigradedForm hodge_star_k(const QuotientModule& qm, const MetricData& metric, const BigradedForm& form);
BigradedForm codifferential_k(const QuotientModule& qm, const MetricData& metric, const BigradedForm& form);

/// Exact basis of the m-invariant forms of bidegree (p, q).
std::vector<BigradedForm> invariant_forms_basis(const QuotientModule& qm, int p, int q);

/// Number of k-subsets of an n-set (0 outside the valid range).
std::size_t binomial(std::size_t n, int k);

}  // namespace pforms

#endif
