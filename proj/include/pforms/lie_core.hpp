#ifndef PFORMS_LIE_CORE_HPP
#define PFORMS_LIE_CORE_HPP

// Real semisimple Lie algebras in an explicit matrix realization: structure
// constants, Killing form, Cartan involution and restricted root data, all in
// exact rational arithmetic.

#include "pforms/exact.hpp"

#include <string>
#include <vector>

namespace pforms {

enum class Family { so, sl };

/// Selects a shipped realization: so(size, 1) with size = n + 1 >= 2, or sl(size, R) with size >= 2.
struct AlgebraSpec {
  Family family = Family::so;
  int size = 2;

  std::string name() const;
};

/// A Lie algebra given by a basis of square matrices.
///
/// Coordinates are always taken with respect to `basis`, which lists the
/// k-basis first and then the q-basis of the Cartan decomposition.
struct LieAlgebra {
  std::string name;
  std::size_t matrix_size = 0;
  std::vector<Matrix> basis;
  /// ad_basis[i] is the matrix of ad(b_i); column j holds the coordinates of [b_i, b_j],
  /// so structure_constant(i, j, k) = ad_basis[i](k, j).
  std::vector<Matrix> ad_basis;
  Matrix killing;
  Matrix theta;
  std::vector<std::size_t> k_indices;
  std::vector<std::size_t> q_indices;
  /// Documented generators of the maximal abelian subalgebra used by restricted_roots.
  std::vector<Vector> a0_hint;

  std::size_t dimension() const { return basis.size(); }
  const Rational& structure_constant(std::size_t i, std::size_t j, std::size_t k) const {
    return ad_basis[i](k, j);
  }
  Vector bracket(const Vector& x, const Vector& y) const;
  Matrix ad(const Vector& x) const;
  Vector apply_theta(const Vector& x) const { return theta * x; }
  /// The matrix realization of a coordinate vector.
  Matrix to_matrix(const Vector& x) const;
  /// Coordinates of a matrix lying in the span of the basis.
  Vector coordinates(const Matrix& m) const;

  /// Projections onto k and q along the Cartan decomposition.
  Vector k_part(const Vector& x) const;
  Vector q_part(const Vector& x) const;

 private:
  friend LieAlgebra build_algebra(const AlgebraSpec& spec);
  friend LieAlgebra algebra_from_matrices(std::string, std::vector<Matrix>, std::vector<Vector>);
  Matrix coordinate_solver_;  // left inverse of the flattened basis
  std::vector<std::size_t> solver_rows_;
};

LieAlgebra build_algebra(const AlgebraSpec& spec);

/// Assembles a LieAlgebra from basis matrices closed under the commutator whose
/// Cartan involution is X -> -X^T. The basis must already be ordered k first, then q.
LieAlgebra algebra_from_matrices(std::string name, std::vector<Matrix> basis,
                                 std::vector<Vector> a0_hint);

/// tr(ad X ad Y) computed from the structure constants.
Rational killing_form(const LieAlgebra& algebra, const Vector& x, const Vector& y);

/// B_theta(X, Y) = -B(X, theta Y), positive definite on g.
Rational theta_inner(const LieAlgebra& algebra, const Vector& x, const Vector& y);

struct RestrictedRoot {
  /// Values on a0_basis.
  Vector values;
  std::vector<Vector> space;
  bool positive = false;
};

struct RootDatum {
  std::vector<Vector> a0_basis;
  /// Nonzero restricted roots in ascending lexicographic order of `values`.
  std::vector<RestrictedRoot> roots;
  /// Indices into `roots` of the simple roots, ascending lexicographic order.
  std::vector<std::size_t> simple;
  /// For each root, its coefficients over the simple roots (all >= 0 or all <= 0).
  std::vector<std::vector<Rational>> simple_coefficients;
  Vector rho;
  std::vector<Vector> m0_basis;

  std::size_t root_index(const Vector& values) const;
};

RootDatum restricted_roots(const LieAlgebra& algebra);

/// Exhaustive structural checks; each returns an empty string on success or a
/// description of the first violation.
std::string check_jacobi(const LieAlgebra& algebra);
std::string check_theta(const LieAlgebra& algebra);
std::string check_killing(const LieAlgebra& algebra);
std::string check_root_datum(const LieAlgebra& algebra, const RootDatum& roots);

}  // namespace pforms

#endif
