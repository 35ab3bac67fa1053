#include "pforms/lie_core.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace pforms {

namespace {

Matrix elementary(std::size_t n, std::size_t i, std::size_t j) {
  Matrix m(n, n);
  m(i, j) = 1;
  return m;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Vector flatten(const Matrix& m) {
  Vector v;
  v.reserve(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) v.push_back(m(r, c));
  }
  return v;
}

bool lex_less(const Vector& a, const Vector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

bool lex_positive(const Vector& v) {
  for (const auto& x : v) {
    if (sgn(x) != 0) return sgn(x) > 0;
  }
  return false;
}

// Characteristic polynomial det(xI - A), coefficients from the constant term up
// (Faddeev-LeVerrier).
std::vector<Rational> characteristic_polynomial(const Matrix& a) {
  const std::size_t n = a.rows();
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  Matrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    Matrix am = a * m;
    for (std::size_t i = 0; i < n; ++i) am(i, i) += c[n - k + 1];
    m = am;
    c[n - k] = -(a * m).trace() / Rational(static_cast<long>(k));
  }
  return c;
}

std::vector<mpz_class> divisors(const mpz_class& value) {
  mpz_class v = abs(value);
  if (v > mpz_class("1000000000000")) {
    throw InvalidArgument("eigenvalue search: coefficient too large for rational root enumeration");
  }
  std::vector<mpz_class> out;
  for (mpz_class d = 1; d * d <= v; ++d) {
    if (v % d == 0) {
      out.push_back(d);
      if (d * d != v) out.push_back(v / d);
    }
  }
  return out;
}

Rational evaluate(const std::vector<Rational>& poly, const Rational& x) {
  Rational acc = 0;
  for (std::size_t i = poly.size(); i-- > 0;) acc = acc * x + poly[i];
  return acc;
}

std::vector<Rational> deflate(const std::vector<Rational>& poly, const Rational& root) {
  const std::size_t n = poly.size() - 1;
  std::vector<Rational> q(n);
  Rational carry = 0;
  for (std::size_t i = n; i-- > 0;) {
    carry = poly[i + 1] + carry * root;
    q[i] = carry;
  }
  return q;
}

// All eigenvalues of a (with multiplicity), which must be rational.
std::vector<Rational> rational_eigenvalues(const Matrix& a) {
  std::vector<Rational> poly = characteristic_polynomial(a);
  std::vector<Rational> roots;
  while (poly.size() > 1 && sgn(poly[0]) == 0) {
    roots.push_back(0);
    poly.erase(poly.begin());
  }
  if (poly.size() > 1) {
    mpz_class common = 1;
    for (const auto& c : poly) common = lcm(common, c.get_den());
    std::vector<mpz_class> ints;
    for (const auto& c : poly) ints.push_back(mpz_class(c * common));
    std::vector<Rational> candidates;
    for (const auto& p : divisors(ints.front())) {
      for (const auto& q : divisors(ints.back())) {
        Rational r(p, q);
        r.canonicalize();
        candidates.push_back(r);
        candidates.push_back(-r);
      }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const auto& r : candidates) {
      while (poly.size() > 1 && sgn(evaluate(poly, r)) == 0) {
        roots.push_back(r);
        poly = deflate(poly, r);
      }
    }
  }
  if (poly.size() > 1) {
    throw InvalidArgument(
        "restricted roots: ad(a0) has non-rational eigenvalues; this realization is unsupported");
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// Coordinates of vectors known to lie in span(columns of s).
Matrix restricted_operator(const Matrix& op, const Matrix& s) {
  const Matrix image = op * s;
  Matrix aug(s.rows(), s.cols() + image.cols());
  for (std::size_t r = 0; r < s.rows(); ++r) {
    for (std::size_t c = 0; c < s.cols(); ++c) aug(r, c) = s(r, c);
    for (std::size_t c = 0; c < image.cols(); ++c) aug(r, s.cols() + c) = image(r, c);
  }
  std::vector<std::size_t> pivots;
  const Matrix red = rref(aug, &pivots);
  if (pivots.size() != s.cols() || (!pivots.empty() && pivots.back() >= s.cols())) {
    throw ConsistencyError("restricted roots: subspace is not invariant under ad(a0)");
  }
  Matrix out(s.cols(), image.cols());
  for (std::size_t i = 0; i < s.cols(); ++i) {
    for (std::size_t c = 0; c < image.cols(); ++c) out(i, c) = red(i, s.cols() + c);
  }
  return out;
}

struct JointSpace {
  Vector values;
  std::vector<Vector> basis;
};

}  // namespace

std::string AlgebraSpec::name() const {
  if (family == Family::so) return "so(" + std::to_string(size) + ",1)";
  return "sl(" + std::to_string(size) + ",R)";
}

Vector LieAlgebra::bracket(const Vector& x, const Vector& y) const { return ad(x) * y; }

Matrix LieAlgebra::ad(const Vector& x) const {
  if (x.size() != dimension()) throw InvalidArgument("ad: coordinate vector has wrong length");
  Matrix m(dimension(), dimension());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) != 0) m = m + ad_basis[i].scaled(x[i]);
  }
  return m;
}

Matrix LieAlgebra::to_matrix(const Vector& x) const {
  Matrix m(matrix_size, matrix_size);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) != 0) m = m + basis[i].scaled(x[i]);
  }
  return m;
}

Vector LieAlgebra::coordinates(const Matrix& m) const {
  const Vector flat = flatten(m);
  Vector picked(solver_rows_.size());
  for (std::size_t i = 0; i < solver_rows_.size(); ++i) picked[i] = flat[solver_rows_[i]];
  Vector x = coordinate_solver_ * picked;
  if (!(to_matrix(x) == m)) throw InvalidArgument("matrix is not in the span of the basis");
  return x;
}

Vector LieAlgebra::k_part(const Vector& x) const {
  return scale(Rational(1, 2), add(x, apply_theta(x)));
}

Vector LieAlgebra::q_part(const Vector& x) const {
  return scale(Rational(1, 2), sub(x, apply_theta(x)));
}

LieAlgebra algebra_from_matrices(std::string name, std::vector<Matrix> basis,
                                 std::vector<Vector> a0_hint) {
  LieAlgebra g;
  g.name = std::move(name);
  g.matrix_size = basis.front().rows();
  g.basis = std::move(basis);
  g.a0_hint = std::move(a0_hint);
  const std::size_t dim = g.basis.size();

  std::vector<Vector> flats;
  for (const auto& b : g.basis) flats.push_back(flatten(b));
  const std::size_t flat_len = flats.front().size();
  // Pivot columns of the row-stacked basis select entries that determine coordinates.
  std::vector<std::size_t> pivots;
  rref(Matrix::from_rows(flats, flat_len), &pivots);
  if (pivots.size() != dim) throw InvalidArgument("basis matrices are linearly dependent");
  Matrix sub_block(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) sub_block(r, c) = flats[c][pivots[r]];
  }
  g.coordinate_solver_ = inverse(sub_block);
  g.solver_rows_ = pivots;

  g.ad_basis.assign(dim, Matrix(dim, dim));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      const Vector c = g.coordinates(commutator(g.basis[i], g.basis[j]));
      for (std::size_t k = 0; k < dim; ++k) g.ad_basis[i](k, j) = c[k];
    }
  }

  g.killing = Matrix(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i; j < dim; ++j) {
      const Rational b = (g.ad_basis[i] * g.ad_basis[j]).trace();
      g.killing(i, j) = b;
      g.killing(j, i) = b;
    }
  }

  g.theta = Matrix(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    const Vector c = g.coordinates(g.basis[j].transpose().scaled(-1));
    for (std::size_t k = 0; k < dim; ++k) g.theta(k, j) = c[k];
  }
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      if (i != j && sgn(g.theta(i, j)) != 0) {
        throw InvalidArgument("basis is not adapted to the Cartan decomposition");
      }
    }
    if (g.theta(i, i) == 1) {
      if (!g.q_indices.empty()) throw InvalidArgument("basis must list k before q");
      g.k_indices.push_back(i);
    } else if (g.theta(i, i) == -1) {
      g.q_indices.push_back(i);
    } else {
      throw InvalidArgument("basis is not adapted to the Cartan decomposition");
    }
  }
  return g;
}

LieAlgebra build_algebra(const AlgebraSpec& spec) {
  std::vector<Matrix> basis;
  std::vector<Vector> a0;
  if (spec.family == Family::so) {
    if (spec.size < 2) throw InvalidArgument("so(p,1) requires p >= 2 (p = n + 1 with n >= 1)");
    const auto p = static_cast<std::size_t>(spec.size);
    const std::size_t n = p + 1;
    const std::size_t t = p;  // time coordinate
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = i + 1; j < p; ++j) basis.push_back(elementary(n, i, j) - elementary(n, j, i));
    }
    const std::size_t k_dim = basis.size();
    for (std::size_t i = 0; i < p; ++i) basis.push_back(elementary(n, i, t) + elementary(n, t, i));
    // a0 = span(E_{0,t} + E_{t,0}).
    a0.push_back(unit_vector(basis.size(), k_dim));
  } else {
    if (spec.size < 2) throw InvalidArgument("sl(n,R) requires n >= 2");
    const auto n = static_cast<std::size_t>(spec.size);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) basis.push_back(elementary(n, i, j) - elementary(n, j, i));
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) basis.push_back(elementary(n, i, j) + elementary(n, j, i));
    }
    const std::size_t diag_start = basis.size();
    for (std::size_t i = 0; i + 1 < n; ++i) basis.push_back(elementary(n, i, i) - elementary(n, i + 1, i + 1));
    // a0 = traceless diagonal matrices.
    for (std::size_t i = 0; i + 1 < n; ++i) a0.push_back(unit_vector(basis.size(), diag_start + i));
  }
  return algebra_from_matrices(spec.name(), std::move(basis), std::move(a0));
}

Rational killing_form(const LieAlgebra& algebra, const Vector& x, const Vector& y) {
  if (x.size() != algebra.dimension() || y.size() != algebra.dimension()) {
    throw InvalidArgument("killing_form: coordinate vectors must have length " +
                          std::to_string(algebra.dimension()));
  }
  return dot(x, algebra.killing * y);
}

Rational theta_inner(const LieAlgebra& algebra, const Vector& x, const Vector& y) {
  return -killing_form(algebra, x, algebra.apply_theta(y));
}

std::size_t RootDatum::root_index(const Vector& values) const {
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (roots[i].values == values) return i;
  }
  return roots.size();
}

RootDatum restricted_roots(const LieAlgebra& algebra) {
  const std::size_t dim = algebra.dimension();
  RootDatum out;
  out.a0_basis = algebra.a0_hint;
  if (out.a0_basis.empty()) throw InvalidArgument("restricted roots: algebra carries no a0 generators");
  for (const auto& h : out.a0_basis) {
    if (!is_zero(algebra.k_part(h))) throw InvalidArgument("restricted roots: a0 generator not in q");
    for (const auto& h2 : out.a0_basis) {
      if (!is_zero(algebra.bracket(h, h2))) throw InvalidArgument("restricted roots: a0 is not abelian");
    }
  }

  std::vector<JointSpace> spaces(1);
  for (std::size_t i = 0; i < dim; ++i) spaces[0].basis.push_back(unit_vector(dim, i));
  for (const auto& h : out.a0_basis) {
    const Matrix ad_h = algebra.ad(h);
    std::vector<JointSpace> refined;
    for (const auto& space : spaces) {
      const Matrix s = Matrix::from_columns(space.basis, dim);
      const Matrix restricted = restricted_operator(ad_h, s);
      std::vector<Rational> eig = rational_eigenvalues(restricted);
      eig.erase(std::unique(eig.begin(), eig.end()), eig.end());
      std::size_t covered = 0;
      for (const auto& lambda : eig) {
        Matrix shifted = restricted;
        for (std::size_t i = 0; i < shifted.rows(); ++i) shifted(i, i) -= lambda;
        JointSpace next;
        next.values = space.values;
        next.values.push_back(lambda);
        for (const auto& c : nullspace(shifted)) next.basis.push_back(s * c);
        covered += next.basis.size();
        refined.push_back(std::move(next));
      }
      if (covered != space.basis.size()) {
        throw InvalidArgument("restricted roots: ad(a0) is not diagonalizable over Q");
      }
    }
    spaces = std::move(refined);
  }

  std::vector<Vector> centralizer;
  for (auto& space : spaces) {
    if (is_zero(space.values)) {
      centralizer = space.basis;
      continue;
    }
    RestrictedRoot root;
    root.values = space.values;
    root.space = span_basis(space.basis, dim);
    root.positive = lex_positive(root.values);
    out.roots.push_back(std::move(root));
  }
  std::sort(out.roots.begin(), out.roots.end(),
            [](const RestrictedRoot& a, const RestrictedRoot& b) { return lex_less(a.values, b.values); });

  std::vector<Vector> k_parts;
  std::vector<Vector> q_parts;
  for (const auto& z : centralizer) {
    k_parts.push_back(algebra.k_part(z));
    q_parts.push_back(algebra.q_part(z));
  }
  out.m0_basis = span_basis(k_parts, dim);
  if (span_basis(q_parts, dim) != span_basis(out.a0_basis, dim)) {
    throw InvalidArgument("restricted roots: a0 is not maximal abelian in q");
  }

  const std::size_t rank_a = out.a0_basis.size();
  for (std::size_t i = 0; i < out.roots.size(); ++i) {
    if (!out.roots[i].positive) continue;
    bool decomposable = false;
    for (std::size_t a = 0; a < out.roots.size() && !decomposable; ++a) {
      if (!out.roots[a].positive) continue;
      for (std::size_t b = 0; b < out.roots.size(); ++b) {
        if (out.roots[b].positive && add(out.roots[a].values, out.roots[b].values) == out.roots[i].values) {
          decomposable = true;
          break;
        }
      }
    }
    if (!decomposable) out.simple.push_back(i);
  }
  if (out.simple.size() != rank_a) {
    throw ConsistencyError("restricted roots: number of simple roots differs from dim a0");
  }

  Matrix simple_matrix(rank_a, rank_a);
  for (std::size_t c = 0; c < rank_a; ++c) {
    for (std::size_t r = 0; r < rank_a; ++r) simple_matrix(r, c) = out.roots[out.simple[c]].values[r];
  }
  for (const auto& root : out.roots) {
    out.simple_coefficients.push_back(solve_unique(simple_matrix, root.values));
  }

  out.rho = zero_vector(rank_a);
  for (const auto& root : out.roots) {
    if (root.positive) {
      out.rho = add(out.rho, scale(Rational(static_cast<long>(root.space.size())) / 2, root.values));
    }
  }
  return out;
}

std::string check_jacobi(const LieAlgebra& g) {
  const std::size_t n = g.dimension();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // ad([b_i, b_j]) = [ad b_i, ad b_j] is equivalent to the Jacobi identity.
      const Matrix lhs = g.ad(g.ad_basis[i].col(j));
      const Matrix rhs = g.ad_basis[i] * g.ad_basis[j] - g.ad_basis[j] * g.ad_basis[i];
      if (!(lhs == rhs)) {
        std::ostringstream os;
        os << "Jacobi identity fails for basis pair (" << i << ", " << j << ")";
        return os.str();
      }
    }
  }
  return {};
}

std::string check_theta(const LieAlgebra& g) {
  const std::size_t n = g.dimension();
  if (!(g.theta * g.theta == Matrix::identity(n))) return "theta is not an involution";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Vector bi = unit_vector(n, i);
      const Vector bj = unit_vector(n, j);
      if (g.bracket(g.apply_theta(bi), g.apply_theta(bj)) != g.apply_theta(g.bracket(bi, bj))) {
        return "theta is not an automorphism at (" + std::to_string(i) + ", " + std::to_string(j) + ")";
      }
    }
  }
  return {};
}

std::string check_killing(const LieAlgebra& g) {
  const std::size_t n = g.dimension();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (g.killing(i, j) != g.killing(j, i)) return "Killing form is not symmetric";
      const Vector bi = unit_vector(n, i);
      const Vector bj = unit_vector(n, j);
      if (killing_form(g, g.apply_theta(bi), g.apply_theta(bj)) != g.killing(i, j)) {
        return "Killing form is not theta-invariant";
      }
      for (std::size_t k = 0; k < n; ++k) {
        const Vector bk = unit_vector(n, k);
        if (killing_form(g, g.bracket(bi, bj), bk) != killing_form(g, bi, g.bracket(bj, bk))) {
          return "Killing form is not ad-invariant";
        }
      }
    }
  }
  auto restricted = [&](const std::vector<std::size_t>& idx) {
    Matrix m(idx.size(), idx.size());
    for (std::size_t a = 0; a < idx.size(); ++a) {
      for (std::size_t b = 0; b < idx.size(); ++b) m(a, b) = g.killing(idx[a], idx[b]);
    }
    return m;
  };
  if (!is_positive_definite(restricted(g.k_indices).scaled(-1))) return "Killing form not negative definite on k";
  if (!is_positive_definite(restricted(g.q_indices))) return "Killing form not positive definite on q";
  for (auto a : g.k_indices) {
    for (auto b : g.q_indices) {
      if (sgn(g.killing(a, b)) != 0) return "k and q are not Killing-orthogonal";
    }
  }
  return {};
}

std::string check_root_datum(const LieAlgebra& g, const RootDatum& r) {
  const std::size_t dim = g.dimension();
  std::vector<Vector> all = r.m0_basis;
  all.insert(all.end(), r.a0_basis.begin(), r.a0_basis.end());
  for (const auto& root : r.roots) {
    for (const auto& x : root.space) {
      for (std::size_t h = 0; h < r.a0_basis.size(); ++h) {
        if (g.bracket(r.a0_basis[h], x) != scale(root.values[h], x)) {
          return "root space vector is not an ad(a0)-eigenvector with the root's eigenvalue";
        }
      }
      all.push_back(x);
    }
  }
  if (all.size() != dim) return "dimensions of m0, a0 and root spaces do not add up to dim g";
  if (rank(Matrix::from_rows(all, dim)) != dim) return "m0 + a0 + root spaces is not a direct sum";
  Vector rho = zero_vector(r.a0_basis.size());
  for (const auto& root : r.roots) {
    if (root.positive) rho = add(rho, scale(Rational(static_cast<long>(root.space.size())) / 2, root.values));
  }
  if (rho != r.rho) return "rho differs from half the dimension-weighted sum of positive roots";
  for (const auto& z : r.m0_basis) {
    if (!is_zero(g.q_part(z))) return "m0 is not contained in k";
    for (const auto& h : r.a0_basis) {
      if (!is_zero(g.bracket(z, h))) return "m0 does not centralize a0";
    }
  }
  return {};
}

}  // namespace pforms
