#include "pforms/quotient_forms.hpp"

#include <bit>
#include <cmath>
#include <functional>

namespace pforms {

namespace {

std::size_t subset_rank(const std::vector<std::size_t>& c, std::size_t n) {
  std::size_t r = 0;
  std::size_t next = 0;
  const std::size_t k = c.size();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = next; j < c[i]; ++j) r += binomial(n - 1 - j, static_cast<int>(k - 1 - i));
    next = c[i] + 1;
  }
  return r;
}

std::vector<std::size_t> subset_unrank(std::size_t r, std::size_t k, std::size_t n) {
  std::vector<std::size_t> c;
  std::size_t j = 0;
  for (std::size_t i = 0; i < k; ++i) {
    while (true) {
      const std::size_t block = binomial(n - 1 - j, static_cast<int>(k - 1 - i));
      if (r < block) break;
      r -= block;
      ++j;
    }
    c.push_back(j);
    ++j;
  }
  return c;
}

std::uint32_t mask_of(const std::vector<std::size_t>& tuple) {
  std::uint32_t m = 0;
  for (auto i : tuple) m |= (std::uint32_t{1} << i);
  return m;
}

std::vector<std::size_t> tuple_of(std::uint32_t mask) {
  std::vector<std::size_t> t;
  for (std::size_t i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1u) t.push_back(i);
  }
  return t;
}

// Sign of e^a ^ e^b rewritten as e^(a|b) in increasing order.
int wedge_sign(std::uint32_t a, std::uint32_t b) {
  int swaps = 0;
  for (std::uint32_t rest = b; rest != 0; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    swaps += std::popcount(a >> (j + 1));
  }
  return (swaps % 2 == 0) ? 1 : -1;
}

SparseForm wedge_sparse(const SparseForm& a, const SparseForm& b) {
  SparseForm out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      if (ma & mb) continue;
      Rational& slot = out[ma | mb];
      if (wedge_sign(ma, mb) > 0) {
        slot += ca * cb;
      } else {
        slot -= ca * cb;
      }
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    it = (sgn(it->second) == 0) ? out.erase(it) : std::next(it);
  }
  return out;
}

std::vector<Vector> gram_schmidt(const std::vector<Vector>& candidates,
                                 const std::function<Rational(const Vector&, const Vector&)>& inner) {
  std::vector<Vector> out;
  for (const auto& v : candidates) {
    Vector w = v;
    for (const auto& u : out) w = sub(w, scale(inner(v, u) / inner(u, u), u));
    if (!is_zero(w)) out.push_back(std::move(w));
  }
  return out;
}

bool in_span(const std::vector<Vector>& space, const Vector& v, std::size_t dim) {
  if (is_zero(v)) return true;
  if (space.empty()) return false;
  std::vector<Vector> extended = space;
  extended.push_back(v);
  return rank(Matrix::from_rows(extended, dim)) == rank(Matrix::from_rows(space, dim));
}

void require_same_shape(const BigradedForm& a, const BigradedForm& b) {
  if (a.p() != b.p() || a.q() != b.q() || a.dim10() != b.dim10() || a.dim01() != b.dim01()) {
    throw InvalidArgument("forms of different bidegree or module");
  }
}

}  // namespace

std::size_t binomial(std::size_t n, int k) {
  if (k < 0 || static_cast<std::size_t>(k) > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - static_cast<std::size_t>(k) + static_cast<std::size_t>(i)) / static_cast<std::size_t>(i);
  return r;
}

std::pair<Rational, Rational> normalize_radical(const Rational& value) {
  if (sgn(value) < 0) throw InvalidArgument("square root of a negative number");
  if (sgn(value) == 0) return {Rational(0), Rational(1)};
  mpz_class m = value.get_num() * value.get_den();
  mpz_class factor = 1;
  for (mpz_class p = 2; p * p <= m && p <= 100000; ++p) {
    const mpz_class sq = p * p;
    while (m % sq == 0) {
      m /= sq;
      factor *= p;
    }
  }
  if (mpz_perfect_square_p(m.get_mpz_t()) != 0) {
    factor *= sqrt(m);
    m = 1;
  }
  Rational f(factor, value.get_den());
  f.canonicalize();
  return {f, Rational(m)};
}

bool Surd::operator==(const Surd& other) const {
  if (sgn(coefficient) != sgn(other.coefficient)) return false;
  return coefficient * coefficient * radicand == other.coefficient * other.coefficient * other.radicand;
}

double Surd::to_double() const { return coefficient.get_d() * std::sqrt(radicand.get_d()); }

// ---------------------------------------------------------------------------
// QuotientModule

QuotientModule quotient_module(const LieAlgebra& algebra, const Grading& grading) {
  QuotientModule qm;
  qm.algebra = algebra;
  qm.grading = grading;
  const std::size_t dim = algebra.dimension();
  const auto& g0 = grading.component(0);

  std::vector<Vector> k_parts;
  std::vector<Vector> q_parts;
  for (const auto& x : g0) {
    k_parts.push_back(algebra.k_part(x));
    q_parts.push_back(algebra.q_part(x));
  }
  qm.m_basis = span_basis(k_parts, dim);

  auto inner = [&](const Vector& x, const Vector& y) { return theta_inner(algebra, x, y); };
  std::vector<Vector> zero_slice{grading.grading_element};
  zero_slice.insert(zero_slice.end(), q_parts.begin(), q_parts.end());
  zero_slice = gram_schmidt(zero_slice, inner);
  qm.d = zero_slice.size();

  for (const auto& z : zero_slice) qm.sources.push_back({0, z});
  for (int i = 1; i <= grading.depth; ++i) {
    for (const auto& x : grading.component(i)) qm.sources.push_back({i, x});
  }
  qm.dim10 = qm.sources.size();
  for (int i = 1; i <= grading.depth; ++i) {
    for (const auto& y : grading.component(-i)) qm.sources.push_back({-i, y});
  }
  qm.dimension = qm.sources.size();
  qm.dim01 = qm.dimension - qm.dim10;
  qm.n = qm.dim01;

  for (std::size_t a = 0; a < qm.dimension; ++a) {
    const auto& src = qm.sources[a];
    qm.section.push_back(a < qm.dim10 ? src.source : add(src.source, algebra.apply_theta(src.source)));
  }
  std::vector<Vector> full = qm.section;
  full.insert(full.end(), qm.m_basis.begin(), qm.m_basis.end());
  if (full.size() != dim) throw ConsistencyError("g/m basis and m basis do not add up to dim g");
  const Matrix full_inv = inverse(Matrix::from_columns(full, dim));
  qm.projection = Matrix(qm.dimension, dim);
  for (std::size_t r = 0; r < qm.dimension; ++r) {
    for (std::size_t c = 0; c < dim; ++c) qm.projection(r, c) = full_inv(r, c);
  }
  const Matrix section = Matrix::from_columns(qm.section, dim);

  qm.theta_m = qm.projection * algebra.theta * section;

  std::vector<Vector> graded;
  std::vector<int> graded_degree;
  for (const auto& [i, basis] : grading.components) {
    for (const auto& x : basis) {
      graded.push_back(x);
      graded_degree.push_back(i);
    }
  }
  const Matrix c = Matrix::from_columns(graded, dim);
  const Matrix c_inv = inverse(c);
  for (int i = -grading.depth; i <= grading.depth; ++i) {
    Matrix mask(dim, dim);
    for (std::size_t j = 0; j < dim; ++j) {
      if (graded_degree[j] == i) mask(j, j) = 1;
    }
    qm.slice_projectors[i] = qm.projection * c * mask * c_inv * section;
  }
  qm.projector10 = Matrix(qm.dimension, qm.dimension);
  qm.projector01 = Matrix(qm.dimension, qm.dimension);
  for (std::size_t a = 0; a < qm.dimension; ++a) {
    if (a < qm.dim10) {
      qm.projector10(a, a) = 1;
    } else {
      qm.projector01(a, a) = 1;
    }
  }
  qm.grading_element = qm.project(grading.grading_element);

  qm.bracket_table.assign(qm.dimension, std::vector<Vector>(qm.dimension));
  for (std::size_t a = 0; a < qm.dimension; ++a) {
    for (std::size_t b = 0; b < qm.dimension; ++b) {
      qm.bracket_table[a][b] = qm.project(algebra.bracket(qm.section[a], qm.section[b]));
    }
  }
  for (const auto& z : qm.m_basis) qm.m_action.push_back(qm.projection * algebra.ad(z) * section);

  {
    for (const auto& h : algebra.a0_hint) {
      Matrix act(qm.dimension, qm.dimension);
      for (std::size_t b = qm.dim10; b < qm.dimension; ++b) {
        const Vector image = qm.g_vector(algebra.bracket(h, qm.sources[b].source));
        for (std::size_t r = 0; r < qm.dimension; ++r) act(r, b) = image[r];
      }
      qm.a0_action01.push_back(std::move(act));
    }
  }
  return qm;
}

std::string check_quotient_module(const QuotientModule& qm) {
  const auto& g = qm.algebra;
  const std::size_t dim = g.dimension();
  const auto& g0 = qm.grading.component(0);
  for (const auto& z : qm.m_basis) {
    if (!is_zero(g.q_part(z))) return "m is not contained in k";
    if (!in_span(g0, z, dim)) return "m is not contained in g_0";
  }
  std::vector<Vector> g0_q;
  for (const auto& x : g0) g0_q.push_back(g.q_part(x));
  if (qm.m_basis.size() + span_basis(g0_q, dim).size() != g0.size()) return "m != g_0 cap k";
  if (qm.d != span_basis(g0_q, dim).size()) return "dim (g/m)_0 != dim g_0 cap q";
  if (qm.dim10 != g.q_indices.size()) return "dim (g/m)^{1,0} != dim g - dim k";
  std::size_t minus = 0;
  for (int i = 1; i <= qm.grading.depth; ++i) minus += qm.grading.component(-i).size();
  if (qm.dim01 != minus || qm.n != minus) return "dim (g/m)^{0,1} != dim g/p";
  if (qm.dimension != dim - qm.m_basis.size()) return "dim g/m != dim g - dim m";
  const Matrix id = Matrix::identity(qm.dimension);
  if (!(qm.projector10 + qm.projector01 == id)) return "bidegree projectors do not sum to the identity";
  if (!(qm.theta_m * qm.theta_m == id)) return "theta_m is not an involution";
  Matrix slice_sum(qm.dimension, qm.dimension);
  for (const auto& [i, proj] : qm.slice_projectors) {
    if (!(proj * proj == proj)) return "slice projector is not idempotent";
    slice_sum = slice_sum + proj;
    const auto it = qm.slice_projectors.find(-i);
    if (!(qm.theta_m * proj == it->second * qm.theta_m * proj)) return "theta_m does not map (g/m)_-i into (g/m)_i";
    if (rank(qm.theta_m * proj) != rank(proj)) return "theta_m is not injective on a slice";
  }
  if (!(slice_sum == id)) return "slices do not decompose g/m";
  for (std::size_t a = 0; a < qm.dimension; ++a) {
    const Vector v = qm.project(qm.section[a]);
    if (v != unit_vector(qm.dimension, a)) return "section is not a right inverse of the projection";
  }
  std::vector<Vector> fs;
  for (int i = 1; i <= qm.grading.depth; ++i) {
    for (const auto& x : qm.grading.component(i)) {
      const Vector f = qm.f_vector(x);
      if (!is_zero(qm.projector01 * f)) return "F_X is not of type (1,0)";
      fs.push_back(f);
    }
  }
  if (!fs.empty() && rank(Matrix::from_rows(fs, qm.dimension)) != fs.size()) return "X -> F_X is not injective";
  std::vector<Vector> gs;
  for (int i = 1; i <= qm.grading.depth; ++i) {
    for (const auto& y : qm.grading.component(-i)) {
      const Vector gv = qm.g_vector(y);
      if (!is_zero(qm.projector10 * gv)) return "G_Y is not of type (0,1)";
      gs.push_back(gv);
    }
  }
  if (!gs.empty() && rank(Matrix::from_rows(gs, qm.dimension)) != gs.size()) return "Y -> G_Y is not injective";
  for (const auto& rho : qm.m_action) {
    if (!(qm.projector10 * rho * qm.projector01).is_zero() || !(qm.projector01 * rho * qm.projector10).is_zero()) {
      return "m does not preserve the bidegree splitting";
    }
  }
  return {};
}

MetricData metric_data(const QuotientModule& qm) {
  MetricData md;
  const auto& g = qm.algebra;
  md.gram = Matrix(qm.dim10, qm.dim10);
  for (std::size_t a = 0; a < qm.dim10; ++a) {
    for (std::size_t b = 0; b < qm.dim10; ++b) {
      md.gram(a, b) = theta_inner(g, g.q_part(qm.section[a]), g.q_part(qm.section[b]));
    }
  }
  if (!is_positive_definite(md.gram)) throw ConsistencyError("metric on (g/m)^{1,0} is not positive definite");
  md.gram_det = determinant(md.gram);
  md.gram_inverse = inverse(md.gram);
  auto inner = [&](const Vector& x, const Vector& y) {
    Vector xs(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(qm.dim10));
    Vector ys(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(qm.dim10));
    return dot(xs, md.gram * ys);
  };
  std::vector<Vector> basis10;
  for (std::size_t a = 0; a < qm.dim10; ++a) basis10.push_back(unit_vector(qm.dimension, a));
  md.frame10 = gram_schmidt(basis10, inner);
  std::vector<Vector> basis0(basis10.begin(), basis10.begin() + static_cast<std::ptrdiff_t>(qm.d));
  md.frame0 = gram_schmidt(basis0, inner);
  return md;
}

// ---------------------------------------------------------------------------
// BigradedForm

BigradedForm::BigradedForm(std::size_t dim10, std::size_t dim01, int p, int q)
    : dim10_(dim10), dim01_(dim01), p_(p), q_(q), coeffs_(binomial(dim10, p) * binomial(dim01, q)) {}

void BigradedForm::multiply_by_sqrt(const Rational& value) {
  if (sgn(value) == 0) {
    for (auto& c : coeffs_) c = 0;
    radicand_ = 1;
    return;
  }
  const auto [factor, r] = normalize_radical(radicand_ * value);
  for (auto& c : coeffs_) c *= factor;
  radicand_ = r;
}

std::vector<std::size_t> BigradedForm::monomial(std::size_t i) const {
  const std::size_t block = binomial(dim01_, q_);
  auto tuple = subset_unrank(i / block, static_cast<std::size_t>(p_), dim10_);
  for (auto j : subset_unrank(i % block, static_cast<std::size_t>(q_), dim01_)) tuple.push_back(dim10_ + j);
  return tuple;
}

std::size_t BigradedForm::index_of(const std::vector<std::size_t>& tuple) const {
  std::vector<std::size_t> first;
  std::vector<std::size_t> second;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i > 0 && tuple[i] <= tuple[i - 1]) throw InvalidArgument("index tuple must be strictly increasing");
    if (tuple[i] >= dim10_ + dim01_) throw InvalidArgument("index out of range");
    if (tuple[i] < dim10_) {
      first.push_back(tuple[i]);
    } else {
      second.push_back(tuple[i] - dim10_);
    }
  }
  if (first.size() != static_cast<std::size_t>(p_) || second.size() != static_cast<std::size_t>(q_)) {
    throw InvalidArgument("index tuple does not have the form's bidegree");
  }
  return subset_rank(first, dim10_) * binomial(dim01_, q_) + subset_rank(second, dim01_);
}

bool BigradedForm::is_zero() const {
  for (const auto& c : coeffs_) {
    if (sgn(c) != 0) return false;
  }
  return true;
}

Surd BigradedForm::evaluate(const std::vector<Vector>& vectors) const {
  const std::size_t degree = static_cast<std::size_t>(p_ + q_);
  if (vectors.size() != degree) throw InvalidArgument("evaluate: expected " + std::to_string(degree) + " vectors");
  Rational total = 0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) == 0) continue;
    const auto tuple = monomial(i);
    Matrix m(degree, degree);
    for (std::size_t r = 0; r < degree; ++r) {
      for (std::size_t c = 0; c < degree; ++c) m(r, c) = vectors[c][tuple[r]];
    }
    total += coeffs_[i] * determinant(m);
  }
  return Surd{total, radicand_};
}

SparseForm BigradedForm::to_sparse() const {
  SparseForm s;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) != 0) s[mask_of(monomial(i))] = coeffs_[i];
  }
  return s;
}

BigradedForm BigradedForm::from_sparse(const SparseForm& sparse, std::size_t dim10, std::size_t dim01, int p,
                                       int q, const Rational& radicand) {
  BigradedForm f(dim10, dim01, p, q);
  f.radicand_ = radicand;
  for (const auto& [mask, c] : sparse) f.coeffs_[f.index_of(tuple_of(mask))] = c;
  return f;
}

BigradedForm BigradedForm::operator+(const BigradedForm& other) const {
  require_same_shape(*this, other);
  if (other.is_zero()) return *this;
  if (is_zero()) return other;
  BigradedForm out = *this;
  const Rational ratio = other.radicand_ / radicand_;
  if (!is_rational_square(ratio)) throw InvalidArgument("cannot add forms with incommensurable radical factors");
  const Rational factor(sqrt(ratio.get_num()), sqrt(ratio.get_den()));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] += factor * other.coeffs_[i];
  return out;
}

BigradedForm BigradedForm::operator-(const BigradedForm& other) const { return *this + other.scaled(-1); }

BigradedForm BigradedForm::scaled(const Rational& s) const {
  BigradedForm out = *this;
  for (auto& c : out.coeffs_) c *= s;
  return out;
}

bool BigradedForm::equals(const BigradedForm& other) const {
  require_same_shape(*this, other);
  if (is_zero() || other.is_zero()) return is_zero() && other.is_zero();
  if (!is_rational_square(other.radicand_ / radicand_)) return false;
  return (*this - other).is_zero();
}

BigradedForm constant_form(const QuotientModule& qm, const Rational& c) {
  BigradedForm f(qm.dim10, qm.dim01, 0, 0);
  f.coefficients()[0] = c;
  return f;
}

BigradedForm dual_covector(const QuotientModule& qm, std::size_t i) {
  const bool first = i < qm.dim10;
  BigradedForm f(qm.dim10, qm.dim01, first ? 1 : 0, first ? 0 : 1);
  f[{i}] = 1;
  return f;
}

BigradedForm wedge(const BigradedForm& a, const BigradedForm& b) {
  if (a.dim10() != b.dim10() || a.dim01() != b.dim01()) throw InvalidArgument("wedge: forms on different modules");
  BigradedForm out = BigradedForm::from_sparse(wedge_sparse(a.to_sparse(), b.to_sparse()), a.dim10(), a.dim01(),
                                               a.p() + b.p(), a.q() + b.q(), a.radicand());
  out.multiply_by_sqrt(b.radicand());
  return out;
}

// ---------------------------------------------------------------------------
// Lie derivative and invariance

BigradedForm lie_derivative(const Matrix& action, const BigradedForm& form) {
  BigradedForm out(form.dim10(), form.dim01(), form.p(), form.q());
  out.set_radicand(form.radicand());
  const std::size_t dim = form.dim10() + form.dim01();
  for (std::size_t i = 0; i < form.size(); ++i) {
    const Rational& c = form.coefficients()[i];
    if (sgn(c) == 0) continue;
    const auto tuple = form.monomial(i);
    const std::uint32_t mask = mask_of(tuple);
    for (std::size_t pos = 0; pos < tuple.size(); ++pos) {
      // (L_Z e^c) = -sum_a rho(Z)_{c a} e^a, substituted at position pos.
      const std::size_t row = tuple[pos];
      const std::uint32_t without = mask & ~(std::uint32_t{1} << row);
      for (std::size_t a = 0; a < dim; ++a) {
        const Rational& entry = action(row, a);
        if (sgn(entry) == 0) continue;
        if (a != row && (mask >> a) & 1u) continue;
        // Move e^a from position pos to its sorted place.
        const std::uint32_t below_row = without & ((std::uint32_t{1} << row) - 1);
        const std::uint32_t below_a = without & ((std::uint32_t{1} << a) - 1);
        const int sign = ((std::popcount(below_row) + std::popcount(below_a)) % 2 == 0) ? 1 : -1;
        const std::uint32_t target = without | (std::uint32_t{1} << a);
        const auto idx = out.index_of(tuple_of(target));
        if (sign > 0) {
          out.coefficients()[idx] -= c * entry;
        } else {
          out.coefficients()[idx] += c * entry;
        }
      }
    }
  }
  return out;
}

InvarianceCertificate is_m_invariant(const QuotientModule& qm, const BigradedForm& form) {
  InvarianceCertificate cert;
  for (std::size_t z = 0; z < qm.m_action.size(); ++z) {
    const BigradedForm l = lie_derivative(qm.m_action[z], form);
    if (l.is_zero()) continue;
    cert.invariant = false;
    cert.failing_direction = z;
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (sgn(l.coefficients()[i]) != 0) cert.residual.emplace_back(l.monomial(i), l.coefficients()[i]);
    }
    break;
  }
  return cert;
}

std::vector<BigradedForm> invariant_forms_basis(const QuotientModule& qm, int p, int q) {
  if (p < 0 || q < 0 || static_cast<std::size_t>(p) > qm.dim10 || static_cast<std::size_t>(q) > qm.dim01) {
    throw InvalidArgument("invariant_forms_basis: bidegree out of range");
  }
  const BigradedForm shape(qm.dim10, qm.dim01, p, q);
  const std::size_t unknowns = shape.size();
  std::vector<Vector> rows;
  for (const auto& action : qm.m_action) {
    Matrix block(unknowns, unknowns);
    for (std::size_t j = 0; j < unknowns; ++j) {
      BigradedForm e = shape;
      e.coefficients()[j] = 1;
      const BigradedForm l = lie_derivative(action, e);
      for (std::size_t i = 0; i < unknowns; ++i) block(i, j) = l.coefficients()[i];
    }
    for (std::size_t i = 0; i < unknowns; ++i) rows.push_back(block.row(i));
  }
  std::vector<BigradedForm> basis;
  for (const auto& v : nullspace(Matrix::from_rows(rows, unknowns))) {
    BigradedForm f = shape;
    f.coefficients() = v;
    basis.push_back(std::move(f));
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Differentials

std::vector<BigradedForm> differential(const QuotientModule& qm, const BigradedForm& form) {
  const InvarianceCertificate cert = is_m_invariant(qm, form);
  if (!cert.invariant) {
    throw InvalidArgument("differential requires an m-invariant form; Lie derivative along m basis direction " +
                          std::to_string(cert.failing_direction) + " is nonzero");
  }
  const std::size_t dim = qm.dimension;
  // d e^c = -sum_{a<b} c_ab^c e^a ^ e^b with c_ab^c = proj([s_a, s_b])_c.
  std::vector<SparseForm> de(dim);
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = a + 1; b < dim; ++b) {
      const Vector& br = qm.bracket_table[a][b];
      for (std::size_t c = 0; c < dim; ++c) {
        if (sgn(br[c]) != 0) de[c][(std::uint32_t{1} << a) | (std::uint32_t{1} << b)] -= br[c];
      }
    }
  }
  SparseForm total;
  for (const auto& [mask, coeff] : form.to_sparse()) {
    const auto tuple = tuple_of(mask);
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      SparseForm before{{mask & ((std::uint32_t{1} << tuple[i]) - 1), Rational(i % 2 == 0 ? 1 : -1) * coeff}};
      SparseForm after{{mask & ~((std::uint32_t{2} << tuple[i]) - 1), Rational(1)}};
      for (const auto& [m, c] : wedge_sparse(wedge_sparse(before, de[tuple[i]]), after)) total[m] += c;
    }
  }
  SparseForm k_part;
  SparseForm p_part;
  const std::uint32_t low = (std::uint32_t{1} << qm.dim10) - 1;
  for (const auto& [mask, c] : total) {
    if (sgn(c) == 0) continue;
    const int p = std::popcount(mask & low);
    const int q = std::popcount(mask & ~low);
    if (p == form.p() + 1 && q == form.q()) {
      k_part[mask] = c;
    } else if (p == form.p() && q == form.q() + 1) {
      p_part[mask] = c;
    } else {
      throw ConsistencyError("differential has a component outside bidegrees (p+1,q) and (p,q+1)");
    }
  }
  return {BigradedForm::from_sparse(k_part, qm.dim10, qm.dim01, form.p() + 1, form.q(), form.radicand()),
          BigradedForm::from_sparse(p_part, qm.dim10, qm.dim01, form.p(), form.q() + 1, form.radicand())};
}

BigradedForm d_k(const QuotientModule& qm, const BigradedForm& form) { return differential(qm, form)[0]; }

BigradedForm d_p(const QuotientModule& qm, const BigradedForm& form) { return differential(qm, form)[1]; }

BigradedForm hodge_star_k(const QuotientModule& qm, const MetricData& metric, const BigradedForm& form) {
  const std::size_t n10 = qm.dim10;
  const int p = form.p();
  BigradedForm out(n10, qm.dim01, static_cast<int>(n10) - p, form.q());
  out.set_radicand(form.radicand());
  const std::size_t subsets = binomial(n10, p);
  const std::uint32_t all = (std::uint32_t{1} << n10) - 1;
  for (std::size_t i = 0; i < form.size(); ++i) {
    const Rational& c = form.coefficients()[i];
    if (sgn(c) == 0) continue;
    const auto tuple = form.monomial(i);
    const std::vector<std::size_t> k_idx(tuple.begin(), tuple.begin() + p);
    const std::vector<std::size_t> rest(tuple.begin() + p, tuple.end());
    // *e^K = sqrt(det G) sum_I det(G^{-1}[I, K]) sign(I, I^c) e^{I^c}.
    for (std::size_t r = 0; r < subsets; ++r) {
      const auto i_idx = subset_unrank(r, static_cast<std::size_t>(p), n10);
      Matrix minor(i_idx.size(), k_idx.size());
      for (std::size_t a = 0; a < i_idx.size(); ++a) {
        for (std::size_t b = 0; b < k_idx.size(); ++b) minor(a, b) = metric.gram_inverse(i_idx[a], k_idx[b]);
      }
      const Rational det = i_idx.empty() ? Rational(1) : determinant(minor);
      if (sgn(det) == 0) continue;
      const std::uint32_t imask = mask_of(i_idx);
      const std::uint32_t cmask = all & ~imask;
      const int sign = wedge_sign(imask, cmask);
      auto target = tuple_of(cmask);
      target.insert(target.end(), rest.begin(), rest.end());
      out[target] += Rational(sign) * det * c;
    }
  }
  out.multiply_by_sqrt(metric.gram_det);
  return out;
}

BigradedForm codifferential_k(const QuotientModule& qm, const MetricData& metric, const BigradedForm& form) {
  if (form.p() == 0) {
    BigradedForm zero(qm.dim10, qm.dim01, -1, form.q());
    return zero;
  }
  const long dim10 = static_cast<long>(qm.dim10);
  const long exponent = dim10 * (form.p() - 1) + 1;
  const BigradedForm inner = hodge_star_k(qm, metric, d_k(qm, hodge_star_k(qm, metric, form)));
  return exponent % 2 == 0 ? inner : inner.scaled(-1);
}

}  // namespace pforms
