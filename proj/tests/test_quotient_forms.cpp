#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pforms/kernel_builder.hpp"

#include <random>

using namespace pforms;

namespace {

const AlgebraSpec kAll[] = {{Family::so, 2}, {Family::so, 3}, {Family::so, 4}, {Family::sl, 3}};

BigradedForm random_form(const QuotientModule& qm, int p, int q, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 3);
  BigradedForm f(qm.dim10, qm.dim01, p, q);
  for (auto& c : f.coefficients()) c = Rational(num(rng)) / den(rng);
  return f;
}

// Induced action of Z on g/m from matrix commutators in the realization.
Matrix brute_force_action(const QuotientModule& qm, const Vector& z) {
  const auto& g = qm.algebra;
  Matrix out(qm.dimension, qm.dimension);
  for (std::size_t a = 0; a < qm.dimension; ++a) {
    const Matrix zm = g.to_matrix(z);
    const Matrix sm = g.to_matrix(qm.section[a]);
    const Vector image = qm.project(g.coordinates(zm * sm - sm * zm));
    for (std::size_t r = 0; r < qm.dimension; ++r) out(r, a) = image[r];
  }
  return out;
}

}  // namespace

TEST_CASE("quotient modules of the shipped algebras satisfy their invariants") {
  for (const auto& spec : kAll) {
    CAPTURE(spec.name());
    const KernelContext ctx = make_context(spec);
    CHECK(check_quotient_module(ctx.module).empty());
  }
  const KernelContext ctx = make_context({Family::sl, 3}, {1});
  CHECK(check_quotient_module(ctx.module).empty());
}

TEST_CASE("so(n+1,1) minimal: dim g/m = 2n+1, d = 1") {
  for (int n = 1; n <= 3; ++n) {
    CAPTURE(n);
    const KernelContext ctx = make_context({Family::so, n + 1});
    const std::size_t dim_g = static_cast<std::size_t>((n + 2) * (n + 1) / 2);
    const std::size_t dim_m0 = static_cast<std::size_t>(n * (n - 1) / 2);
    CHECK(ctx.module.dimension == dim_g - dim_m0);
    CHECK(ctx.module.dimension == static_cast<std::size_t>(2 * n + 1));
    CHECK(ctx.module.n == static_cast<std::size_t>(n));
    CHECK(ctx.module.d == 1);
  }
}

TEST_CASE("grading slices of g/m match g_i and g_0 cap q") {
  for (const auto& spec : kAll) {
    CAPTURE(spec.name());
    const KernelContext ctx = make_context(spec);
    const auto& qm = ctx.module;
    for (const auto& [i, proj] : qm.slice_projectors) {
      if (i == 0) {
        CHECK(rank(proj) == qm.d);
      } else {
        CHECK(rank(proj) == ctx.grading.component(i).size());
      }
    }
    CHECK(qm.theta_m * qm.theta_m == Matrix::identity(qm.dimension));
  }
}

TEST_CASE("wedge products") {
  const KernelContext ctx = make_context({Family::so, 3});
  const auto& qm = ctx.module;
  const BigradedForm e1 = dual_covector(qm, 1);
  const BigradedForm e2 = dual_covector(qm, 2);
  const BigradedForm zero(qm.dim10, qm.dim01, 1, 1);
  CHECK(wedge(e1, zero).is_zero());
  CHECK(wedge(grading_coform(qm), grading_coform(qm)).is_zero());
  const BigradedForm e12 = wedge(e1, e2);
  const Vector v1 = unit_vector(qm.dimension, 1);
  const Vector v2 = unit_vector(qm.dimension, 2);
  CHECK(e12.evaluate({v1, v2}) == Surd{1, 1});
  CHECK(e12.evaluate({v2, v1}) == Surd{-1, 1});
  // Beyond the top degree the product is the zero form.
  BigradedForm top(qm.dim10, qm.dim01, static_cast<int>(qm.dim10), 0);
  top.coefficients()[0] = 1;
  CHECK(wedge(top, e1).is_zero());

  std::mt19937 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const int p1 = trial % 3;
    const int q1 = trial % 2;
    const int p2 = (trial / 3) % 2;
    const int q2 = 1 - q1;
    const BigradedForm a = random_form(qm, p1, q1, rng);
    const BigradedForm b = random_form(qm, p2, q2, rng);
    const int sign = ((p1 + q1) * (p2 + q2)) % 2 == 0 ? 1 : -1;
    CHECK(wedge(a, b).equals(wedge(b, a).scaled(sign)));
  }
}

TEST_CASE("E* is m-invariant with vanishing K-derivative") {
  for (const auto& spec : kAll) {
    CAPTURE(spec.name());
    const KernelContext ctx = make_context(spec);
    const auto& qm = ctx.module;
    const BigradedForm estar = grading_coform(qm);
    CHECK(is_m_invariant(qm, estar).invariant);
    CHECK(d_k(qm, estar).is_zero());
    CHECK(d_k(qm, d_p(qm, estar)).is_zero());
    const auto parts = differential(qm, d_p(qm, estar));
    CHECK(parts[0].is_zero());
    CHECK(parts[1].is_zero());
    CHECK(differential(qm, constant_form(qm, 5))[0].is_zero());
    CHECK(differential(qm, constant_form(qm, 5))[1].is_zero());
  }
}

TEST_CASE("d_P E* pairs (g/m)_-i with (g/m)_i through the Killing form") {
  for (const auto& spec : kAll) {
    CAPTURE(spec.name());
    const KernelContext ctx = make_context(spec);
    const auto& qm = ctx.module;
    // With the argument from g_-i first, d_P E* = i B(E,E)^-1 B(X,Y) exactly ...
    CHECK(pairing_residuals(qm, PairingOrder::g_first).empty());
    // ... so with F_X first it is the negative, and the residual is -2 i B(X,Y)/B(E,E) wherever B(X,Y) != 0.
    const Rational bee = killing_form(qm.algebra, ctx.grading.grading_element, ctx.grading.grading_element);
    for (const auto& r : pairing_residuals(qm, PairingOrder::f_first)) {
      const Rational b = killing_form(qm.algebra, ctx.grading.component(r.degree)[r.x_index],
                                      ctx.grading.component(-r.degree)[r.y_index]);
      CHECK(r.value == Rational(-2 * r.degree) * b / bee);
    }
    CHECK_FALSE(pairing_residuals(qm, PairingOrder::f_first).empty());
    const auto ranks = slice_pairing_ranks(qm);
    for (std::size_t i = 0; i < ranks.size(); ++i) {
      CHECK(ranks[i] == ctx.grading.component(static_cast<int>(i) + 1).size());
    }
  }
}

TEST_CASE("m-invariance") {
  const KernelContext ctx = make_context({Family::so, 3});
  const auto& qm = ctx.module;
  REQUIRE(qm.m_basis.size() == 1);
  const Matrix rho = brute_force_action(qm, qm.m_basis[0]);
  CHECK(rho == qm.m_action[0]);
  // The covector dual to F_X for the first root vector of g_1: rho(Z) rotates it into the other one.
  const std::size_t fx = qm.d;
  bool row_nonzero = false;
  for (std::size_t a = 0; a < qm.dimension; ++a) row_nonzero = row_nonzero || sgn(rho(fx, a)) != 0;
  CHECK(row_nonzero);
  const InvarianceCertificate cert = is_m_invariant(qm, dual_covector(qm, fx));
  CHECK_FALSE(cert.invariant);
  CHECK(cert.failing_direction == 0);
  CHECK_FALSE(cert.residual.empty());
  CHECK(is_m_invariant(qm, BigradedForm(qm.dim10, qm.dim01, 2, 1)).invariant);
  CHECK_THROWS_AS(differential(qm, dual_covector(qm, fx)), InvalidArgument);
}

TEST_CASE("Hodge star") {
  std::mt19937 rng(23);
  for (const auto& spec : kAll) {
    CAPTURE(spec.name());
    const KernelContext ctx = make_context(spec);
    const auto& qm = ctx.module;
    const int top = static_cast<int>(qm.dim10);

    BigradedForm volume(qm.dim10, qm.dim01, top, 0);
    volume.coefficients()[0] = 1;
    volume.multiply_by_sqrt(ctx.metric.gram_det);
    CHECK(hodge_star_k(qm, ctx.metric, constant_form(qm, 1)).equals(volume));

    for (int p = 0; p <= top; ++p) {
      for (int q = 0; q <= static_cast<int>(qm.dim01); q += 2) {
        const BigradedForm w = random_form(qm, p, q, rng);
        const BigradedForm star = hodge_star_k(qm, ctx.metric, w);
        CHECK(star.p() == top - p);
        CHECK(star.q() == q);
        const int sign = (p * (top - p)) % 2 == 0 ? 1 : -1;
        CHECK(hodge_star_k(qm, ctx.metric, star).equals(w.scaled(sign)));
      }
    }
  }
}

TEST_CASE("so(2,1): *E* is orthogonal to E* and has the same length") {
  const KernelContext ctx = make_context({Family::so, 2});
  const auto& qm = ctx.module;
  REQUIRE(qm.dim10 == 2);
  const BigradedForm star = hodge_star_k(qm, ctx.metric, grading_coform(qm));
  REQUIRE(star.p() == 1);
  // Covectors pair through the inverse Gram matrix of B_theta on the q-parts (g/m)^{1,0} -> g/k = q.
  const auto& g = qm.algebra;
  Matrix gram(2, 2);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      gram(a, b) = theta_inner(g, g.q_part(qm.section[a]), g.q_part(qm.section[b]));
    }
  }
  const Matrix ginv = inverse(gram);
  const Vector e{1, 0};
  const Vector c{star[{0}], star[{1}]};
  CHECK(dot(e, ginv * c) == 0);
  CHECK(star.radicand() * dot(c, ginv * c) == dot(e, ginv * e));
}

TEST_CASE("codifferential") {
  const KernelContext ctx = make_context({Family::so, 3});
  const auto& qm = ctx.module;
  CHECK(codifferential_k(qm, ctx.metric, BigradedForm(qm.dim10, qm.dim01, 0, 2)).is_zero());
  const BigradedForm df = d_k(qm, constant_form(qm, 3));
  CHECK(codifferential_k(qm, ctx.metric, df).is_zero());
  const BigradedForm delta = codifferential_k(qm, ctx.metric, grading_coform(qm));
  CHECK(delta.p() == 0);
  CHECK(delta.q() == 0);
}

TEST_CASE("invariant form dimensions") {
  for (const auto& spec : kAll) {
    const KernelContext ctx = make_context(spec);
    CHECK(invariant_forms_basis(ctx.module, 0, 0).size() == 1);
  }
  // so(n+1,1) at bidegree (k, n-k), k = 0..n.
  const std::vector<std::vector<std::size_t>> expected{{1, 2}, {1, 2, 1}, {1, 1, 2, 1}};
  for (int n = 1; n <= 3; ++n) {
    CAPTURE(n);
    const KernelContext ctx = make_context({Family::so, n + 1});
    std::vector<std::size_t> dims;
    for (int k = 0; k <= n; ++k) dims.push_back(invariant_forms_basis(ctx.module, k, n - k).size());
    CHECK(dims == expected[static_cast<std::size_t>(n - 1)]);
  }
  // (1,0) is spanned by E* once m is nontrivial; for so(2,1), m = 0 and every covector is invariant.
  for (int n = 2; n <= 3; ++n) {
    const KernelContext ctx = make_context({Family::so, n + 1});
    const auto basis = invariant_forms_basis(ctx.module, 1, 0);
    REQUIRE(basis.size() == 1);
    CHECK(rank(Matrix::from_rows({basis[0].coefficients(), grading_coform(ctx.module).coefficients()},
                                 ctx.module.dim10)) == 1);
  }
  const KernelContext so21 = make_context({Family::so, 2});
  CHECK(invariant_forms_basis(so21.module, 1, 0).size() == 2);
}

TEST_CASE("d squares to zero and d_K anticommutes with d_P on invariant forms") {
  std::mt19937 rng(29);
  for (const auto& spec : kAll) {
    CAPTURE(spec.name());
    const KernelContext ctx = make_context(spec);
    const auto& qm = ctx.module;
    int tested = 0;
    for (int p = 0; p <= static_cast<int>(qm.dim10) && tested < 20; ++p) {
      for (int q = 0; q <= static_cast<int>(qm.dim01) && tested < 20; ++q) {
        const auto basis = invariant_forms_basis(qm, p, q);
        if (basis.empty()) continue;
        BigradedForm w(qm.dim10, qm.dim01, p, q);
        for (const auto& b : basis) w = w + b.scaled(Rational(static_cast<int>(rng() % 7) - 3));
        const BigradedForm dk = d_k(qm, w);
        const BigradedForm dp = d_p(qm, w);
        CHECK(d_k(qm, dk).is_zero());
        CHECK(d_p(qm, dp).is_zero());
        CHECK((d_k(qm, dp) + d_p(qm, dk)).is_zero());
        ++tested;
      }
    }
    CHECK(tested > 0);
  }
}

TEST_CASE("radicals") {
  CHECK(normalize_radical(Rational(12)) == std::pair<Rational, Rational>{2, 3});
  CHECK(normalize_radical(Rational(9, 8)) == std::pair<Rational, Rational>{Rational(3, 4), 2});
  CHECK(normalize_radical(Rational(0)).first == 0);
  CHECK_THROWS_AS(normalize_radical(Rational(-1)), InvalidArgument);
  CHECK(Surd{2, 3} == Surd{1, 12});
  CHECK_FALSE(Surd{2, 3} == Surd{-1, 12});
  BigradedForm a(2, 1, 1, 0);
  a.coefficients()[0] = 1;
  BigradedForm b = a;
  b.multiply_by_sqrt(2);
  CHECK_THROWS_AS(a + b, InvalidArgument);
  CHECK_FALSE(a.equals(b));
  BigradedForm c = a;
  c.multiply_by_sqrt(8);
  CHECK((c - b.scaled(2)).is_zero());
}
