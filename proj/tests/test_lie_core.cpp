#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pforms/lie_core.hpp"

using namespace pforms;

namespace {

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

// ad matrices assembled from matrix commutators, without the library's structure constants.
std::vector<Matrix> brute_force_ad(const LieAlgebra& g) {
  std::vector<Matrix> ads;
  for (const auto& x : g.basis) {
    Matrix ad(g.dimension(), g.dimension());
    for (std::size_t j = 0; j < g.dimension(); ++j) {
      const Vector c = g.coordinates(commutator(x, g.basis[j]));
      for (std::size_t k = 0; k < g.dimension(); ++k) ad(k, j) = c[k];
    }
    ads.push_back(ad);
  }
  return ads;
}

const AlgebraSpec kShipped[] = {{Family::so, 2}, {Family::so, 3}, {Family::so, 4}, {Family::sl, 2}, {Family::sl, 3}};

}  // namespace

TEST_CASE("so(2,1) has one antisymmetric and two symmetric basis matrices") {
  const LieAlgebra g = build_algebra({Family::so, 2});
  CHECK(g.dimension() == 3);
  std::size_t antisymmetric = 0;
  std::size_t symmetric = 0;
  for (const auto& b : g.basis) {
    if (b.transpose() == b.scaled(-1)) ++antisymmetric;
    if (b.transpose() == b) ++symmetric;
  }
  CHECK(antisymmetric == 1);
  CHECK(symmetric == 2);
  CHECK(g.k_indices.size() == antisymmetric);
  CHECK(g.q_indices.size() == symmetric);
}

TEST_CASE("shipped algebras satisfy Jacobi, theta and Killing invariants") {
  for (const auto& spec : kShipped) {
    CAPTURE(spec.name());
    const LieAlgebra g = build_algebra(spec);
    CHECK(check_jacobi(g).empty());
    CHECK(check_theta(g).empty());
    CHECK(check_killing(g).empty());
  }
}

TEST_CASE("sl(2,R) Jacobi identity by exhaustive triple loop") {
  const LieAlgebra g = build_algebra({Family::sl, 2});
  const std::size_t dim = g.dimension();
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      for (std::size_t k = 0; k < dim; ++k) {
        const Vector x = unit_vector(dim, i);
        const Vector y = unit_vector(dim, j);
        const Vector z = unit_vector(dim, k);
        const Vector sum = add(add(g.bracket(x, g.bracket(y, z)), g.bracket(y, g.bracket(z, x))),
                               g.bracket(z, g.bracket(x, y)));
        CHECK(is_zero(sum));
      }
    }
  }
}

TEST_CASE("Killing form of so(2,1) matches the brute-force trace form") {
  const LieAlgebra g = build_algebra({Family::so, 2});
  const auto ads = brute_force_ad(g);
  for (std::size_t i = 0; i < g.dimension(); ++i) {
    for (std::size_t j = 0; j < g.dimension(); ++j) {
      CHECK(killing_form(g, unit_vector(3, i), unit_vector(3, j)) == (ads[i] * ads[j]).trace());
    }
  }
}

TEST_CASE("Killing form of so(4,1) is positive definite on q") {
  const LieAlgebra g = build_algebra({Family::so, 4});
  const auto ads = brute_force_ad(g);
  Matrix gram(g.q_indices.size(), g.q_indices.size());
  for (std::size_t a = 0; a < g.q_indices.size(); ++a) {
    for (std::size_t b = 0; b < g.q_indices.size(); ++b) {
      gram(a, b) = (ads[g.q_indices[a]] * ads[g.q_indices[b]]).trace();
    }
  }
  CHECK(is_positive_definite(gram));
  for (auto i : g.k_indices) {
    for (auto j : g.q_indices) CHECK(killing_form(g, unit_vector(10, i), unit_vector(10, j)) == 0);
  }
}

TEST_CASE("killing_form rejects vectors of the wrong length") {
  const LieAlgebra g = build_algebra({Family::so, 2});
  CHECK_THROWS_AS(killing_form(g, Vector{1, 0}, Vector{1, 0, 0}), InvalidArgument);
}

TEST_CASE("invalid sizes are rejected") {
  CHECK_THROWS_AS(build_algebra({Family::so, 1}), InvalidArgument);
  CHECK_THROWS_AS(build_algebra({Family::sl, 1}), InvalidArgument);
}

TEST_CASE("so(n+1,1) has two restricted roots of multiplicity n and rho = n/2 alpha") {
  for (int n = 1; n <= 3; ++n) {
    CAPTURE(n);
    const LieAlgebra g = build_algebra({Family::so, n + 1});
    const RootDatum r = restricted_roots(g);
    REQUIRE(r.roots.size() == 2);
    CHECK(r.roots[0].values == scale(-1, r.roots[1].values));
    Vector rho = zero_vector(1);
    for (const auto& root : r.roots) {
      CHECK(root.space.size() == static_cast<std::size_t>(n));
      if (root.positive) rho = add(rho, scale(Rational(static_cast<long>(root.space.size())) / 2, root.values));
    }
    CHECK(r.rho == rho);
    CHECK(r.rho == scale(Rational(n) / 2, r.roots[1].values));
    CHECK(r.m0_basis.size() == static_cast<std::size_t>(n * (n - 1) / 2));
    CHECK(check_root_datum(g, r).empty());
  }
}

TEST_CASE("sl(3,R) has six one-dimensional root spaces and trivial m0") {
  const LieAlgebra g = build_algebra({Family::sl, 3});
  const RootDatum r = restricted_roots(g);
  CHECK(r.roots.size() == 6);
  for (const auto& root : r.roots) CHECK(root.space.size() == 1);
  CHECK(r.m0_basis.empty());
  CHECK(r.simple.size() == 2);
  CHECK(check_root_datum(g, r).empty());
}

TEST_CASE("root spaces satisfy [H, X] = alpha(H) X") {
  for (const auto& spec : kShipped) {
    CAPTURE(spec.name());
    const LieAlgebra g = build_algebra(spec);
    const RootDatum r = restricted_roots(g);
    for (const auto& root : r.roots) {
      for (std::size_t h = 0; h < r.a0_basis.size(); ++h) {
        for (const auto& x : root.space) CHECK(g.bracket(r.a0_basis[h], x) == scale(root.values[h], x));
      }
    }
  }
}

TEST_CASE("non-rational eigenvalues are rejected") {
  const LieAlgebra sl2 = build_algebra({Family::sl, 2});
  // H + S with S = E12 + E21 has ad-eigenvalues +-2 sqrt 2.
  const Vector h_plus_s = add(sl2.a0_hint[0], unit_vector(3, sl2.q_indices[0]));
  const LieAlgebra skew = algebra_from_matrices("sl(2,R)", sl2.basis, {h_plus_s});
  CHECK_THROWS_AS(restricted_roots(skew), InvalidArgument);
}
