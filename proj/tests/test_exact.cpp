#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pforms/exact.hpp"

#include <algorithm>
#include <numeric>
#include <random>

using namespace pforms;

namespace {

// Leibniz expansion, independent of the elimination code.
Rational leibniz_det(const Matrix& m) {
  std::vector<std::size_t> perm(m.rows());
  std::iota(perm.begin(), perm.end(), 0);
  Rational total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      for (std::size_t j = i + 1; j < perm.size(); ++j) inversions += perm[i] > perm[j] ? 1 : 0;
    }
    Rational term = inversions % 2 == 0 ? 1 : -1;
    for (std::size_t i = 0; i < perm.size(); ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 4);
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      m(r, c) = Rational(num(rng)) / den(rng);
    }
  }
  return m;
}

}  // namespace

TEST_CASE("rationals parse and print canonically") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-2")) == "-2");
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidArgument);
  CHECK_THROWS_AS(parse_rational("x"), InvalidArgument);
  CHECK_THROWS_AS(parse_rational(""), InvalidArgument);
}

TEST_CASE("determinant agrees with the Leibniz expansion") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 5);
    const Matrix m = random_matrix(n, n, rng);
    CHECK(determinant(m) == leibniz_det(m));
  }
}

TEST_CASE("inverse and unique solve") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix m = random_matrix(4, 4, rng);
    if (determinant(m) == 0) continue;
    CHECK(m * inverse(m) == Matrix::identity(4));
    const Vector b{1, 2, Rational(1, 3), -1};
    CHECK(m * solve_unique(m, b) == b);
  }
  Matrix singular(2, 2);
  singular(0, 0) = 1;
  singular(0, 1) = 2;
  singular(1, 0) = 2;
  singular(1, 1) = 4;
  CHECK_THROWS_AS(inverse(singular), ConsistencyError);
  CHECK_THROWS_AS(solve_unique(singular, Vector{1, 2}), ConsistencyError);
}

TEST_CASE("nullspace has complementary dimension and is annihilated") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix m = random_matrix(3, 6, rng);
    if (trial % 3 == 0) {
      for (std::size_t c = 0; c < 6; ++c) m(2, c) = m(0, c) + m(1, c);
    }
    const auto basis = nullspace(m);
    CHECK(basis.size() + rank(m) == 6);
    for (const auto& v : basis) CHECK(is_zero(m * v));
  }
}

TEST_CASE("span basis is canonical") {
  const std::vector<Vector> a{{1, 1, 0}, {0, 1, 1}};
  const std::vector<Vector> b{{1, 2, 1}, {1, 0, -1}, {2, 2, 0}};
  CHECK(span_basis(a, 3) == span_basis(b, 3));
}

TEST_CASE("positive definiteness and rational squares") {
  Matrix g(2, 2);
  g(0, 0) = 2;
  g(0, 1) = g(1, 0) = 1;
  g(1, 1) = 1;
  CHECK(is_positive_definite(g));
  g(1, 1) = Rational(1, 2);
  CHECK_FALSE(is_positive_definite(g));
  CHECK(is_rational_square(Rational(9, 4)));
  CHECK_FALSE(is_rational_square(Rational(2)));
  CHECK_FALSE(is_rational_square(Rational(-4)));
}
