#include "pforms/grading.hpp"

#include <algorithm>
#include <cstdlib>

namespace pforms {

namespace {

bool in_span(const std::vector<Vector>& space, const Vector& v, std::size_t dim) {
  if (is_zero(v)) return true;
  if (space.empty()) return false;
  std::vector<Vector> extended = space;
  extended.push_back(v);
  return rank(Matrix::from_rows(extended, dim)) == rank(Matrix::from_rows(space, dim));
}

}  // namespace

const std::vector<Vector>& Grading::component(int i) const {
  static const std::vector<Vector> empty;
  const auto it = components.find(i);
  return it == components.end() ? empty : it->second;
}

Parabolic parabolic_from_subset(const LieAlgebra& /*algebra*/, const RootDatum& roots,
                                const std::vector<std::size_t>& sigma) {
  Parabolic p;
  for (auto s : sigma) {
    if (s >= roots.simple.size()) {
      throw InvalidArgument("sigma index " + std::to_string(s) + " is not a simple root (there are " +
                            std::to_string(roots.simple.size()) + ")");
    }
  }
  p.sigma = sigma;
  std::sort(p.sigma.begin(), p.sigma.end());
  p.sigma.erase(std::unique(p.sigma.begin(), p.sigma.end()), p.sigma.end());

  for (const auto& coeffs : roots.simple_coefficients) {
    Rational h = 0;
    for (std::size_t s = 0; s < coeffs.size(); ++s) {
      if (!std::binary_search(p.sigma.begin(), p.sigma.end(), s)) h += coeffs[s];
    }
    if (h.get_den() != 1) throw ConsistencyError("non-integral root height");
    p.heights.push_back(static_cast<int>(h.get_num().get_si()));
  }

  p.p_basis = roots.m0_basis;
  p.p_basis.insert(p.p_basis.end(), roots.a0_basis.begin(), roots.a0_basis.end());
  for (std::size_t r = 0; r < roots.roots.size(); ++r) {
    const auto& space = roots.roots[r].space;
    if (p.heights[r] >= 0) p.p_basis.insert(p.p_basis.end(), space.begin(), space.end());
    if (p.heights[r] > 0) p.p_plus_basis.insert(p.p_plus_basis.end(), space.begin(), space.end());
    if (p.heights[r] < 0) p.g_minus_basis.insert(p.g_minus_basis.end(), space.begin(), space.end());
  }
  return p;
}

Grading compute_grading(const LieAlgebra& /*algebra*/, const RootDatum& roots, const Parabolic& parabolic) {
  Grading g;
  for (int h : parabolic.heights) g.depth = std::max(g.depth, std::abs(h));
  for (int i = -g.depth; i <= g.depth; ++i) g.components[i];
  auto& g0 = g.components[0];
  g0 = roots.m0_basis;
  g0.insert(g0.end(), roots.a0_basis.begin(), roots.a0_basis.end());
  // Roots are ascending, so iterating in order keeps root order within each component.
  for (std::size_t r = 0; r < roots.roots.size(); ++r) {
    auto& comp = g.components[parabolic.heights[r]];
    comp.insert(comp.end(), roots.roots[r].space.begin(), roots.roots[r].space.end());
  }
  return g;
}

Vector grading_element(const LieAlgebra& algebra, const Grading& grading) {
  const std::size_t dim = algebra.dimension();
  // Unknown E; equation ad(E) X = i X, i.e. -ad(X) E = i X, for every graded basis vector X.
  std::vector<Vector> rows;
  Vector rhs;
  for (const auto& [i, basis] : grading.components) {
    for (const auto& x : basis) {
      const Matrix ad_x = algebra.ad(x);
      for (std::size_t r = 0; r < dim; ++r) {
        rows.push_back(scale(-1, ad_x.row(r)));
        rhs.push_back(Rational(i) * x[r]);
      }
    }
  }
  const Vector e = solve_unique(Matrix::from_rows(rows, dim), rhs);
  if (algebra.apply_theta(e) != scale(-1, e)) throw ConsistencyError("grading element is not theta-odd");
  return e;
}

Grading build_grading(const LieAlgebra& algebra, const RootDatum& roots, const Parabolic& parabolic) {
  Grading g = compute_grading(algebra, roots, parabolic);
  g.grading_element = grading_element(algebra, g);
  return g;
}

std::string check_grading(const LieAlgebra& algebra, const RootDatum& roots, const Parabolic& parabolic,
                          const Grading& grading) {
  const std::size_t dim = algebra.dimension();
  std::vector<Vector> all;
  for (const auto& [i, basis] : grading.components) all.insert(all.end(), basis.begin(), basis.end());
  if (all.size() != dim || rank(Matrix::from_rows(all, dim)) != dim) {
    return "grading components do not form a direct sum decomposition of g";
  }
  for (const auto& [i, bi] : grading.components) {
    for (const auto& [j, bj] : grading.components) {
      for (const auto& x : bi) {
        for (const auto& y : bj) {
          const Vector z = algebra.bracket(x, y);
          if (std::abs(i + j) > grading.depth) {
            if (!is_zero(z)) return "bracket leaves the grading range";
          } else if (!in_span(grading.component(i + j), z, dim)) {
            return "[g_" + std::to_string(i) + ", g_" + std::to_string(j) + "] is not contained in g_" +
                   std::to_string(i + j);
          }
          const Rational b = killing_form(algebra, x, y);
          if (i + j != 0 && sgn(b) != 0) return "Killing form pairs g_i with g_j for i + j != 0";
        }
      }
    }
    for (const auto& x : bi) {
      if (!in_span(grading.component(-i), algebra.apply_theta(x), dim)) {
        return "theta does not map g_" + std::to_string(i) + " into g_" + std::to_string(-i);
      }
    }
  }
  for (int i = 1; i <= grading.depth; ++i) {
    const auto& pos = grading.component(i);
    const auto& neg = grading.component(-i);
    if (pos.size() != neg.size()) return "dim g_i != dim g_-i";
    Matrix gram(pos.size(), neg.size());
    for (std::size_t a = 0; a < pos.size(); ++a) {
      for (std::size_t b = 0; b < neg.size(); ++b) gram(a, b) = killing_form(algebra, pos[a], neg[b]);
    }
    if (rank(gram) != pos.size()) return "Killing pairing of g_i and g_-i is degenerate";
  }
  const Vector& e = grading.grading_element;
  if (e.size() != dim) return "grading element missing";
  for (const auto& [i, basis] : grading.components) {
    for (const auto& x : basis) {
      if (algebra.bracket(e, x) != scale(Rational(i), x)) return "[E, X] != iX";
    }
  }
  if (!is_zero(algebra.k_part(e))) return "grading element is not in q";
  // p contains p0 = m0 + a0 + n0.
  std::vector<Vector> p0 = roots.m0_basis;
  p0.insert(p0.end(), roots.a0_basis.begin(), roots.a0_basis.end());
  for (const auto& root : roots.roots) {
    if (root.positive) p0.insert(p0.end(), root.space.begin(), root.space.end());
  }
  for (const auto& v : p0) {
    if (!in_span(parabolic.p_basis, v, dim)) return "parabolic does not contain p0";
  }
  std::vector<Vector> nonneg;
  for (int i = 0; i <= grading.depth; ++i) {
    nonneg.insert(nonneg.end(), grading.component(i).begin(), grading.component(i).end());
  }
  if (span_basis(nonneg, dim) != span_basis(parabolic.p_basis, dim)) return "p != g_0 + p_+";
  return {};
}

}  // namespace pforms
