#ifndef PFORMS_GRADING_HPP
#define PFORMS_GRADING_HPP

// Standard parabolic subalgebras containing the minimal parabolic p0, the
// |k|-grading they induce and the grading element.

#include "pforms/lie_core.hpp"

#include <map>
#include <string>
#include <vector>

namespace pforms {

struct Parabolic {
  /// Indices into RootDatum::simple of the simple roots assigned height 0.
  std::vector<std::size_t> sigma;
  /// Height of every restricted root (parallel to RootDatum::roots).
  std::vector<int> heights;
  std::vector<Vector> p_basis;
  std::vector<Vector> p_plus_basis;
  std::vector<Vector> g_minus_basis;
};

struct Grading {
  int depth = 0;
  /// i in [-depth, depth] -> basis of g_i. g_0 lists m0, then a0, then height-0 root spaces.
  std::map<int, std::vector<Vector>> components;
  Vector grading_element;

  const std::vector<Vector>& component(int i) const;
};

Parabolic parabolic_from_subset(const LieAlgebra& algebra, const RootDatum& roots,
                                const std::vector<std::size_t>& sigma);

/// Components of the grading; the grading element is filled in by grading_element().
Grading compute_grading(const LieAlgebra& algebra, const RootDatum& roots, const Parabolic& parabolic);

/// Solves [E, X] = iX over all graded basis vectors; throws ConsistencyError
/// when the solution is missing or not unique, or when theta(E) != -E.
Vector grading_element(const LieAlgebra& algebra, const Grading& grading);

/// compute_grading followed by grading_element.
Grading build_grading(const LieAlgebra& algebra, const RootDatum& roots, const Parabolic& parabolic);

/// Exact checks of every grading invariant; empty string on success.
std::string check_grading(const LieAlgebra& algebra, const RootDatum& roots, const Parabolic& parabolic,
                          const Grading& grading);

}  // namespace pforms

#endif
