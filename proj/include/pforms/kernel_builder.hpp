#ifndef PFORMS_KERNEL_BUILDER_HPP
#define PFORMS_KERNEL_BUILDER_HPP

// The distinguished Poisson kernels phi_k = *_K(tau ^ (d_P E*)^(n-k)) and their
// exact verification reports.

#include "pforms/quotient_forms.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pforms {

/// Everything derived from an algebra and a parabolic, built once.
struct KernelContext {
  LieAlgebra algebra;
  RootDatum roots;
  Parabolic parabolic;
  Grading grading;
  QuotientModule module;
  MetricData metric;
};

/// Builds and checks the whole chain; throws InvalidArgument for bad sigma and
/// ConsistencyError if any structural check fails.
KernelContext make_context(const AlgebraSpec& spec, const std::vector<std::size_t>& sigma = {});

/// E*: e^0 in the module basis, i.e. E*(E) = 1 and E* vanishes on the B_theta-complement of E.
BigradedForm grading_coform(const QuotientModule& qm);

/// B_theta unit volume of (g/m)_0, extended by zero. Throws ConsistencyError when m
/// does not act trivially on the top power of (g/m)_0*.
BigradedForm fiber_volume_form(const QuotientModule& qm, const MetricData& metric);

/// phi_k of bidegree (k, n - k). Throws ConsistencyError when the kernel vanishes.
BigradedForm poisson_kernel(const QuotientModule& qm, const MetricData& metric, int k);

/// Which argument comes first when d_P E* is paired with F_X (X in g_i) and G_Y (Y in g_-i).
enum class PairingOrder {
  f_first,  // d_P E*(F_X, G_Y)
  g_first,  // d_P E*(G_Y, F_X)
};

struct PairingResidual {
  int degree = 0;
  std::size_t x_index = 0;  // position inside the basis of g_i
  std::size_t y_index = 0;  // position inside the basis of g_-i
  Rational value;           // d_P E*(...) - i B(X,Y) / B(E,E)
};

/// Nonzero residuals of d_P E* against i B(E,E)^-1 B(X,Y) over all graded basis pairs.
std::vector<PairingResidual> pairing_residuals(const QuotientModule& qm, PairingOrder order);

using CoefficientResidual = std::vector<std::pair<std::vector<std::size_t>, Rational>>;

struct KernelReport {
  std::string algebra;
  std::vector<std::size_t> sigma;
  int k = 0;
  int p = 0;
  int q = 0;
  bool bidegree_ok = false;
  bool invariance_ok = false;
  CoefficientResidual invariance_residual;
  bool coclosed_ok = false;
  CoefficientResidual coclosed_residual;
  /// d_K E* = 0, d_P E*(G_Y, F_X) = i B(E,E)^-1 B(X,Y), and every slice pairing of full rank.
  bool pairing_ok = false;
  std::vector<PairingResidual> pairing_residual;
  /// a0 eigenvalue of phi_k on a0_basis, when phi_k is an a0 eigenvector.
  std::optional<Vector> weight;
  BigradedForm kernel;

  bool all_ok() const { return bidegree_ok && invariance_ok && coclosed_ok && pairing_ok; }
};

KernelReport verify_kernel(const KernelContext& ctx, int k);

/// Rank of d_P E* restricted to (g/m)_-i x (g/m)_i, for i = 1..depth.
std::vector<std::size_t> slice_pairing_ranks(const QuotientModule& qm);

}  // namespace pforms

#endif
