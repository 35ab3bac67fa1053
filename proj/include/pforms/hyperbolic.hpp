#ifndef PFORMS_HYPERBOLIC_HPP
#define PFORMS_HYPERBOLIC_HPP

// Floating-point model of G = SO_0(n+1,1) acting on the hyperboloid
// { x : x_0^2 + ... + x_n^2 - x_t^2 = -1, x_t > 0 }, t = n + 1, with boundary
// sphere S^n = K/M. The base point is o = e_t, the a0 generator is
// H0 = E_{0t} + E_{t0} and alpha(H0) = 1, so H(g) is reported as the real t
// with H(g) = t H0.
//
// For g = k exp(t H0) n: N fixes xi = e_0 + e_t, exp(t H0) scales it by e^t and
// k fixes e_t, so
//
//   e^{alpha(H(g))} = e_t^T g xi = g(t,0) + g(t,t),
//
// i.e. H is read off the last row of g.

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace pforms::hyperbolic {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

/// Tolerance of the defining relation g^T J g = J.
inline constexpr double kGroupTolerance = 1e-12;

class GroupElement {
 public:
  /// Validates g^T J g = J, det g = 1 and g(t,t) > 0; throws std::invalid_argument.
  explicit GroupElement(Mat matrix);

  const Mat& matrix() const { return m_; }
  /// Boundary sphere dimension n (the matrix is (n+2) x (n+2)).
  int n() const { return static_cast<int>(m_.rows()) - 2; }
  GroupElement inverse() const;
  GroupElement operator*(const GroupElement& other) const;
  /// g . o
  Vec apply_to_base() const { return m_.col(m_.cols() - 1); }

  static GroupElement identity(int n);
  /// exp(t H0).
  static GroupElement boost(int n, double t);
  /// n_v = exp(sum_j v_j X_j) with X_j = E_{0j} - E_{j0} + E_{jt} + E_{tj}, j = 1..n.
  static GroupElement unipotent(const Vec& v);
  /// Embeds R in SO(n+1) acting on the first n+1 coordinates.
  static GroupElement rotation(const Mat& r);
  /// The symmetric boost taking o to the hyperboloid point x.
  static GroupElement translation_to(const Vec& x);

 private:
  Mat m_;
};

struct IwasawaTriple {
  Mat k_part;
  /// alpha(H(g)).
  double t = 0;
  /// Coordinates of log n(g) on X_1..X_n.
  Vec v;
  Mat n_part;

  Mat reassemble(int n) const;
};

IwasawaTriple iwasawa(const GroupElement& g);

/// e^{alpha(H(g))}, the closed form above.
double exp_alpha_h(const GroupElement& g);

/// Hyperboloid point over spatial coordinates y in R^{n+1}.
Vec hyperboloid_point(const Vec& spatial);

/// e^{-(lambda + rho)(H(g^{-1} k_b))} for lambda = s alpha, rho = (n/2) alpha and
/// b in S^n, which equals (x_t - x_space . b)^{-(s + n/2)} with x = g.o.
double classical_kernel(const GroupElement& g, const Vec& b, double s);
double classical_kernel_at(const Vec& x, const Vec& b, double s);

/// g.b on S^n and the factor e^{alpha(H(g k_b))} = (g (b,1))_t.
Vec boundary_action(const GroupElement& g, const Vec& b);
double boundary_cocycle(const GroupElement& g, const Vec& b);

/// Gauss-Legendre nodes and weights on [a, b].
void gauss_legendre(int count, double a, double b, std::vector<double>& nodes, std::vector<double>& weights);

/// Tree summation in a fixed order.
double pairwise_sum(const std::vector<double>& values);

/// Product Gauss-Legendre rule on S^n in hyperspherical angles, weights summing to 1.
struct SphereRule {
  int n = 0;
  std::vector<Vec> points;
  std::vector<double> weights;

  std::size_t size() const { return points.size(); }
};

/// Default node counts: {256} for n = 1, {64, 128} for n = 2, {32, 32, 64} for n = 3.
std::vector<int> default_nodes(int n);
/// `nodes` lists one count per angle: polar angles first, azimuth last.
SphereRule sphere_rule(int n, const std::vector<int>& nodes = {});

/// A function on K/M = S^n, given by a formula or by its values at the nodes of a rule.
class BoundaryDensity {
 public:
  explicit BoundaryDensity(std::function<double(const Vec&)> f, std::string name = "custom");
  static BoundaryDensity from_node_values(std::vector<double> values, std::string name = "nodes");
  /// "const", "coord-k" (b_k) or "random-smooth:seed" (random cubic polynomial in b).
  static BoundaryDensity builtin(const std::string& spec, int n);

  bool has_formula() const { return static_cast<bool>(f_); }
  const std::string& name() const { return name_; }
  double operator()(const Vec& b) const;
  /// Values at the rule's nodes; node-valued densities must match the rule size.
  std::vector<double> sample(const SphereRule& rule) const;

 private:
  BoundaryDensity() = default;
  std::function<double(const Vec&)> f_;
  std::vector<double> values_;
  std::string name_;
};

/// Quadrature value of Phi_0(sigma)(x) = int_{K/M} e^{-(lambda+rho)(H(x^{-1} k))} sigma(kM) dkM.
/// `partitions` contiguous blocks are summed pairwise, then combined pairwise.
double transform_phi0_at(const BoundaryDensity& sigma, const Vec& x, double s, const SphereRule& rule,
                         int partitions = 1);
double transform_phi0(const BoundaryDensity& sigma, const GroupElement& g, double s, const SphereRule& rule,
                      int partitions = 1);

/// Smallest accepted finite-difference step; below it rounding dominates.
inline constexpr double kMinStep = 3e-6;

/// max over probes of |Delta_B Phi_0 sigma - (<lambda,lambda> - <rho,rho>) Phi_0 sigma| in the
/// metric induced by the Killing form, with Delta_B computed by central differences along
/// geodesics. Probes are spatial coordinates of hyperboloid points. Throws std::invalid_argument
/// for steps below kMinStep.
double eigenvalue_residual(const BoundaryDensity& sigma, double s, const std::vector<Vec>& probes, double step,
                           const SphereRule& rule);

/// B(H0, H0) for so(n+1,1), computed exactly by the Lie-algebra core.
double killing_norm_h0(int n);

/// (g^{-1}.sigma)(b) = e^{(lambda - rho)(H(g k_b))} sigma(g.b); requires a formula density.
BoundaryDensity translate_density(const BoundaryDensity& sigma, const GroupElement& g, double s);

/// |Phi_0(sigma)(g.x) - Phi_0(g^{-1}.sigma)(x)|.
double equivariance_defect(const BoundaryDensity& sigma, const GroupElement& g, const Vec& x, double s,
                           const SphereRule& rule);

/// |int f(g.b) e^{-2 rho(H(g k_b))} db - int f(b) db|.
double measure_change_defect(const BoundaryDensity& f, const GroupElement& g, const SphereRule& rule);

/// Random element k exp(tH0) n_v with |t| <= t_max and |v_j| <= v_max.
GroupElement random_group_element(int n, std::uint64_t seed, double t_max = 1.0, double v_max = 1.0);
/// Same, also returning the factors it was built from.
GroupElement random_group_element(int n, std::uint64_t seed, double t_max, double v_max, IwasawaTriple& factors);

}  // namespace pforms::hyperbolic

#endif
