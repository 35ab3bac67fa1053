#include "pforms/hyperbolic.hpp"

#include "pforms/lie_core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace pforms::hyperbolic {

namespace {

Mat signature(int size) {
  Mat j = Mat::Identity(size, size);
  j(size - 1, size - 1) = -1;
  return j;
}

// Uniform in [-1, 1], independent of the standard library's distributions.
double symmetric_uniform(std::mt19937_64& rng) {
  return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0;
}

Mat random_rotation(int size, std::mt19937_64& rng) {
  Mat a(size, size);
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) a(i, j) = symmetric_uniform(rng);
  }
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR();
  for (int j = 0; j < size; ++j) {
    if (r(j, j) < 0) q.col(j) *= -1;
  }
  if (q.determinant() < 0) q.col(0) *= -1;
  return q;
}

double sum_range(const std::vector<double>& values, std::size_t begin, std::size_t end) {
  if (end - begin <= 8) {
    double s = 0;
    for (std::size_t i = begin; i < end; ++i) s += values[i];
    return s;
  }
  const std::size_t mid = begin + (end - begin) / 2;
  return sum_range(values, begin, mid) + sum_range(values, mid, end);
}

}  // namespace

GroupElement::GroupElement(Mat matrix) : m_(std::move(matrix)) {
  if (m_.rows() != m_.cols() || m_.rows() < 3) throw std::invalid_argument("group element must be square of size >= 3");
  const int size = static_cast<int>(m_.rows());
  const Mat j = signature(size);
  const double defect = (m_.transpose() * j * m_ - j).cwiseAbs().maxCoeff();
  if (!(defect <= kGroupTolerance)) {
    throw std::invalid_argument("matrix does not preserve the Lorentz form (defect " + std::to_string(defect) + ")");
  }
  if (m_.determinant() < 0) throw std::invalid_argument("matrix has determinant -1");
  if (m_(size - 1, size - 1) <= 0) throw std::invalid_argument("matrix reverses the time orientation");
}

GroupElement GroupElement::inverse() const {
  const Mat j = signature(static_cast<int>(m_.rows()));
  return GroupElement(j * m_.transpose() * j);
}

GroupElement GroupElement::operator*(const GroupElement& other) const { return GroupElement(m_ * other.m_); }

GroupElement GroupElement::identity(int n) { return GroupElement(Mat::Identity(n + 2, n + 2)); }

GroupElement GroupElement::boost(int n, double t) {
  Mat m = Mat::Identity(n + 2, n + 2);
  const int last = n + 1;
  m(0, 0) = m(last, last) = std::cosh(t);
  m(0, last) = m(last, 0) = std::sinh(t);
  return GroupElement(m);
}

GroupElement GroupElement::unipotent(const Vec& v) {
  const int n = static_cast<int>(v.size());
  const int last = n + 1;
  Mat x = Mat::Zero(n + 2, n + 2);
  for (int j = 1; j <= n; ++j) {
    x(0, j) += v(j - 1);
    x(j, 0) -= v(j - 1);
    x(j, last) += v(j - 1);
    x(last, j) += v(j - 1);
  }
  return GroupElement(Mat::Identity(n + 2, n + 2) + x + 0.5 * x * x);
}

GroupElement GroupElement::rotation(const Mat& r) {
  const int size = static_cast<int>(r.rows());
  Mat m = Mat::Identity(size + 1, size + 1);
  m.topLeftCorner(size, size) = r;
  return GroupElement(m);
}

GroupElement GroupElement::translation_to(const Vec& x) {
  const int size = static_cast<int>(x.size());
  const Vec u = x.head(size - 1);
  const double c = x(size - 1);
  Mat m(size, size);
  m.topLeftCorner(size - 1, size - 1) = Mat::Identity(size - 1, size - 1) + u * u.transpose() / (1.0 + c);
  m.topRightCorner(size - 1, 1) = u;
  m.bottomLeftCorner(1, size - 1) = u.transpose();
  m(size - 1, size - 1) = c;
  return GroupElement(m);
}

Mat IwasawaTriple::reassemble(int n) const { return k_part * GroupElement::boost(n, t).matrix() * n_part; }

double exp_alpha_h(const GroupElement& g) {
  const Mat& m = g.matrix();
  const auto last = m.rows() - 1;
  return m(last, 0) + m(last, last);
}

IwasawaTriple iwasawa(const GroupElement& g) {
  const int n = g.n();
  IwasawaTriple out;
  out.t = std::log(exp_alpha_h(g));
  // g^{-1} o = n^{-1} exp(-tH0) o has spatial part -e^t v in the X_j directions.
  const Vec y = g.inverse().apply_to_base();
  out.v = -std::exp(-out.t) * y.segment(1, n);
  out.n_part = GroupElement::unipotent(out.v).matrix();
  const Mat a_inv = GroupElement::boost(n, -out.t).matrix();
  const Mat n_inv = GroupElement::unipotent(-out.v).matrix();
  out.k_part = g.matrix() * n_inv * a_inv;
  return out;
}

Vec hyperboloid_point(const Vec& spatial) {
  Vec x(spatial.size() + 1);
  x.head(spatial.size()) = spatial;
  x(spatial.size()) = std::sqrt(1.0 + spatial.squaredNorm());
  return x;
}

double classical_kernel_at(const Vec& x, const Vec& b, double s) {
  const auto last = x.size() - 1;
  const double n = static_cast<double>(b.size()) - 1.0;
  return std::pow(x(last) - x.head(last).dot(b), -(s + n / 2.0));
}

double classical_kernel(const GroupElement& g, const Vec& b, double s) {
  return classical_kernel_at(g.apply_to_base(), b, s);
}

Vec boundary_action(const GroupElement& g, const Vec& b) {
  Vec xi(b.size() + 1);
  xi.head(b.size()) = b;
  xi(b.size()) = 1.0;
  const Vec image = g.matrix() * xi;
  return image.head(b.size()) / image(b.size());
}

double boundary_cocycle(const GroupElement& g, const Vec& b) {
  const Mat& m = g.matrix();
  const auto last = m.rows() - 1;
  return m.row(last).head(b.size()).dot(b) + m(last, last);
}

void gauss_legendre(int count, double a, double b, std::vector<double>& nodes, std::vector<double>& weights) {
  if (count < 1) throw std::invalid_argument("Gauss-Legendre rule needs at least one node");
  nodes.assign(static_cast<std::size_t>(count), 0.0);
  weights.assign(static_cast<std::size_t>(count), 0.0);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const int m = (count + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Newton iteration on P_count from the Chebyshev-like initial guess.
    double z = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
    double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 1; j <= count; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = count * (z * p0 - p1) / (z * z - 1.0);
      const double step = p0 / dp;
      z -= step;
      if (std::abs(step) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    nodes[static_cast<std::size_t>(i)] = mid - half * z;
    nodes[static_cast<std::size_t>(count - 1 - i)] = mid + half * z;
    weights[static_cast<std::size_t>(i)] = weights[static_cast<std::size_t>(count - 1 - i)] = half * w;
  }
}

double pairwise_sum(const std::vector<double>& values) { return sum_range(values, 0, values.size()); }

std::vector<int> default_nodes(int n) {
  switch (n) {
    case 1:
      return {256};
    case 2:
      return {64, 128};
    case 3:
      return {32, 32, 64};
    default:
      throw std::invalid_argument("sphere rules are available for n = 1, 2, 3");
  }
}

SphereRule sphere_rule(int n, const std::vector<int>& nodes) {
  const std::vector<int> counts = nodes.empty() ? default_nodes(n) : nodes;
  if (n < 1 || n > 3) throw std::invalid_argument("sphere rules are available for n = 1, 2, 3");
  if (static_cast<int>(counts.size()) != n) {
    throw std::invalid_argument("S^" + std::to_string(n) + " needs " + std::to_string(n) + " node counts");
  }
  // Angles psi_1..psi_{n-1} in [0, pi] with density sin^{n-j} psi_j, azimuth phi in [0, 2 pi].
  std::vector<std::vector<double>> angle_nodes(static_cast<std::size_t>(n));
  std::vector<std::vector<double>> angle_weights(static_cast<std::size_t>(n));
  for (int j = 0; j < n - 1; ++j) {
    gauss_legendre(counts[static_cast<std::size_t>(j)], 0.0, std::numbers::pi, angle_nodes[static_cast<std::size_t>(j)],
                   angle_weights[static_cast<std::size_t>(j)]);
    for (std::size_t i = 0; i < angle_nodes[static_cast<std::size_t>(j)].size(); ++i) {
      angle_weights[static_cast<std::size_t>(j)][i] *=
          std::pow(std::sin(angle_nodes[static_cast<std::size_t>(j)][i]), n - 1 - j);
    }
  }
  gauss_legendre(counts.back(), 0.0, 2.0 * std::numbers::pi, angle_nodes.back(), angle_weights.back());

  SphereRule rule;
  rule.n = n;
  std::vector<std::size_t> index(static_cast<std::size_t>(n), 0);
  while (true) {
    Vec b(n + 1);
    double weight = 1.0;
    double radius = 1.0;
    for (int j = 0; j < n - 1; ++j) {
      const double psi = angle_nodes[static_cast<std::size_t>(j)][index[static_cast<std::size_t>(j)]];
      b(j) = radius * std::cos(psi);
      radius *= std::sin(psi);
      weight *= angle_weights[static_cast<std::size_t>(j)][index[static_cast<std::size_t>(j)]];
    }
    const double phi = angle_nodes.back()[index.back()];
    b(n - 1) = radius * std::cos(phi);
    b(n) = radius * std::sin(phi);
    weight *= angle_weights.back()[index.back()];
    rule.points.push_back(b);
    rule.weights.push_back(weight);
    int j = n - 1;
    while (j >= 0 && ++index[static_cast<std::size_t>(j)] == angle_nodes[static_cast<std::size_t>(j)].size()) {
      index[static_cast<std::size_t>(j)] = 0;
      --j;
    }
    if (j < 0) break;
  }
  const double total = pairwise_sum(rule.weights);
  for (auto& w : rule.weights) w /= total;
  return rule;
}

BoundaryDensity::BoundaryDensity(std::function<double(const Vec&)> f, std::string name)
    : f_(std::move(f)), name_(std::move(name)) {}

BoundaryDensity BoundaryDensity::from_node_values(std::vector<double> values, std::string name) {
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("density values must be finite");
  }
  BoundaryDensity d;
  d.values_ = std::move(values);
  d.name_ = std::move(name);
  return d;
}

BoundaryDensity BoundaryDensity::builtin(const std::string& spec, int n) {
  if (spec == "const") return BoundaryDensity([](const Vec&) { return 1.0; }, spec);
  if (spec.rfind("coord-", 0) == 0) {
    const int k = std::stoi(spec.substr(6));
    if (k < 0 || k > n) throw std::invalid_argument("coord-k needs 0 <= k <= " + std::to_string(n));
    return BoundaryDensity([k](const Vec& b) { return b(k); }, spec);
  }
  if (spec.rfind("random-smooth:", 0) == 0) {
    const auto seed = static_cast<std::uint64_t>(std::stoull(spec.substr(14)));
    std::mt19937_64 rng(seed);
    const int dim = n + 1;
    // Monomials of degree <= 3 in b as index triples i <= j <= k, with -1 standing for "no factor".
    std::vector<std::array<int, 3>> monomials;
    std::vector<double> coeffs;
    for (int i = -1; i < dim; ++i) {
      for (int j = i; j < dim; ++j) {
        for (int k = std::max(j, 0); k < dim; ++k) {
          monomials.push_back({i, j, k});
          coeffs.push_back(symmetric_uniform(rng));
        }
      }
    }
    monomials.push_back({-1, -1, -1});
    coeffs.push_back(symmetric_uniform(rng));
    return BoundaryDensity(
        [monomials, coeffs](const Vec& b) {
          double total = 0;
          for (std::size_t m = 0; m < monomials.size(); ++m) {
            double term = coeffs[m];
            for (int idx : monomials[m]) {
              if (idx >= 0) term *= b(idx);
            }
            total += term;
          }
          return total;
        },
        spec);
  }
  throw std::invalid_argument("unknown density \"" + spec + "\" (expected const, coord-k or random-smooth:seed)");
}

double BoundaryDensity::operator()(const Vec& b) const {
  if (!f_) throw std::invalid_argument("density \"" + name_ + "\" is only known at quadrature nodes");
  return f_(b);
}

std::vector<double> BoundaryDensity::sample(const SphereRule& rule) const {
  if (!f_) {
    if (values_.size() != rule.size()) {
      throw std::invalid_argument("density has " + std::to_string(values_.size()) + " node values, rule has " +
                                  std::to_string(rule.size()) + " nodes");
    }
    return values_;
  }
  std::vector<double> out;
  out.reserve(rule.size());
  for (const auto& b : rule.points) out.push_back(f_(b));
  return out;
}

double transform_phi0_at(const BoundaryDensity& sigma, const Vec& x, double s, const SphereRule& rule,
                         int partitions) {
  if (x.size() != rule.n + 2) throw std::invalid_argument("point and quadrature rule have different dimensions");
  if (partitions < 1) throw std::invalid_argument("partition count must be positive");
  const std::vector<double> values = sigma.sample(rule);
  std::vector<double> terms(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    terms[i] = rule.weights[i] * classical_kernel_at(x, rule.points[i], s) * values[i];
  }
  const auto parts = static_cast<std::size_t>(partitions);
  std::vector<double> partial;
  for (std::size_t p = 0; p < parts; ++p) {
    partial.push_back(sum_range(terms, p * terms.size() / parts, (p + 1) * terms.size() / parts));
  }
  return pairwise_sum(partial);
}

double transform_phi0(const BoundaryDensity& sigma, const GroupElement& g, double s, const SphereRule& rule,
                      int partitions) {
  return transform_phi0_at(sigma, g.apply_to_base(), s, rule, partitions);
}

double killing_norm_h0(int n) {
  const LieAlgebra g = build_algebra({Family::so, n + 1});
  return killing_form(g, g.a0_hint.at(0), g.a0_hint.at(0)).get_d();
}

double eigenvalue_residual(const BoundaryDensity& sigma, double s, const std::vector<Vec>& probes, double step,
                           const SphereRule& rule) {
  if (!(step >= kMinStep)) {
    throw std::invalid_argument("finite-difference step " + std::to_string(step) +
                                " is below the cancellation limit; use a step of at least 3e-6 (default 1e-3)");
  }
  const int n = rule.n;
  const double nn = static_cast<double>(n);
  const double eigenvalue = s * s - nn * nn / 4.0;
  const double scale = killing_norm_h0(n);
  double worst = 0;
  for (const auto& y : probes) {
    if (y.size() != n + 1) throw std::invalid_argument("probe point must have n + 1 spatial coordinates");
    const Vec x = hyperboloid_point(y);
    const GroupElement h = GroupElement::translation_to(x);
    const double f0 = transform_phi0_at(sigma, x, s, rule);
    double laplacian = 0;
    for (int i = 0; i <= n; ++i) {
      Vec tangent = Vec::Zero(n + 2);
      tangent(n + 1) = std::cosh(step);
      tangent(i) = std::sinh(step);
      const double plus = transform_phi0_at(sigma, h.matrix() * tangent, s, rule);
      tangent(i) = -std::sinh(step);
      const double minus = transform_phi0_at(sigma, h.matrix() * tangent, s, rule);
      laplacian += (plus + minus - 2.0 * f0) / (step * step);
    }
    // Delta_B = Delta / B(H0,H0) and <alpha,alpha>_B = 1 / B(H0,H0).
    worst = std::max(worst, std::abs(laplacian - eigenvalue * f0) / scale);
  }
  return worst;
}

BoundaryDensity translate_density(const BoundaryDensity& sigma, const GroupElement& g, double s) {
  if (!sigma.has_formula()) throw std::invalid_argument("translating a density needs its values off the nodes");
  const double exponent = s - static_cast<double>(g.n()) / 2.0;
  return BoundaryDensity(
      [sigma, g, exponent](const Vec& b) {
        return std::pow(boundary_cocycle(g, b), exponent) * sigma(boundary_action(g, b));
      },
      sigma.name() + "@g");
}

double equivariance_defect(const BoundaryDensity& sigma, const GroupElement& g, const Vec& x, double s,
                           const SphereRule& rule) {
  const double direct = transform_phi0_at(sigma, g.matrix() * x, s, rule);
  const double moved = transform_phi0_at(translate_density(sigma, g, s), x, s, rule);
  return std::abs(direct - moved);
}

double measure_change_defect(const BoundaryDensity& f, const GroupElement& g, const SphereRule& rule) {
  const double n = static_cast<double>(rule.n);
  std::vector<double> pushed;
  std::vector<double> plain;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const Vec& b = rule.points[i];
    pushed.push_back(rule.weights[i] * f(boundary_action(g, b)) * std::pow(boundary_cocycle(g, b), -n));
    plain.push_back(rule.weights[i] * f(b));
  }
  return std::abs(pairwise_sum(pushed) - pairwise_sum(plain));
}

GroupElement random_group_element(int n, std::uint64_t seed, double t_max, double v_max, IwasawaTriple& factors) {
  std::mt19937_64 rng(seed);
  factors.k_part = GroupElement::rotation(random_rotation(n + 1, rng)).matrix();
  factors.t = t_max * symmetric_uniform(rng);
  factors.v = Vec(n);
  for (int j = 0; j < n; ++j) factors.v(j) = v_max * symmetric_uniform(rng);
  factors.n_part = GroupElement::unipotent(factors.v).matrix();
  return GroupElement(factors.reassemble(n));
}

GroupElement random_group_element(int n, std::uint64_t seed, double t_max, double v_max) {
  IwasawaTriple factors;
  return random_group_element(n, seed, t_max, v_max, factors);
}

}  // namespace pforms::hyperbolic
