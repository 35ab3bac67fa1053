#include "pforms/kernel_builder.hpp"

namespace pforms {

namespace {

void require_empty(const std::string& failure, const char* what) {
  if (!failure.empty()) throw ConsistencyError(std::string(what) + ": " + failure);
}

CoefficientResidual nonzero_terms(const BigradedForm& form) {
  CoefficientResidual out;
  for (std::size_t i = 0; i < form.size(); ++i) {
    if (sgn(form.coefficients()[i]) != 0) out.emplace_back(form.monomial(i), form.coefficients()[i]);
  }
  return out;
}

// c with action(form) = c * form, if any.
std::optional<Rational> eigenvalue(const BigradedForm& form, const BigradedForm& image) {
  std::optional<Rational> c;
  for (std::size_t i = 0; i < form.size(); ++i) {
    const Rational& f = form.coefficients()[i];
    const Rational& g = image.coefficients()[i];
    if (sgn(f) == 0) {
      if (sgn(g) != 0) return std::nullopt;
      continue;
    }
    if (!c) c = g / f;
    if (g != *c * f) return std::nullopt;
  }
  return c;
}

}  // namespace

KernelContext make_context(const AlgebraSpec& spec, const std::vector<std::size_t>& sigma) {
  KernelContext ctx;
  ctx.algebra = build_algebra(spec);
  require_empty(check_jacobi(ctx.algebra), "Jacobi identity");
  require_empty(check_theta(ctx.algebra), "Cartan involution");
  require_empty(check_killing(ctx.algebra), "Killing form");
  ctx.roots = restricted_roots(ctx.algebra);
  require_empty(check_root_datum(ctx.algebra, ctx.roots), "root datum");
  ctx.parabolic = parabolic_from_subset(ctx.algebra, ctx.roots, sigma);
  ctx.grading = build_grading(ctx.algebra, ctx.roots, ctx.parabolic);
  require_empty(check_grading(ctx.algebra, ctx.roots, ctx.parabolic, ctx.grading), "grading");
  ctx.module = quotient_module(ctx.algebra, ctx.grading);
  require_empty(check_quotient_module(ctx.module), "quotient module");
  ctx.metric = metric_data(ctx.module);
  return ctx;
}

BigradedForm grading_coform(const QuotientModule& qm) { return dual_covector(qm, 0); }

BigradedForm fiber_volume_form(const QuotientModule& qm, const MetricData& metric) {
  const std::size_t d = qm.d;
  for (std::size_t z = 0; z < qm.m_action.size(); ++z) {
    const Matrix& rho = qm.m_action[z];
    Rational trace = 0;
    for (std::size_t a = 0; a < d; ++a) {
      trace += rho(a, a);
      for (std::size_t b = d; b < qm.dimension; ++b) {
        if (sgn(rho(b, a)) != 0) throw ConsistencyError("m does not preserve (g/m)_0");
      }
    }
    if (sgn(trace) != 0) {
      throw ConsistencyError("m acts nontrivially on the top exterior power of (g/m)_0* (direction " +
                             std::to_string(z) + "); the fiber volume form is not invariant");
    }
  }
  BigradedForm tau(qm.dim10, qm.dim01, static_cast<int>(d), 0);
  std::vector<std::size_t> all(d);
  for (std::size_t a = 0; a < d; ++a) all[a] = a;
  tau[all] = 1;
  Matrix g0(d, d);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) g0(a, b) = metric.gram(a, b);
  }
  tau.multiply_by_sqrt(determinant(g0));
  return tau;
}

BigradedForm poisson_kernel(const QuotientModule& qm, const MetricData& metric, int k) {
  const int n = static_cast<int>(qm.n);
  if (k < 0 || k > n) throw InvalidArgument("kernel degree k must lie in [0, " + std::to_string(n) + "]");
  const BigradedForm dpe = d_p(qm, grading_coform(qm));
  BigradedForm omega = fiber_volume_form(qm, metric);
  for (int j = 0; j < n - k; ++j) omega = wedge(omega, dpe);
  if (omega.is_zero()) {
    throw ConsistencyError("degenerate grading: tau ^ (d_P E*)^" + std::to_string(n - k) + " vanishes");
  }
  BigradedForm phi = hodge_star_k(qm, metric, omega);
  if (phi.is_zero()) throw ConsistencyError("degenerate grading: phi_" + std::to_string(k) + " vanishes");
  return phi;
}

std::vector<PairingResidual> pairing_residuals(const QuotientModule& qm, PairingOrder order) {
  const auto& g = qm.algebra;
  const BigradedForm dpe = d_p(qm, grading_coform(qm));
  const Rational bee = killing_form(g, qm.grading.grading_element, qm.grading.grading_element);
  std::vector<PairingResidual> out;
  for (int i = 1; i <= qm.grading.depth; ++i) {
    const auto& pos = qm.grading.component(i);
    const auto& neg = qm.grading.component(-i);
    for (std::size_t a = 0; a < pos.size(); ++a) {
      for (std::size_t b = 0; b < neg.size(); ++b) {
        const Vector fx = qm.f_vector(pos[a]);
        const Vector gy = qm.g_vector(neg[b]);
        const Surd value = order == PairingOrder::f_first ? dpe.evaluate({fx, gy}) : dpe.evaluate({gy, fx});
        const Rational expected = Rational(i) * killing_form(g, pos[a], neg[b]) / bee;
        if (!(value == Surd{expected, 1})) {
          // d_P E* has no radical factor, so the residual is rational.
          out.push_back({i, a, b, value.coefficient - expected});
        }
      }
    }
  }
  return out;
}

std::vector<std::size_t> slice_pairing_ranks(const QuotientModule& qm) {
  const BigradedForm dpe = d_p(qm, grading_coform(qm));
  std::vector<std::size_t> ranks;
  for (int i = 1; i <= qm.grading.depth; ++i) {
    const auto& pos = qm.grading.component(i);
    const auto& neg = qm.grading.component(-i);
    Matrix m(neg.size(), pos.size());
    for (std::size_t a = 0; a < neg.size(); ++a) {
      for (std::size_t b = 0; b < pos.size(); ++b) {
        m(a, b) = dpe.evaluate({qm.g_vector(neg[a]), qm.f_vector(pos[b])}).coefficient;
      }
    }
    ranks.push_back(rank(m));
  }
  return ranks;
}

KernelReport verify_kernel(const KernelContext& ctx, int k) {
  const QuotientModule& qm = ctx.module;
  KernelReport report;
  report.algebra = ctx.algebra.name;
  report.sigma = ctx.parabolic.sigma;
  report.k = k;
  report.kernel = poisson_kernel(qm, ctx.metric, k);
  const BigradedForm& phi = report.kernel;
  report.p = phi.p();
  report.q = phi.q();
  report.bidegree_ok = phi.p() == k && phi.q() == static_cast<int>(qm.n) - k;

  const InvarianceCertificate cert = is_m_invariant(qm, phi);
  report.invariance_ok = cert.invariant;
  report.invariance_residual = cert.residual;

  if (report.invariance_ok) {
    const BigradedForm delta = codifferential_k(qm, ctx.metric, phi);
    report.coclosed_ok = delta.is_zero();
    report.coclosed_residual = nonzero_terms(delta);
  }

  const BigradedForm estar = grading_coform(qm);
  report.pairing_residual = pairing_residuals(qm, PairingOrder::g_first);
  bool ranks_full = true;
  const auto ranks = slice_pairing_ranks(qm);
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    ranks_full = ranks_full && ranks[i] == qm.grading.component(static_cast<int>(i) + 1).size();
  }
  report.pairing_ok = report.pairing_residual.empty() && ranks_full && d_k(qm, estar).is_zero();

  Vector weight;
  for (const auto& action : qm.a0_action01) {
    const auto c = eigenvalue(phi, lie_derivative(action, phi));
    if (!c) {
      weight.clear();
      break;
    }
    weight.push_back(*c);
  }
  if (weight.size() == qm.a0_action01.size()) report.weight = weight;
  return report;
}

}  // namespace pforms
