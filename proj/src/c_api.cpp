#include "pforms/pforms.h"

#include "pforms/hyperbolic.hpp"
#include "pforms/serialize.hpp"

#include <cstring>
#include <exception>
#include <memory>
#include <string>

struct pforms_context {
  pforms::AlgebraConfig config;
  pforms::KernelContext kernel;
};

namespace {

thread_local std::string last_error;

using nlohmann::json;

char* copy_out(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename F>
pforms_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return PFORMS_OK;
  } catch (const pforms::InvalidArgument& e) {
    last_error = e.what();
    return PFORMS_INVALID_ARGUMENT;
  } catch (const std::invalid_argument& e) {
    last_error = e.what();
    return PFORMS_INVALID_ARGUMENT;
  } catch (const json::exception& e) {
    last_error = std::string("malformed JSON: ") + e.what();
    return PFORMS_INVALID_ARGUMENT;
  } catch (const pforms::ConsistencyError& e) {
    last_error = e.what();
    return PFORMS_CONSISTENCY_ERROR;
  } catch (const std::exception& e) {
    last_error = e.what();
    return PFORMS_INTERNAL_ERROR;
  } catch (...) {
    last_error = "unknown error";
    return PFORMS_INTERNAL_ERROR;
  }
}

void require(bool condition, const char* message) {
  if (!condition) throw pforms::InvalidArgument(message);
}

json transform(const json& options) {
  namespace h = pforms::hyperbolic;
  require(options.is_object(), "transform options must be a JSON object");
  require(options.contains("n") && options.at("n").is_number_integer(), "transform options need an integer \"n\"");
  const int n = options.at("n").get<int>();
  require(n >= 1 && n <= 3, "transform supports boundary spheres S^n with n = 1, 2, 3");
  const double s = options.value("lambda", 0.0);
  const double step = options.value("fd_step", 1e-3);
  const int partitions = options.value("partitions", 1);
  std::vector<int> nodes = options.value("nodes", std::vector<int>{});
  const h::SphereRule rule = h::sphere_rule(n, nodes);
  if (nodes.empty()) nodes = h::default_nodes(n);

  h::Vec probe = h::Vec::Zero(n + 1);
  if (options.contains("probe")) {
    const auto coords = options.at("probe").get<std::vector<double>>();
    require(coords.size() == static_cast<std::size_t>(n + 1), "probe needs n + 1 spatial coordinates");
    for (int i = 0; i <= n; ++i) probe(i) = coords[static_cast<std::size_t>(i)];
  }

  std::string density_name = "const";
  h::BoundaryDensity sigma = h::BoundaryDensity::builtin("const", n);
  if (options.contains("density")) {
    const json& d = options.at("density");
    if (d.is_string()) {
      density_name = d.get<std::string>();
      sigma = h::BoundaryDensity::builtin(density_name, n);
    } else {
      density_name = "nodes";
      sigma = h::BoundaryDensity::from_node_values(d.get<std::vector<double>>());
    }
  }

  const h::Vec x = h::hyperboloid_point(probe);
  const double base_const = h::transform_phi0(h::BoundaryDensity::builtin("const", n), h::GroupElement::identity(n), s, rule);
  json out = {{"n", n},
              {"lambda", s},
              {"rho", n / 2.0},
              {"nodes", nodes},
              {"density", density_name},
              {"probe", options.value("probe", std::vector<double>(static_cast<std::size_t>(n + 1), 0.0))},
              {"value", h::transform_phi0_at(sigma, x, s, rule, partitions)},
              {"normalization", 1.0 / base_const}};
  if (sigma.has_formula()) {
    // The O(step^2) decay is read off at 4 and 2 times the step: near 1e-3 the
    // truncation error already meets the rounding floor.
    const double r1 = h::eigenvalue_residual(sigma, s, {probe}, step, rule);
    const double r2 = h::eigenvalue_residual(sigma, s, {probe}, 2 * step, rule);
    const double r4 = h::eigenvalue_residual(sigma, s, {probe}, 4 * step, rule);
    const h::GroupElement g = h::random_group_element(n, 1, 0.5, 0.5);
    out["fd_step"] = step;
    out["eigenvalue_residual"] = r1;
    out["residual_steps"] = {4 * step, 2 * step, step};
    out["residuals"] = {r4, r2, r1};
    out["residual_decay_ratio"] = r2 > 0 ? json(r4 / r2) : json(nullptr);
    out["equivariance_defect"] = h::equivariance_defect(sigma, g, x, s, rule);
    out["measure_change_defect"] = h::measure_change_defect(sigma, g, rule);
  }
  return out;
}

json invariant_dimensions(const pforms::QuotientModule& qm) {
  json dims = json::array();
  for (std::size_t k = 0; k <= qm.n; ++k) {
    const auto basis = pforms::invariant_forms_basis(qm, static_cast<int>(k), static_cast<int>(qm.n - k));
    dims.push_back({{"bidegree", {k, qm.n - k}}, {"dim", basis.size()}});
  }
  return dims;
}

}  // namespace

extern "C" {

const char* pforms_version(void) { return "1.0.0"; }

const char* pforms_last_error(void) { return last_error.c_str(); }

pforms_status pforms_context_create(const char* config_json, pforms_context** out) {
  return guarded([&] {
    require(config_json != nullptr && out != nullptr, "null argument");
    *out = nullptr;
    auto ctx = std::make_unique<pforms_context>();
    ctx->config = pforms::config_from_json(json::parse(config_json));
    ctx->kernel = pforms::make_context(ctx->config.spec, ctx->config.sigma);
    *out = ctx.release();
  });
}

void pforms_context_destroy(pforms_context* ctx) { delete ctx; }

pforms_status pforms_inspect(const pforms_context* ctx, char** out_json) {
  return guarded([&] {
    require(ctx != nullptr && out_json != nullptr, "null argument");
    json j = pforms::inspect_json(ctx->kernel);
    j["config"] = pforms::config_to_json(ctx->config);
    j["invariant_dims"] = invariant_dimensions(ctx->kernel.module);
    *out_json = copy_out(j.dump());
  });
}

pforms_status pforms_kernel(const pforms_context* ctx, int k, char** out_json) {
  return guarded([&] {
    require(ctx != nullptr && out_json != nullptr, "null argument");
    const auto& kc = ctx->kernel;
    const auto phi = pforms::poisson_kernel(kc.module, kc.metric, k);
    json j = {{"algebra", kc.algebra.name}, {"sigma", kc.parabolic.sigma}, {"k", k},
              {"kernel", pforms::form_to_json(phi)}};
    *out_json = copy_out(j.dump());
  });
}

pforms_status pforms_verify(const pforms_context* ctx, int k, char** out_json, int* all_ok) {
  return guarded([&] {
    require(ctx != nullptr && out_json != nullptr, "null argument");
    const auto report = pforms::verify_kernel(ctx->kernel, k);
    if (all_ok != nullptr) *all_ok = report.all_ok() ? 1 : 0;
    *out_json = copy_out(pforms::report_to_json(report).dump());
  });
}

pforms_status pforms_transform(const char* options_json, char** out_json) {
  return guarded([&] {
    require(options_json != nullptr && out_json != nullptr, "null argument");
    *out_json = copy_out(transform(json::parse(options_json)).dump());
  });
}

void pforms_string_free(char* s) { delete[] s; }

}  // extern "C"
