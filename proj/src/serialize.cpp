#include "pforms/serialize.hpp"

namespace pforms {

using nlohmann::json;

namespace {

json residual_json(const CoefficientResidual& residual) {
  json out = json::array();
  for (const auto& [tuple, value] : residual) out.push_back(json::array({tuple, to_string(value)}));
  return out;
}

std::size_t require_size(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw InvalidArgument(std::string("config: missing integer field \"") + key + "\"");
  }
  const auto v = j.at(key).get<long long>();
  if (v < 0) throw InvalidArgument(std::string("config: field \"") + key + "\" must be nonnegative");
  return static_cast<std::size_t>(v);
}

}  // namespace

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

AlgebraConfig config_from_json(const json& j) {
  if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
  if (!j.contains("family") || !j.at("family").is_string()) throw InvalidArgument("config: missing \"family\"");
  AlgebraConfig config;
  const auto family = j.at("family").get<std::string>();
  if (family == "so") {
    config.spec.family = Family::so;
    const std::size_t q = j.contains("q") ? require_size(j, "q") : 1;
    if (q != 1) throw InvalidArgument("config: only so(p,1) is supported (q must be 1)");
    config.spec.size = static_cast<int>(require_size(j, "p"));
  } else if (family == "sl") {
    config.spec.family = Family::sl;
    config.spec.size = static_cast<int>(require_size(j, "n"));
  } else {
    throw InvalidArgument("config: unknown family \"" + family + "\" (expected \"so\" or \"sl\")");
  }
  if (j.contains("sigma")) {
    if (!j.at("sigma").is_array()) throw InvalidArgument("config: \"sigma\" must be an array of indices");
    for (const auto& s : j.at("sigma")) {
      if (!s.is_number_integer() || s.get<long long>() < 0) {
        throw InvalidArgument("config: \"sigma\" entries must be nonnegative integers");
      }
      config.sigma.push_back(s.get<std::size_t>());
    }
  }
  return config;
}

json config_to_json(const AlgebraConfig& config) {
  json j;
  if (config.spec.family == Family::so) {
    j = {{"family", "so"}, {"p", config.spec.size}, {"q", 1}};
  } else {
    j = {{"family", "sl"}, {"n", config.spec.size}};
  }
  j["sigma"] = config.sigma;
  return j;
}

json form_to_json(const BigradedForm& form) {
  json coeffs = json::array();
  for (std::size_t i = 0; i < form.size(); ++i) {
    const Rational& c = form.coefficients()[i];
    if (sgn(c) != 0) coeffs.push_back(json::array({form.monomial(i), to_string(c)}));
  }
  return {{"p", form.p()}, {"q", form.q()}, {"radicand", to_string(form.radicand())}, {"coeffs", coeffs}};
}

BigradedForm form_from_json(const json& j, std::size_t dim10, std::size_t dim01) {
  try {
    BigradedForm form(dim10, dim01, j.at("p").get<int>(), j.at("q").get<int>());
    if (j.contains("radicand")) form.set_radicand(parse_rational(j.at("radicand").get<std::string>()));
    for (const auto& entry : j.at("coeffs")) {
      form[entry.at(0).get<std::vector<std::size_t>>()] = parse_rational(entry.at(1).get<std::string>());
    }
    return form;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed form JSON: ") + e.what());
  }
}

json report_to_json(const KernelReport& report) {
  json pairing = json::array();
  for (const auto& r : report.pairing_residual) {
    pairing.push_back({{"degree", r.degree}, {"x", r.x_index}, {"y", r.y_index}, {"residual", to_string(r.value)}});
  }
  json j = {{"algebra", report.algebra},
            {"sigma", report.sigma},
            {"k", report.k},
            {"bidegree", {report.p, report.q}},
            {"bidegree_ok", report.bidegree_ok},
            {"invariant", report.invariance_ok},
            {"coclosed", report.coclosed_ok},
            {"pairing", report.pairing_ok},
            {"all_ok", report.all_ok()}};
  j["weight"] = report.weight ? json{{"coords", vector_to_json(*report.weight)}} : json(nullptr);
  json residuals = json::object();
  if (!report.invariance_residual.empty()) residuals["invariance"] = residual_json(report.invariance_residual);
  if (!report.coclosed_residual.empty()) residuals["coclosed"] = residual_json(report.coclosed_residual);
  if (!pairing.empty()) residuals["pairing"] = pairing;
  j["residuals"] = residuals;
  j["kernel"] = form_to_json(report.kernel);
  return j;
}

json inspect_json(const KernelContext& ctx) {
  const auto& g = ctx.algebra;
  const auto& qm = ctx.module;
  json roots = json::array();
  for (std::size_t r = 0; r < ctx.roots.roots.size(); ++r) {
    const auto& root = ctx.roots.roots[r];
    roots.push_back({{"values", vector_to_json(root.values)},
                     {"dim", root.space.size()},
                     {"positive", root.positive},
                     {"height", ctx.parabolic.heights[r]}});
  }
  json grading = json::array();
  for (const auto& [i, basis] : ctx.grading.components) grading.push_back({{"i", i}, {"dim", basis.size()}});
  return {{"algebra", g.name},
          {"dimension", g.dimension()},
          {"dim_k", g.k_indices.size()},
          {"dim_q", g.q_indices.size()},
          {"a0_dim", ctx.roots.a0_basis.size()},
          {"m0_dim", ctx.roots.m0_basis.size()},
          {"rho", vector_to_json(ctx.roots.rho)},
          {"roots", roots},
          {"simple", ctx.roots.simple},
          {"sigma", ctx.parabolic.sigma},
          {"depth", ctx.grading.depth},
          {"grading", grading},
          {"grading_element", vector_to_json(ctx.grading.grading_element)},
          {"quotient",
           {{"dimension", qm.dimension},
            {"dim10", qm.dim10},
            {"dim01", qm.dim01},
            {"n", qm.n},
            {"d", qm.d},
            {"dim_m", qm.m_basis.size()}}}};
}

}  // namespace pforms
