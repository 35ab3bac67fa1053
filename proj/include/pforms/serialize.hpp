#ifndef PFORMS_SERIALIZE_HPP
#define PFORMS_SERIALIZE_HPP

// JSON encodings of configs, forms and reports. Rationals are strings "p/q".

#include "pforms/kernel_builder.hpp"

#include "json.hpp"

namespace pforms {

struct AlgebraConfig {
  AlgebraSpec spec;
  std::vector<std::size_t> sigma;
};

/// {"family": "so", "p": P, "q": 1} or {"family": "sl", "n": N}, optional "sigma": [indices].
AlgebraConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const AlgebraConfig& config);

/// {"p", "q", "radicand", "coeffs": [[[index tuple], "p/q"], ...]}; only nonzero
/// coefficients are listed, in monomial order. The form's value is sqrt(radicand) times the sum.
nlohmann::json form_to_json(const BigradedForm& form);
BigradedForm form_from_json(const nlohmann::json& j, std::size_t dim10, std::size_t dim01);

nlohmann::json report_to_json(const KernelReport& report);

/// Algebra, root, grading and module data of a context.
nlohmann::json inspect_json(const KernelContext& ctx);

nlohmann::json vector_to_json(const Vector& v);

}  // namespace pforms

#endif
