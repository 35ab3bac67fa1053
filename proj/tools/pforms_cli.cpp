// pforms: inspect algebras and gradings, build and verify Poisson kernels, and
// run the numeric transform on real hyperbolic space.
//
// Exit codes: 0 success, 1 verification or internal failure, 2 usage error.

#include "pforms/pforms.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct AlgebraFlags {
  std::string config_path;
  std::string family;
  std::optional<int> p;
  std::optional<int> q;
  std::optional<int> n;
  std::vector<int> sigma;
  bool sigma_given = false;
};

struct CallFailure {
  int exit_code;
  std::string message;
};

void add_algebra_flags(CLI::App* cmd, AlgebraFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON config file")->check(CLI::ExistingFile);
  cmd->add_option("--family", flags.family, "so or sl")->check(CLI::IsMember({"so", "sl"}));
  cmd->add_option("--p", flags.p, "p of so(p,1)");
  cmd->add_option("--q", flags.q, "q of so(p,1); must be 1");
  cmd->add_option("--n", flags.n, "n of sl(n,R)");
  cmd->add_option("--sigma", flags.sigma, "simple root indices of height 0")->delimiter(',');
}

json algebra_config(const AlgebraFlags& flags) {
  json config = json::object();
  if (!flags.config_path.empty()) {
    std::ifstream in(flags.config_path);
    try {
      config = json::parse(in);
    } catch (const json::exception& e) {
      throw CallFailure{kExitUsage, "malformed config " + flags.config_path + ": " + e.what()};
    }
    if (!config.is_object()) throw CallFailure{kExitUsage, "config must be a JSON object"};
  }
  if (!flags.family.empty()) config["family"] = flags.family;
  if (flags.p) config["p"] = *flags.p;
  if (flags.q) config["q"] = *flags.q;
  if (flags.n) config["n"] = *flags.n;
  if (!flags.sigma.empty()) config["sigma"] = flags.sigma;
  if (!config.contains("family")) throw CallFailure{kExitUsage, "no algebra given (use --family or --config)"};
  return config;
}

int status_exit(pforms_status status) {
  return status == PFORMS_INVALID_ARGUMENT ? kExitUsage : kExitFailure;
}

void check(pforms_status status) {
  if (status != PFORMS_OK) throw CallFailure{status_exit(status), pforms_last_error()};
}

std::string take(char* s) {
  std::string out(s);
  pforms_string_free(s);
  return out;
}

class Context {
 public:
  explicit Context(const json& config) { check(pforms_context_create(config.dump().c_str(), &ctx_)); }
  ~Context() { pforms_context_destroy(ctx_); }
  Context(const Context&) = delete;
  Context& operator=(const Context&) = delete;
  const pforms_context* get() const { return ctx_; }

 private:
  pforms_context* ctx_ = nullptr;
};

std::string tuple_text(const json& values) {
  std::string out = "(";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    out += values[i].is_string() ? values[i].get<std::string>() : values[i].dump();
  }
  return out + ")";
}

void print_inspect(const json& j) {
  std::cout << "algebra " << j["algebra"].get<std::string>() << "\n"
            << "  dim g " << j["dimension"] << "  dim k " << j["dim_k"] << "  dim q " << j["dim_q"] << "\n"
            << "  dim a0 " << j["a0_dim"] << "  dim m0 " << j["m0_dim"] << "  rho " << tuple_text(j["rho"]) << "\n\n";
  std::cout << "restricted roots\n";
  std::cout << "  " << std::left << std::setw(20) << "values" << std::setw(6) << "dim" << std::setw(10) << "positive"
            << "height\n";
  for (const auto& r : j["roots"]) {
    std::cout << "  " << std::setw(20) << tuple_text(r["values"]) << std::setw(6) << r["dim"].get<int>()
              << std::setw(10) << (r["positive"].get<bool>() ? "yes" : "no") << r["height"].get<int>() << "\n";
  }
  std::cout << "  simple " << j["simple"].dump() << "  sigma " << j["sigma"].dump() << "\n\n";
  std::cout << "grading (depth " << j["depth"] << ")\n";
  std::cout << "  " << std::setw(6) << "i" << "dim g_i\n";
  for (const auto& c : j["grading"]) std::cout << "  " << std::setw(6) << c["i"].get<int>() << c["dim"].get<int>() << "\n";
  const auto& q = j["quotient"];
  std::cout << "\nquotient g/m\n"
            << "  dim " << q["dimension"] << "  (1,0) " << q["dim10"] << "  (0,1) " << q["dim01"] << "  n " << q["n"]
            << "  d " << q["d"] << "  dim m " << q["dim_m"] << "\n\n";
  std::cout << "m-invariant forms\n";
  std::cout << "  " << std::setw(12) << "bidegree" << "dim\n";
  for (const auto& e : j["invariant_dims"]) {
    std::cout << "  " << std::setw(12) << tuple_text(e["bidegree"]) << e["dim"].get<int>() << "\n";
  }
}

int run_verify(const Context& ctx, std::optional<int> k) {
  std::vector<int> degrees;
  if (k) {
    degrees.push_back(*k);
  } else {
    char* raw = nullptr;
    check(pforms_inspect(ctx.get(), &raw));
    const int n = json::parse(take(raw))["quotient"]["n"].get<int>();
    for (int i = 0; i <= n; ++i) degrees.push_back(i);
  }
  json reports = json::array();
  bool ok = true;
  for (int degree : degrees) {
    char* raw = nullptr;
    int all_ok = 0;
    check(pforms_verify(ctx.get(), degree, &raw, &all_ok));
    reports.push_back(json::parse(take(raw)));
    ok = ok && all_ok == 1;
  }
  std::cout << (k ? reports[0] : reports).dump(2) << "\n";
  return ok ? 0 : kExitFailure;
}

json density_option(const std::string& text) {
  if (!text.empty() && text.front() == '[') {
    try {
      return json::parse(text);
    } catch (const json::exception& e) {
      throw CallFailure{kExitUsage, std::string("malformed density array: ") + e.what()};
    }
  }
  if (text.size() > 5 && text.substr(text.size() - 5) == ".json") {
    std::ifstream in(text);
    if (!in) throw CallFailure{kExitUsage, "cannot read density file " + text};
    try {
      return json::parse(in);
    } catch (const json::exception& e) {
      throw CallFailure{kExitUsage, "malformed density file " + text + ": " + e.what()};
    }
  }
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Poisson transform kernels for differential forms on G/P"};
  app.require_subcommand(1);

  AlgebraFlags inspect_flags;
  auto* inspect = app.add_subcommand("inspect", "print algebra, root, grading and dimension tables");
  add_algebra_flags(inspect, inspect_flags);

  AlgebraFlags kernel_flags;
  int kernel_k = 0;
  auto* kernel = app.add_subcommand("kernel", "emit the serialized kernel phi_k");
  add_algebra_flags(kernel, kernel_flags);
  kernel->add_option("--k", kernel_k, "kernel degree")->required();

  AlgebraFlags verify_flags;
  std::optional<int> verify_k;
  auto* verify = app.add_subcommand("verify", "emit the verification report; exit 1 on any failing check");
  add_algebra_flags(verify, verify_flags);
  verify->add_option("--k", verify_k, "kernel degree (default: every degree)");

  int t_n = 1;
  double t_lambda = 0.0;
  double t_step = 1e-3;
  int t_partitions = 1;
  std::vector<int> t_nodes;
  std::vector<double> t_probe;
  std::string t_density = "const";
  auto* transform = app.add_subcommand("transform", "numeric Poisson transform on real hyperbolic space H^{n+1}");
  transform->add_option("--n", t_n, "boundary sphere dimension (1, 2 or 3)")->required();
  transform->add_option("--lambda", t_lambda, "lambda as a multiple of the positive root");
  transform->add_option("--nodes", t_nodes, "node counts per angle, polar angles first")->delimiter(',');
  transform->add_option("--fd-step", t_step, "finite-difference step");
  transform->add_option("--probe", t_probe, "spatial coordinates of the probe point")->delimiter(',');
  transform->add_option("--density", t_density, "const, coord-k, random-smooth:seed, a JSON array or a .json file");
  transform->add_option("--partitions", t_partitions, "quadrature summation blocks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*inspect) {
      Context ctx(algebra_config(inspect_flags));
      char* raw = nullptr;
      check(pforms_inspect(ctx.get(), &raw));
      print_inspect(json::parse(take(raw)));
      return 0;
    }
    if (*kernel) {
      Context ctx(algebra_config(kernel_flags));
      char* raw = nullptr;
      check(pforms_kernel(ctx.get(), kernel_k, &raw));
      std::cout << json::parse(take(raw)).dump(2) << "\n";
      return 0;
    }
    if (*verify) {
      Context ctx(algebra_config(verify_flags));
      return run_verify(ctx, verify_k);
    }
    json options = {{"n", t_n}, {"lambda", t_lambda}, {"fd_step", t_step}, {"partitions", t_partitions},
                    {"density", density_option(t_density)}};
    if (!t_nodes.empty()) options["nodes"] = t_nodes;
    if (!t_probe.empty()) options["probe"] = t_probe;
    char* raw = nullptr;
    check(pforms_transform(options.dump().c_str(), &raw));
    std::cout << json::parse(take(raw)).dump(2) << "\n";
    return 0;
  } catch (const CallFailure& f) {
    std::cerr << "error: " << f.message << "\n";
    if (f.exit_code == kExitUsage) std::cerr << "run with --help for usage\n";
    return f.exit_code;
  }
}
