// cyclide: areas, volumes and isoperimetric ratios of inverted tori.
//
// Exit codes: 0 success, 1 verification failure (or an internal numerical
// failure), 2 usage error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cyclide/commands.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Inputs {
  std::optional<double> R;
  std::optional<double> alpha;
  double rho = 0.0;
  double v = 0.0;
  double x = 0.0, y = 0.0, z = 0.0;
  std::string out;
};

void add_config_options(CLI::App& cmd, cyclide::cli::RunConfig& cfg, Inputs& in) {
  static const std::map<std::string, cyclide::cli::Format> formats{{"csv", cyclide::cli::Format::Csv},
                                                                    {"json", cyclide::cli::Format::Json}};
  cmd.add_option("--tol", cfg.tolerance, "verification tolerance (thresholds scale with tol/1e-10)")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--n-angular", cfg.n_angular, "trapezoid nodes per angle (even, >= 8)");
  cmd.add_option("--n-radial", cfg.n_radial, "Gauss-Legendre nodes in r (>= 4)");
  cmd.add_option("--points", cfg.points, "grid points for sweeps");
  cmd.add_option("--format", cfg.format, "output format")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  cmd.add_option("--out", in.out, "write the report to this file instead of stdout");
}

void add_shape_options(CLI::App& cmd, Inputs& in, bool require) {
  auto* r = cmd.add_option("--R", in.R, "torus major radius (minor radius 1)")->check(CLI::Range(1.0, HUGE_VAL));
  auto* a = cmd.add_option("--alpha", in.alpha, "Clifford torus parameter, converted to R = csc(alpha)");
  r->excludes(a);
  a->excludes(r);
  if (require) cmd.callback([r, a] {
      if (r->count() + a->count() == 0) throw CLI::RequiredError("--R or --alpha");
    });
}

double resolve_R(const Inputs& in) {
  const double R = in.alpha ? cyclide::geometry::alpha_to_R(*in.alpha) : *in.R;
  if (!(R > 1.0)) throw cyclide::Error(cyclide::ErrorCode::DomainError, "R must exceed 1");
  return R;
}

int emit(const std::string& text, const Inputs& in) {
  if (in.out.empty()) {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream f(in.out);
  if (!(f << text)) {
    std::cerr << "error: cannot write " << in.out << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

int exit_code_for(cyclide::ErrorCode code) {
  switch (code) {
    case cyclide::ErrorCode::DomainError:
    case cyclide::ErrorCode::OutOfRange:
    case cyclide::ErrorCode::RejectSquare:
    case cyclide::ErrorCode::OnTorus:
      return kExitUsage;
    default:
      return kExitFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Areas, volumes and isoperimetric ratios of toroidal Dupin cyclides"};
  app.require_subcommand(1);

  cyclide::cli::RunConfig cfg;
  Inputs in;

  auto* compute = app.add_subcommand("compute", "closed forms and quadrature oracle for i_rho(T_R)");
  add_shape_options(*compute, in, true);
  compute->add_option("--rho", in.rho, "inversion centre [rho, 0, 0], rho in [0, sqrt(R^2 - 1)]")->required();
  add_config_options(*compute, cfg, in);

  auto* sweep = app.add_subcommand("sweep", "isoperimetric ratio over rho in [0, sqrt(R^2 - 1)]");
  add_shape_options(*sweep, in, true);
  add_config_options(*sweep, cfg, in);

  auto* verify = app.add_subcommand("verify", "run all invariant suites");
  add_config_options(*verify, cfg, in);

  auto* classify = app.add_subcommand("classify", "canonical shape of the inversion about a point");
  add_shape_options(*classify, in, true);
  classify->add_option("--x", in.x, "inversion centre x")->required();
  classify->add_option("--y", in.y, "inversion centre y")->required();
  classify->add_option("--z", in.z, "inversion centre z")->required();
  add_config_options(*classify, cfg, in);

  auto* nonunique = app.add_subcommand("nonunique", "two distinct shapes with isoperimetric ratio v");
  add_shape_options(*nonunique, in, true);
  nonunique->add_option("--v", in.v, "target isoperimetric ratio")->required();
  add_config_options(*nonunique, cfg, in);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  namespace cc = cyclide::cli;
  try {
    if (*compute) return emit(cc::render(cc::cmd_compute(resolve_R(in), in.rho, cfg), cfg), in);
    if (*sweep) return emit(cc::render(cc::cmd_sweep(resolve_R(in), cfg.points, cfg), cfg), in);
    if (*classify) {
      const auto result = cc::cmd_classify({in.x, in.y, in.z}, resolve_R(in));
      if (!result.family_rho) std::cerr << "OnTorus: the point lies on T_R; its inversion is a round sphere\n";
      return emit(cc::render(result, cfg), in);
    }
    if (*nonunique) return emit(cc::render(cc::cmd_nonunique(resolve_R(in), in.v, cfg), cfg), in);
    if (*verify) {
      const auto report = cc::cmd_verify(cfg);
      const int rc = emit(cc::render(report, cfg), in);
      if (rc != kExitOk) return rc;
      return report.pass ? kExitOk : kExitFailure;
    }
  } catch (const cyclide::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
