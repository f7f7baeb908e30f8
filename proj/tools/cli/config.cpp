#include "config.hpp"

#include <sstream>

#include <CLI11.hpp>

namespace qpsh::cli {

namespace {

void common_options(CLI::App& app, ExperimentConfig& c) {
  app.add_option_function<int>("--n", [&c](int v) {
       c.n = v;
       c.n_given = true;
     }, "quaternionic dimension (n >= 2)");
  app.add_option("--seed", c.seed, "seed for sampled computations");
  app.add_option("--tol", c.tol, "tolerance override");
  app.add_option("--threads", c.threads, "worker threads for quadrature")->check(CLI::Range(1, 1024));
  app.add_option("--out", c.out, "write the JSON envelope here instead of stdout");
}

void field_options(CLI::App& app, ExperimentConfig& c, bool multiple) {
  auto* f = app.add_option("--field", c.fields, "scalar field in the text form of docs/fields.md");
  if (!multiple) f->expected(1);
  app.add_option_function<std::string>("--backend", [&c](const std::string& b) {
       c.backend = b == "polynomial" ? Backend::polynomial : b == "trig" ? Backend::trig : Backend::autodiff;
     }, "polynomial | autodiff")
      ->check(CLI::IsMember({"polynomial", "autodiff", "trig"}));
}

void domain_options(CLI::App& app, ExperimentConfig& c) {
  app.add_option("--box-lo", c.box_lo, "lower corner of the cube [lo, hi]^{4n}");
  app.add_option("--box-hi", c.box_hi, "upper corner of the cube [lo, hi]^{4n}");
  app.add_option("--nodes-per-axis", c.nodes_per_axis, "Gauss-Legendre nodes per axis")->check(CLI::Range(1, 64));
  app.add_option("--qmc-samples", c.qmc_samples, "use a Sobol rule with this many points");
}

}  // namespace

ParseOutcome parse_arguments(int argc, const char* const* argv) {
  ExperimentConfig c;
  CLI::App app{"qpsh: quaternionic pluripotential computations"};
  app.require_subcommand(1);

  auto* moore = app.add_subcommand("moore-det", "Moore and Dieudonne determinants of a Hermitian matrix");
  common_options(*moore, c);
  moore->add_option("--matrix", c.matrix, "JSON rows; entries are numbers or [t, x, y, z]");
  moore->add_flag("--random", c.random_matrix, "random Hermitian n x n matrix (needs --seed)");

  auto* hess = app.add_subcommand("hessian", "quaternionic Hessian and Delta f at a point");
  common_options(*hess, c);
  field_options(*hess, c, false);
  hess->add_option("--point", c.point, "4n comma-separated coordinates (default: origin)")->delimiter(',');

  auto* psh = app.add_subcommand("psh-check", "pointwise plurisubharmonicity on a grid");
  common_options(*psh, c);
  field_options(*psh, c, false);
  domain_options(*psh, c);

  auto* pairing = app.add_subcommand("ma-pairing", "Monge-Ampere pairing against the box bump");
  common_options(*pairing, c);
  field_options(*pairing, c, true);
  domain_options(*pairing, c);

  auto* conv = app.add_subcommand("converge", "epsilon-table of mollified |x| families");
  common_options(*conv, c);
  domain_options(*conv, c);
  conv->add_option("--family", c.families, "sqrt_norm | log_cosh_norm (repeatable; default both)")
      ->check(CLI::IsMember({"sqrt_norm", "log_cosh_norm"}));
  conv->add_option("--eps-start", c.eps_start, "first epsilon");
  conv->add_option("--eps-steps", c.eps_steps, "number of halvings including the start")->check(CLI::Range(2, 20));
  conv->add_option("--csv", c.csv, "also write the table as CSV");

  auto* cln = app.add_subcommand("cln", "empirical Chern-Levine-Nirenberg ratio");
  common_options(*cln, c);
  field_options(*cln, c, true);
  domain_options(*cln, c);
  cln->add_option("--outer-scale", c.outer_scale, "L is the cube scaled by this factor about its centre");
  cln->add_option("--sup-points", c.sup_points, "grid points per axis for the sup norm")->check(CLI::Range(2, 9));

  auto* verify = app.add_subcommand("verify", "bundled verification suites");
  common_options(*verify, c);
  verify->add_option("suite", c.suite, "algebra | multiplicativity | adjoint | cones | delta-consistency")
      ->required()
      ->check(CLI::IsMember({"algebra", "multiplicativity", "adjoint", "cones", "delta-consistency"}));
  verify->add_option("--trials", c.trials, "number of random trials")->check(CLI::Range(1, 1000000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    const int code = app.exit(e, out, err);
    std::string text = code == 0 ? out.str() : err.str();
    while (!text.empty() && text.back() == '\n') text.pop_back();
    return {std::nullopt, code == 0 ? 0 : 2, text};
  }
  for (auto* sub : app.get_subcommands()) c.subcommand = sub->get_name();
  return {c, 0, ""};
}

void validate(const ExperimentConfig& c) {
  if (c.n < 2) throw ConfigError("n must be at least 2");
  if (c.n > 4) throw ConfigError("n must be at most 4");
  if (!(c.box_hi > c.box_lo)) throw ConfigError("box: --box-hi must exceed --box-lo");
  if (c.qmc_samples && *c.qmc_samples < 2) throw ConfigError("--qmc-samples must be at least 2");
  if (c.tol && !(*c.tol >= 0.0)) throw ConfigError("--tol must be nonnegative");
  if (!(c.eps_start > 0.0)) throw ConfigError("--eps-start must be positive");
  if (!(c.outer_scale >= 1.0)) throw ConfigError("--outer-scale must be at least 1");
}

std::uint64_t require_seed(const ExperimentConfig& c, const std::string& what) {
  if (!c.seed) throw ConfigError(what + " is sampled and needs --seed");
  return *c.seed;
}

Json to_json(const ExperimentConfig& c) {
  Json j;
  j["subcommand"] = c.subcommand;
  j["suite"] = c.suite ? Json(*c.suite) : Json(nullptr);
  j["n"] = c.n;
  j["backend"] = backend_name(c.backend);
  j["fields"] = c.fields;
  j["point"] = c.point;
  j["box"] = {c.box_lo, c.box_hi};
  j["nodes_per_axis"] = c.nodes_per_axis;
  j["qmc_samples"] = c.qmc_samples ? Json(*c.qmc_samples) : Json(nullptr);
  j["seed"] = c.seed ? Json(*c.seed) : Json(nullptr);
  j["tol"] = c.tol ? Json(*c.tol) : Json(nullptr);
  j["threads"] = c.threads;
  j["matrix"] = c.matrix ? Json(*c.matrix) : Json(nullptr);
  j["random_matrix"] = c.random_matrix;
  j["families"] = c.families;
  j["eps_start"] = c.eps_start;
  j["eps_steps"] = c.eps_steps;
  j["outer_scale"] = c.outer_scale;
  j["sup_points"] = c.sup_points;
  j["trials"] = c.trials ? Json(*c.trials) : Json(nullptr);
  return j;
}

}  // namespace qpsh::cli
