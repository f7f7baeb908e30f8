#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>

#include "qpsh/field_language.hpp"
#include "qpsh/pluripotential.hpp"
#include "qpsh/sampling.hpp"

namespace qpsh::cli {

namespace {

Json quaternion_json(const Quaternion& q) { return Json::array({q.t, q.x, q.y, q.z}); }

Json matrix_json(const QMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(quaternion_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json vector_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Json form_json(const TwistedForm& f) {
  Json terms = Json::array();
  f.for_each_mask([&](Mask m) {
    if (f[m] == 0.0) return;
    Json idx = Json::array();
    for (int i = 0; i < f.dim(); ++i)
      if (m & (Mask{1} << i)) idx.push_back(i);
    terms.push_back({{"basis", idx}, {"value", {f[m].real(), f[m].imag()}}});
  });
  return {{"degree", f.degree()}, {"twist", f.twist()}, {"terms", terms}};
}

Json pairing_json(const PairingResult& r) {
  return {{"value", r.value},
          {"error_estimate", r.error_estimate},
          {"nodes", r.nodes},
          {"rule", rule_name(r.rule)},
          {"nodes_per_axis", r.nodes_per_axis},
          {"qmc_samples", r.qmc_samples}};
}

Quaternion parse_entry(const Json& e) {
  if (e.is_number()) return Quaternion(e.get<double>());
  if (e.is_array() && e.size() == 4 && std::all_of(e.begin(), e.end(), [](const Json& v) { return v.is_number(); }))
    return {e[0].get<double>(), e[1].get<double>(), e[2].get<double>(), e[3].get<double>()};
  throw ConfigError("--matrix: entries must be numbers or [t, x, y, z]");
}

QMatrix parse_matrix(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("--matrix: ") + e.what());
  }
  if (!j.is_array() || j.empty()) throw ConfigError("--matrix: expected a non-empty array of rows");
  const std::size_t n = j.size();
  QMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!j[r].is_array() || j[r].size() != n) throw ConfigError("--matrix: matrix must be square");
    for (std::size_t c = 0; c < n; ++c) m(r, c) = parse_entry(j[r][c]);
  }
  return m;
}

std::vector<ScalarField> parse_fields(const ExperimentConfig& c, std::size_t min, std::size_t max) {
  if (c.fields.size() < min || c.fields.size() > max)
    throw ConfigError("expected between " + std::to_string(min) + " and " + std::to_string(max) + " --field options");
  std::vector<ScalarField> out;
  for (const auto& text : c.fields) {
    try {
      out.push_back(parse_field(text, c.n, c.backend));
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    } catch (const UnsupportedBackend& e) {
      throw ConfigError(e.what());
    }
  }
  return out;
}

Domain domain(const ExperimentConfig& c) {
  Domain d = Domain::box(4 * c.n, c.box_lo, c.box_hi, c.nodes_per_axis);
  if (c.qmc_samples) d = d.with_qmc(*c.qmc_samples);
  return d;
}

void moore_det_command(const ExperimentConfig& c, Envelope& env) {
  QMatrix m;
  if (c.matrix && c.random_matrix) throw ConfigError("moore-det: give either --matrix or --random");
  if (c.matrix) {
    m = parse_matrix(*c.matrix);
    if (c.n_given && static_cast<int>(m.rows()) != c.n) throw ConfigError("moore-det: --n does not match the matrix");
    if (m.rows() < 2) throw ConfigError("moore-det: n must be at least 2");
  } else if (c.random_matrix) {
    Rng rng(require_seed(c, "moore-det --random"));
    m = random_hermitian(rng, static_cast<std::size_t>(c.n)).matrix();
  } else {
    throw ConfigError("moore-det: needs --matrix or --random");
  }
  HermitianQMatrix a;
  try {
    a = HermitianQMatrix(m);
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("moore-det: ") + e.what());
  }
  const double det = moore_det(a);
  const double cycles = moore_det_by_cycles(a);
  const double tol = c.tol.value_or(1e-9);
  const double rel = std::abs(det - cycles) / std::max({std::abs(det), std::abs(cycles), 1e-300});
  env.results["matrix"] = matrix_json(a.matrix());
  env.results["moore_det"] = det;
  env.results["moore_det_by_cycles"] = cycles;
  env.results["dieudonne_det"] = dieudonne_det(a.matrix());
  env.results["embedded_eigenvalues"] = vector_json(embedded_eigenvalues(a));
  env.results["psd"] = is_psd(a, 1e-12 * std::max(1.0, a.matrix().max_abs()));
  env.checks.push_back(pass_if("cycle_expansion_agreement", rel <= tol || det == cycles, rel, tol,
                               "relative difference between eigenvalue pairing and cycle expansion"));
}

void hessian_command(const ExperimentConfig& c, Envelope& env) {
  const ScalarField f = parse_fields(c, 1, 1)[0];
  std::vector<double> x = c.point;
  if (x.empty()) x.assign(static_cast<std::size_t>(4 * c.n), 0.0);
  if (static_cast<int>(x.size()) != 4 * c.n) throw ConfigError("hessian: --point needs 4n coordinates");
  const HermitianQMatrix h = hessian(f, x);
  const TwistedForm delta = delta_at(f, x);
  const double mismatch = scale(delta - herm_to_form(h));
  const double tol = c.tol.value_or(1e-10);
  env.results["point"] = x;
  env.results["hessian"] = matrix_json(h.matrix());
  env.results["embedded_eigenvalues"] = vector_json(embedded_eigenvalues(h));
  env.results["moore_det"] = moore_det(h);
  env.results["delta"] = form_json(delta);
  env.checks.push_back(info("psd", is_psd(h, 1e-9 * std::max(1.0, h.matrix().max_abs()))));
  env.checks.push_back(pass_if("delta_matches_hessian", mismatch <= tol * std::max(1.0, scale(delta)), mismatch, tol,
                               "max coefficient of Delta f - herm_to_form(Hess f)"));
}

void psh_command(const ExperimentConfig& c, Envelope& env) {
  const ScalarField f = parse_fields(c, 1, 1)[0];
  const PshResult r = is_psh(f, domain(c), c.tol.value_or(1e-9));
  env.results["nodes_checked"] = r.nodes_checked;
  env.results["min_eigenvalue"] = r.min_eigenvalue;
  env.results["witness"] = r.witness ? Json(*r.witness) : Json(nullptr);
  env.checks.push_back(pass_if("psh", r.psh, r.min_eigenvalue, c.tol.value_or(1e-9),
                               "smallest Hessian eigenvalue over the grid, relative tolerance"));
}

void pairing_command(const ExperimentConfig& c, Envelope& env) {
  const std::vector<ScalarField> fs = parse_fields(c, 1, static_cast<std::size_t>(c.n));
  const Domain d = domain(c);
  const PairingResult r = mixed_ma_pairing(fs, bump_weight(c.n, d), d, c.threads);
  env.results["k"] = fs.size();
  env.results["weight"] = "box bump prod (1 - s^2)^3";
  env.results["pairing"] = pairing_json(r);
  if (c.tol) {
    const double rel = r.error_estimate / std::max(std::abs(r.value), 1e-300);
    env.checks.push_back(pass_if("error_estimate", rel <= *c.tol, rel, *c.tol, "error estimate relative to the value"));
  } else {
    env.checks.push_back(info("error_estimate", r.error_estimate));
  }
}

void converge_command(const ExperimentConfig& c, Envelope& env) {
  std::vector<std::string> families = c.families;
  if (families.empty()) families = {"sqrt_norm", "log_cosh_norm"};
  const Domain d = domain(c);
  const ScalarField phi = bump_weight(c.n, d);
  const std::vector<double> eps = halving_schedule(c.eps_start, c.eps_steps);
  const double tol = c.tol.value_or(0.01);
  const int n = c.n;
  Json tables = Json::object();
  std::vector<double> limits;
  std::ofstream csv;
  if (c.csv) {
    csv.open(*c.csv);
    if (!csv) throw ConfigError("cannot open --csv path " + *c.csv);
    csv << "family,eps,pairing,error_estimate,gap,psh\n";
    csv.precision(17);
  }
  for (const auto& name : families) {
    auto family = [&](double e) { return name == "sqrt_norm" ? sqrt_norm_family(n, e) : log_cosh_norm_family(n, e); };
    const ConvergenceTable t = converge_experiment(family, phi, d, eps, c.threads);
    Json rows = Json::array();
    for (const auto& row : t.rows) {
      rows.push_back({{"eps", row.eps},
                      {"pairing", pairing_json(row.pairing)},
                      {"gap", row.gap ? Json(*row.gap) : Json(nullptr)},
                      {"psh", row.psh}});
      if (csv) {
        csv << name << ',' << row.eps << ',' << row.pairing.value << ',' << row.pairing.error_estimate << ',';
        if (row.gap) csv << *row.gap;
        csv << ',' << (row.psh ? "true" : "false") << '\n';
      }
    }
    tables[name] = {{"rows", rows}, {"limit", t.limit()}, {"final_gap_ratio", t.final_gap_ratio()}};
    env.checks.push_back(pass_if(name + ".gaps_monotone", t.gaps_monotone(), t.gaps_monotone()));
    env.checks.push_back(pass_if(name + ".final_gap", t.final_gap_ratio() <= tol, t.final_gap_ratio(), tol,
                                 "last gap relative to the last pairing"));
    limits.push_back(t.limit());
  }
  env.results["eps"] = eps;
  env.results["tables"] = tables;
  if (limits.size() >= 2) {
    double worst = 0.0;
    for (double l : limits) worst = std::max(worst, std::abs(l - limits[0]) / std::abs(limits[0]));
    env.checks.push_back(pass_if("families_agree", worst <= 0.02, worst, 0.02, "relative spread of the last pairings"));
  }
}

void cln_command(const ExperimentConfig& c, Envelope& env) {
  const std::vector<ScalarField> fs = parse_fields(c, 1, static_cast<std::size_t>(c.n));
  const Domain k = domain(c), l = k.scaled(c.outer_scale);
  const ClnResult r = cln_ratio(fs, k, l, c.sup_points, c.threads);
  std::vector<ScalarField> scaled;
  for (std::size_t i = 0; i < fs.size(); ++i) scaled.push_back(fs[i].scaled(i % 2 == 0 ? 2.5 : 0.375));
  const double again = cln_ratio(scaled, k, l, c.sup_points, c.threads).ratio;
  const double rel = std::abs(again - r.ratio) / std::max(std::abs(r.ratio), 1e-300);
  const double tol = c.tol.value_or(1e-12);
  env.results["ratio"] = r.ratio;
  env.results["numerator"] = r.numerator;
  env.results["sup_norms"] = r.sup_norms;
  env.results["nodes"] = r.nodes;
  env.results["outer_box"] = {l.lo(0), l.hi(0)};
  env.checks.push_back(pass_if("scaling_invariance", rel <= tol, rel, tol, "ratio after rescaling each field"));
}

std::pair<std::string, int> classify(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return {"config", 2};
  if (dynamic_cast<const NumericalDegeneracy*>(&e)) return {"numerical_degeneracy", 3};
  if (dynamic_cast<const NodeCapExceeded*>(&e)) return {"node_cap", 4};
  if (dynamic_cast<const InvalidArgument*>(&e) || dynamic_cast<const DimensionMismatch*>(&e) ||
      dynamic_cast<const UnsupportedBackend*>(&e))
    return {"config", 2};
  return {"internal", 2};
}

}  // namespace

void run_command(const ExperimentConfig& c, Envelope& env) {
  if (c.subcommand == "moore-det") return moore_det_command(c, env);
  if (c.subcommand == "hessian") return hessian_command(c, env);
  if (c.subcommand == "psh-check") return psh_command(c, env);
  if (c.subcommand == "ma-pairing") return pairing_command(c, env);
  if (c.subcommand == "converge") return converge_command(c, env);
  if (c.subcommand == "cln") return cln_command(c, env);
  if (c.subcommand == "verify") return run_suite(c, env);
  throw ConfigError("unknown subcommand " + c.subcommand);
}

int run_cli(int argc, const char* const* argv) {
  const ParseOutcome parsed = parse_arguments(argc, argv);
  if (!parsed.config) {
    (parsed.exit_code == 0 ? std::cout : std::cerr) << parsed.message << '\n';
    return parsed.exit_code;
  }
  const ExperimentConfig& c = *parsed.config;
  Envelope env;
  env.config = to_json(c);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    validate(c);
    run_command(c, env);
  } catch (const std::exception& e) {
    const auto [kind, code] = classify(e);
    env.error = ErrorInfo{kind, e.what(), code};
    std::cerr << "qpsh: " << e.what() << '\n';
  }
  env.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const std::string text = env.to_json().dump(2) + "\n";
  if (c.out) {
    std::ofstream f(*c.out);
    if (!f) {
      std::cerr << "qpsh: cannot open --out path " << *c.out << '\n';
      return 2;
    }
    f << text;
  } else {
    std::cout << text;
  }
  return env.exit_code();
}

}  // namespace qpsh::cli
