#include "wpa/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "wpa/acceptance.hpp"
#include "wpa/errors.hpp"
#include "wpa/report.hpp"

namespace wpa {
namespace {

struct RunConfig {
  std::string family = "segment";
  double x0 = 3.0;
  double theta0 = kPi;
  std::optional<double> rho;
  std::optional<double> eps;
  double alpha = 0.0;
  int sigma = 1;
  int tau = 2;
  int grid = 200;
  int samples = 0;
  std::string out;
  std::string svg;
  std::string json_out;
  std::vector<std::string> only;
  int n = 4;
  std::string n_list;
  std::string target = "1";
  std::string targets = "1;2,-1;1,1";
  double tol = 1e-2;
  double B = 10.0;
  int N = 5;
  std::optional<double> r;
  double level = 0.75;
  int L_samples = 64;
  int stages = 3;
  std::string mode = "halfspace";
};

CompactFamily make_family(const RunConfig& c) {
  CompactFamily f = c.family == "disc"      ? CompactFamily::disc(c.x0)
                    : c.family == "segment" ? CompactFamily::segment(c.x0)
                    : c.family == "arc"     ? CompactFamily::arc(c.theta0)
                                            : throw ConfigurationError("unknown family " + c.family);
  f.validate();
  return f;
}

DomainSpec make_domain(const RunConfig& c) {
  CompactFamily f = make_family(c);
  if (f.is_disc() && c.rho) return DomainSpec::disc_radius(c.x0, *c.rho);
  return DomainSpec::of(f, c.eps.value_or(0.05));
}

void add_family(CLI::App* sub, RunConfig& c) {
  sub->add_option("--family", c.family, "disc, segment or arc")
      ->check(CLI::IsMember({"disc", "segment", "arc"}))
      ->capture_default_str();
  sub->add_option("--x0", c.x0, "disc centre / segment end point")->capture_default_str();
  sub->add_option("--theta0", c.theta0, "arc opening angle")->capture_default_str();
}

void add_exponent(CLI::App* sub, RunConfig& c) {
  sub->add_option("--sigma", c.sigma, "alpha = sigma/tau")->capture_default_str();
  sub->add_option("--tau", c.tau, "alpha = sigma/tau")->capture_default_str();
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ConfigurationError("cannot parse integer '" + item + "'");
    }
  }
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigurationError("cannot write " + path);
  f << text;
  if (!f) throw ConfigurationError("cannot write " + path);
}

// Splices values from a JSON config file in front of the explicit flags, which
// therefore take precedence.
std::vector<std::string> apply_config(std::vector<std::string> args) {
  auto it = std::find(args.begin(), args.end(), "--config");
  if (it == args.end()) return args;
  if (it + 1 == args.end()) throw ConfigurationError("--config needs a path");
  std::string path = *(it + 1);
  args.erase(it, it + 2);
  std::ifstream f(path);
  if (!f) throw ConfigurationError("cannot read config " + path);
  json cfg;
  try {
    cfg = json::parse(f);
  } catch (const std::exception& e) {
    throw ConfigurationError(std::string("invalid config JSON: ") + e.what());
  }
  if (!cfg.is_object()) throw ConfigurationError("config must be a JSON object");
  std::size_t pos = 0;
  if (args.empty() || args[0].rfind("-", 0) == 0) {
    if (!cfg.contains("command")) throw ConfigurationError("no command given");
    args.insert(args.begin(), cfg["command"].get<std::string>());
  }
  pos = 1;
  std::vector<std::string> extra;
  for (auto& [key, value] : cfg.items()) {
    if (key == "command") continue;
    std::string flag = "--" + key;
    if (std::find(args.begin(), args.end(), flag) != args.end()) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) extra.push_back(flag);
    } else if (value.is_array()) {
      for (auto& v : value) {
        extra.push_back(flag);
        extra.push_back(v.is_string() ? v.get<std::string>() : v.dump());
      }
    } else {
      extra.push_back(flag);
      extra.push_back(value.is_string() ? value.get<std::string>() : value.dump());
    }
  }
  args.insert(args.begin() + static_cast<long>(pos), extra.begin(), extra.end());
  return args;
}

int emit(std::ostream& out, const json& j, bool pass) {
  out << dump(j);
  return pass ? 0 : 1;
}

int cmd_report(const RunConfig& c, std::ostream& out) {
  json j = family_report(make_family(c), c.samples > 0 ? c.samples : 4096);
  return emit(out, j, true);
}

int cmd_region(const RunConfig& c, std::ostream& out) {
  CompactFamily f = make_family(c);
  RationalExponent exp(c.sigma, c.tau);
  double M = m_k(f, MkMethod::closed_form).value;
  RegionGrid g = region_grid(f, exp, c.grid, M);
  std::string csv = region_csv(g);
  if (c.out.empty())
    out << csv;
  else
    write_file(c.out, csv);
  if (!c.svg.empty()) write_file(c.svg, region_svg(g));
  return 0;
}

int cmd_criterion(const RunConfig& c, std::ostream& out) {
  DomainSpec d = make_domain(c);
  CriterionReport rep = pv_criterion(d, c.alpha, c.samples > 0 ? c.samples : 4096);
  json j = to_json(rep);
  j["alpha_threshold"] = num(alpha_threshold(d, rep.sample_count));
  return emit(out, j, rep.pass);
}

int cmd_fit(const RunConfig& c, std::ostream& out) {
  CompactFamily f = make_family(c);
  RationalExponent exp(c.sigma, c.tau);
  ComplexPolynomial target = parse_polynomial(c.target);
  int m = c.samples > 0 ? c.samples : 512;
  if (!c.n_list.empty()) {
    std::vector<ScanRow> rows = convergence_scan(f, exp, target, parse_int_list(c.n_list), m);
    std::ostringstream csv;
    csv << "n,sup_residual,refined_sup_residual\n";
    json arr = json::array();
    bool pass = true;
    for (const auto& r : rows) {
      csv << r.n << ',' << fmt12(r.sup_residual) << ',' << fmt12(r.refined_sup_residual) << '\n';
      arr.push_back(json{{"n", r.n}, {"sup_residual", num(r.sup_residual)},
                         {"refined_sup_residual", num(r.refined_sup_residual)}});
    }
    if (!rows.empty()) pass = rows.back().sup_residual <= c.tol;
    if (!c.out.empty()) write_file(c.out, csv.str());
    return emit(out, json{{"scan", arr}, {"tol", num(c.tol)}, {"pass", pass}}, pass);
  }
  FitResult fit = weighted_fit(k_samples(f, m), exp, c.n, target);
  json j = to_json(fit);
  j["tol"] = num(c.tol);
  j["pass"] = fit.sup_residual <= c.tol;
  return emit(out, j, fit.sup_residual <= c.tol);
}

int cmd_construct(const RunConfig& c, std::ostream& out) {
  CompactFamily f = make_family(c);
  RationalExponent exp(c.sigma, c.tau);
  double M = m_k(f, MkMethod::closed_form).value;
  double rstar = r_k_alpha(f, exp, M);
  LemmaProblem pb;
  pb.family = f;
  pb.exp = exp;
  pb.epsilon = c.eps.value_or(0.1);
  pb.target = Target::from_polynomial(parse_polynomial(c.target));
  pb.N = c.N;
  pb.B = c.B;
  pb.r = c.r.value_or(0.9 * rstar);
  pb.M = M;
  pb.L_samples = sublevel_samples(f, exp, M, c.level, c.L_samples);
  pb.L_dense = sublevel_samples(f, exp, M, c.level, 4 * c.L_samples);
  if (c.samples > 0) pb.k_count = c.samples;
  LemmaResult res = lemma_construct(pb);
  json j = to_json(res.cert);
  j["r_k_alpha"] = num(rstar);
  j["P"] = to_json(res.P);
  return emit(out, j, res.cert.pass && res.cert.reverified);
}

int cmd_stages(const RunConfig& c, std::ostream& out) {
  CompactFamily f = make_family(c);
  RationalExponent exp(c.sigma, c.tau);
  std::vector<ComplexPolynomial> targets;
  std::stringstream ss(c.targets);
  std::string item;
  while (std::getline(ss, item, ';')) targets.push_back(parse_polynomial(item));
  StageMode mode = c.mode == "growing" ? StageMode::growing_coeffs : StageMode::halfspace;
  StageResult res = stage_build(f, exp, targets, c.stages, mode);
  bool pass = res.complete;
  for (const auto& r : res.records) {
    pass = pass && r.cert.pass && r.target_error_dense < r.epsilon_n;
    if (mode == StageMode::halfspace) pass = pass && r.halfspace_ok;
    else pass = pass && r.min_coeff_abs >= r.stage;
  }
  json j = to_json(res);
  j["pass"] = pass;
  return emit(out, j, pass);
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  std::vector<std::string> only;
  for (const auto& s : c.only) {
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) only.push_back(item);
  }
  bool all = true;
  json arr = json::array();
  run_acceptance(only, [&](const AcceptanceResult& r) {
    out << std::setw(2) << r.id << "  " << std::left << std::setw(20) << r.name << std::right << "  "
        << (r.pass ? "PASS" : "FAIL") << "  " << std::fixed << std::setprecision(3) << r.seconds << "s  "
        << r.detail << '\n';
    out.unsetf(std::ios::floatfield);
    out << std::flush;
    all = all && r.pass;
    arr.push_back(json{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"seconds", num(r.seconds)},
                       {"detail", r.detail}});
  });
  if (!c.json_out.empty()) write_file(c.json_out, dump(json{{"pass", all}, {"criteria", arr}}));
  return all ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Weighted polynomial approximation and universal-series construction toolkit", "wpa"};
  app.require_subcommand(1);

  auto* report = app.add_subcommand("report", "alpha_K, M_K and distance summary for a family");
  add_family(report, c);
  report->add_option("--samples", c.samples, "boundary samples (default 4096)");

  auto* region = app.add_subcommand("region", "K(alpha) membership grid as CSV (and SVG)");
  add_family(region, c);
  add_exponent(region, c);
  region->add_option("--grid", c.grid, "cells per side (<= 2000)")->capture_default_str();
  region->add_option("--out", c.out, "CSV path (stdout when omitted)");
  region->add_option("--svg", c.svg, "optional SVG path");

  auto* criterion = app.add_subcommand("criterion", "harmonic-measure positivity criterion for a domain");
  add_family(criterion, c);
  criterion->add_option("--rho", c.rho, "disc domain radius");
  criterion->add_option("--eps", c.eps, "domain inflation (default 0.05)");
  criterion->add_option("--alpha", c.alpha, "exponent alpha")->required();
  criterion->add_option("--samples", c.samples, "boundary samples (default 4096)");

  auto* fit = app.add_subcommand("fit", "discrete minimax fit of z^{n sigma} Q to a target on K");
  add_family(fit, c);
  add_exponent(fit, c);
  fit->add_option("--n", c.n, "weight power n")->capture_default_str();
  fit->add_option("--n-list", c.n_list, "comma-separated increasing n values for a convergence scan");
  fit->add_option("--target", c.target, "target coefficients c0,c1,... (re or re:im)")->capture_default_str();
  fit->add_option("--samples", c.samples, "K samples (default 512)");
  fit->add_option("--tol", c.tol, "pass threshold on the sup residual")->capture_default_str();
  fit->add_option("--out", c.out, "CSV path for the scan table");

  auto* construct = app.add_subcommand("construct", "perturbed polynomial with certificate");
  add_family(construct, c);
  add_exponent(construct, c);
  construct->add_option("--eps", c.eps, "approximation epsilon (default 0.1)");
  construct->add_option("--B", c.B, "lower bound for coefficients and partial sums")->capture_default_str();
  construct->add_option("--N", c.N, "minimal valuation")->capture_default_str();
  construct->add_option("--r", c.r, "radius of the small disc (default 0.9 r(K,alpha))");
  construct->add_option("--level", c.level, "L = sub-level set at level * M^-tau")->capture_default_str();
  construct->add_option("--L-samples", c.L_samples, "samples of L")->capture_default_str();
  construct->add_option("--target", c.target, "target coefficients")->capture_default_str();
  construct->add_option("--samples", c.samples, "K samples (default 512)");

  auto* stages = app.add_subcommand("stages", "finite prefix of the staged construction");
  add_family(stages, c);
  add_exponent(stages, c);
  stages->add_option("--stages", c.stages, "number of stages (<= 8)")->capture_default_str();
  stages->add_option("--mode", c.mode, "halfspace or growing")
      ->check(CLI::IsMember({"halfspace", "growing"}))
      ->capture_default_str();
  stages->add_option("--targets", c.targets, "semicolon-separated target polynomials")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_option("--only", c.only, "criterion names (repeatable or comma-separated)");
  verify->add_option("--json", c.json_out, "write machine-readable results");

  try {
    std::vector<std::string> args = apply_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*report) return cmd_report(c, out);
    if (*region) return cmd_region(c, out);
    if (*criterion) return cmd_criterion(c, out);
    if (*fit) return cmd_fit(c, out);
    if (*construct) return cmd_construct(c, out);
    if (*stages) return cmd_stages(c, out);
    if (*verify) return cmd_verify(c, out);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::configuration:
      case ErrorKind::domain:
      case ErrorKind::unsupported:
        return 2;
      default:
        out << dump(json{{"pass", false}, {"error", to_string(e.kind())}, {"message", e.what()}});
        return 1;
    }
  }
  return 2;
}

}  // namespace wpa
