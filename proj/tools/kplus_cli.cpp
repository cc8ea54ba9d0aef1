// kplus: kernel evaluation, complete-positivity testing, critical-parameter
// searches, closed-form Fourier verification, and channel contraction runs.
//
// Exit codes: 0 success, 1 acceptance/verification failure, 2 usage error,
// 3 numerical rejection (singular or out-of-domain inputs).

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "kplus/acceptance.hpp"
#include "kplus/channels.hpp"
#include "kplus/closed_forms.hpp"
#include "kplus/posdef.hpp"
#include "kplus/quadrature.hpp"
#include "kplus/rng.hpp"
#include "kplus/superop.hpp"

namespace {

using nlohmann::json;
using namespace kplus;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  out << content;
}

MetricKernel parse_kernel(const std::string& descriptor) {
  return kernel_from_json(json::parse(descriptor));
}

TestConfig load_config(const std::string& path, std::optional<double> tolerance) {
  TestConfig cfg;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    json j;
    in >> j;
    if (j.contains("gram_size")) cfg.gram_size = j["gram_size"].get<int>();
    if (j.contains("gram_trials")) cfg.gram_trials = j["gram_trials"].get<int>();
    if (j.contains("point_scale")) cfg.point_scale = j["point_scale"].get<double>();
    if (j.contains("fourier_halfwidth"))
      cfg.fourier_halfwidth = j["fourier_halfwidth"].get<double>();
    if (j.contains("fourier_samples"))
      cfg.fourier_samples = j["fourier_samples"].get<int>();
    if (j.contains("tolerance")) cfg.tolerance = j["tolerance"].get<double>();
  }
  if (tolerance) cfg.tolerance = *tolerance;
  return cfg;
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<double> grid;
  if (spec.find(':') != std::string::npos) {
    double lo, hi, step;
    char c1, c2;
    std::istringstream is(spec);
    if (!(is >> lo >> c1 >> step >> c2 >> hi) || c1 != ':' || c2 != ':')
      throw std::runtime_error("grid must be 'lo:step:hi' or comma-separated");
    for (double v = lo; v <= hi + 1e-12; v += step) grid.push_back(v);
  } else {
    std::istringstream is(spec);
    std::string tok;
    while (std::getline(is, tok, ',')) grid.push_back(std::stod(tok));
  }
  if (grid.empty()) throw std::runtime_error("empty parameter grid");
  return grid;
}

std::string agreement_string(TriBool expected, Verdict got) {
  if (expected == TriBool::unknown || got == Verdict::inconclusive)
    return "inconclusive-consistent";
  const bool got_yes = got == Verdict::positive_definite;
  return got_yes == (expected == TriBool::yes) ? "match" : "contradiction";
}

int cmd_families(const std::string& out_path) {
  json j = json::array();
  for (const auto& info : family_catalog()) {
    json params = json::object();
    for (const auto& [name, range] : info.params)
      params[name] = {range.first, range.second};
    j.push_back({{"family", info.name}, {"params", params}});
  }
  write_output(out_path, j.dump(2) + "\n");
  return 0;
}

int cmd_eval(const MetricKernel& k, double x, const std::string& out_path) {
  json j = {{"kernel", kernel_to_json(k)},
            {"x", x},
            {"k", k.eval(x)},
            {"f", derived_eval(k, DerivedView::f, x)},
            {"g", derived_eval(k, DerivedView::g, x)},
            {"weighted", derived_eval(k, DerivedView::weighted, x)},
            {"dual", dual(k).eval(x)}};
  write_output(out_path, j.dump(2) + "\n");
  return 0;
}

int cmd_cp_test(const MetricKernel& k, const TestConfig& cfg,
                const std::string& out_path) {
  const PosDefVerdict v = cp_test(k, cfg);
  json j = verdict_to_json(v);
  j["kernel"] = kernel_to_json(k);
  write_output(out_path, j.dump(2) + "\n");
  return 0;
}

int cmd_order_test(const MetricKernel& k1, const MetricKernel& k2,
                   const TestConfig& cfg, const std::string& out_path) {
  const PosDefVerdict v = order_test(k1, k2, cfg);
  json j = verdict_to_json(v);
  j["k1"] = kernel_to_json(k1);
  j["k2"] = kernel_to_json(k2);
  write_output(out_path, j.dump(2) + "\n");
  return 0;
}

int cmd_membership(const MetricKernel& k, const TestConfig& cfg,
                   const std::string& out_path) {
  const MembershipResult m = membership(k, cfg);
  const FamilyMembership pred = family_membership(k);
  json j = {{"kernel", kernel_to_json(k)},
            {"classification", membership_class_name(m.classification)},
            {"k_plus", verdict_to_json(m.plus)},
            {"k_minus", verdict_to_json(m.minus)},
            {"predicted_k_plus", tribool_name(pred.in_K_plus)},
            {"predicted_k_minus", tribool_name(pred.in_K_minus)},
            {"agreement_k_plus", agreement_string(pred.in_K_plus, m.plus.verdict)},
            {"agreement_k_minus", agreement_string(pred.in_K_minus, m.minus.verdict)}};
  write_output(out_path, j.dump(2) + "\n");
  const bool contradiction =
      agreement_string(pred.in_K_plus, m.plus.verdict) == "contradiction" ||
      agreement_string(pred.in_K_minus, m.minus.verdict) == "contradiction";
  return contradiction ? 1 : 0;
}

MetricKernel kernel_with_param(const std::string& family, double v) {
  const Family f = family_from_name(family);
  switch (f) {
    case Family::extreme: return make_extreme(v);
    case Family::heinz: return make_heinz(v);
    case Family::binomial: return make_binomial(v);
    case Family::power_difference: return make_power_difference(v);
    case Family::wyd: return make_wyd(v);
    case Family::stolarsky: return make_stolarsky(v);
    case Family::stolarsky_dual: return make_stolarsky_dual(v);
    case Family::sinh_bridge: return make_sinh_bridge(v);
    case Family::hansen_bridge: return make_hansen_bridge(v);
    default:
      throw CLI::ValidationError("scan", "family '" + family +
                                              "' is not single-parameter");
  }
}

int cmd_scan(const std::string& family, const std::string& grid_spec,
             const std::string& test, const TestConfig& cfg,
             const std::string& out_path) {
  const std::vector<double> grid = parse_grid(grid_spec);
  std::ostringstream csv;
  if (test == "cp") {
    csv << "param,verdict,margin,method,pred_k_plus,agreement\n";
    for (double p : grid) {
      const MetricKernel k = kernel_with_param(family, p);
      const PosDefVerdict v = cp_test(k, cfg);
      const FamilyMembership pred = family_membership(k);
      const std::string agree = agreement_string(pred.in_K_plus, v.verdict);
      if (agree == "contradiction") return 1;
      csv << fmt(p) << ',' << verdict_name(v.verdict) << ',' << fmt(v.margin) << ','
          << method_name(v.method) << ',' << tribool_name(pred.in_K_plus) << ','
          << agree << '\n';
    }
  } else if (test == "membership") {
    csv << "param,classification,kplus_verdict,kplus_margin,kminus_verdict,"
           "kminus_margin,pred_k_plus,pred_k_minus,agreement\n";
    for (double p : grid) {
      const MetricKernel k = kernel_with_param(family, p);
      const MembershipResult m = membership(k, cfg);
      const FamilyMembership pred = family_membership(k);
      const std::string ap = agreement_string(pred.in_K_plus, m.plus.verdict);
      const std::string am = agreement_string(pred.in_K_minus, m.minus.verdict);
      const std::string agree = (ap == "contradiction" || am == "contradiction")
                                    ? "contradiction"
                                    : (ap == "match" && am == "match")
                                          ? "match"
                                          : "inconclusive-consistent";
      if (agree == "contradiction") return 1;
      csv << fmt(p) << ',' << membership_class_name(m.classification) << ','
          << verdict_name(m.plus.verdict) << ',' << fmt(m.plus.margin) << ','
          << verdict_name(m.minus.verdict) << ',' << fmt(m.minus.margin) << ','
          << tribool_name(pred.in_K_plus) << ',' << tribool_name(pred.in_K_minus)
          << ',' << agree << '\n';
    }
  } else if (test == "order-vs") {
    // order against x^{-1/2}: the membership-defining comparison
    csv << "param,verdict,margin,method\n";
    const MetricKernel root = make_binomial(0.0);
    for (double p : grid) {
      const MetricKernel k = kernel_with_param(family, p);
      const PosDefVerdict v = order_test(k, root, cfg);
      csv << fmt(p) << ',' << verdict_name(v.verdict) << ',' << fmt(v.margin) << ','
          << method_name(v.method) << '\n';
    }
  } else {
    throw CLI::ValidationError("scan", "test must be cp, order-vs or membership");
  }
  write_output(out_path, csv.str());
  return 0;
}

int cmd_critical(const std::string& family, double nu, double mu, double lo,
                 double hi, bool assume_monotone, const TestConfig& cfg,
                 const std::string& out_path) {
  std::function<MetricKernel(double)> fn;
  if (family == "convex_combo") {
    fn = [nu](double lam) { return make_convex_combo(nu, lam); };
  } else if (family == "geometric_bridge") {
    fn = [mu, nu](double lam) { return make_geometric_bridge(mu, nu, lam); };
    if (mu != 1.0 && !assume_monotone)
      throw CLI::ValidationError(
          "critical", "geometric_bridge with mu != 1 needs --assume-monotone");
  } else if (family == "hansen_bridge") {
    if (!assume_monotone)
      throw CLI::ValidationError(
          "critical",
          "monotonicity of the Hansen bridge is open; pass --assume-monotone");
    fn = [](double lam) { return make_hansen_bridge(lam); };
  } else if (family == "sinh_bridge") {
    fn = [](double a) { return make_sinh_bridge(a); };
  } else if (family == "wyd") {
    fn = [](double p) { return make_wyd(p); };
  } else if (family == "binomial") {
    fn = [](double a) { return make_binomial(a); };
  } else {
    throw CLI::ValidationError("critical", "unsupported family '" + family + "'");
  }
  const CriticalBracket br = critical_search(fn, lo, hi, cfg);
  json j = {{"family", family},
            {"bracket", {br.lo, br.hi}},
            {"midpoint", br.midpoint()},
            {"width", br.width()},
            {"inconclusive_points", br.inconclusive_points},
            {"assumed_monotone", assume_monotone}};
  if (family == "convex_combo") j["nu"] = nu;
  if (family == "geometric_bridge") {
    j["nu"] = nu;
    j["mu"] = mu;
  }
  write_output(out_path, j.dump(2) + "\n");
  return 0;
}

int cmd_ft_verify(const std::string& kind, double alpha, double beta, double smin,
                  double smax, double step, const std::string& out_path) {
  std::ostringstream csv;
  csv << "s,closed_form,quadrature,abs_err\n";
  double worst = 0;
  for (double s = smin; s <= smax + 1e-12; s += step) {
    double closed = 0, quad = 0;
    if (kind == "cosh-product") {
      const HyperbolicParams p(alpha, beta);
      closed = ft_cosh_product(p, s);
      quad = fourier_cos_even(
                 [alpha, beta](double t) {
                   return 1.0 / ((std::cosh(t / 2) + alpha) * (std::cosh(t) + beta));
                 },
                 s) /
             (4 * M_PI);
    } else if (kind == "alpha-zero") {
      closed = ft_alpha_zero(beta, s);
      quad = fourier_cos_even(
          [beta](double t) {
            return 1.0 / (std::cosh(t / 2) * (std::cosh(t) + beta));
          },
          s);
    } else if (kind == "sech") {
      closed = 2 * M_PI / std::cosh(M_PI * s);
      quad = fourier_cos_even([](double t) { return 1.0 / std::cosh(t / 2); }, s);
    } else {
      throw CLI::ValidationError("ft-verify",
                                 "case must be cosh-product, alpha-zero or sech");
    }
    const double err = std::abs(closed - quad);
    worst = std::max(worst, err);
    csv << fmt(s) << ',' << fmt(closed) << ',' << fmt(quad) << ',' << fmt(err) << '\n';
  }
  write_output(out_path, csv.str());
  std::cerr << "max abs err " << fmt(worst) << "\n";
  return worst <= 1e-7 ? 0 : 1;
}

int cmd_channel_bench(int d, int env, int samples, std::uint64_t seed,
                      const std::string& kernel_json, const std::string& out_path) {
  const MetricKernel k =
      kernel_json.empty() ? make_binomial(0.0) : parse_kernel(kernel_json);
  const QuantumChannel phi = random_channel(d, env, seed);
  const EtaEstimates e = eta_estimates(k, phi, samples, seed);
  json j = {{"d", d},
            {"env", env},
            {"seed", seed},
            {"kernel", kernel_to_json(k)},
            {"eta_riem_sup", e.riem_sup},
            {"eta_dob_lower", e.dob_lower},
            {"eta_relent_lower", e.relent_lower}};
  write_output(out_path, j.dump(2) + "\n");
  return 0;
}

int cmd_verify(const std::string& suite, bool inject_fault, std::uint64_t seed,
               const std::string& out_path) {
  const auto results = run_acceptance(suite, inject_fault, seed);
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << "criterion " << r.id << ": "
              << r.name << " (" << fmt(r.seconds) << "s)";
    if (!r.pass) std::cout << " -- " << r.detail;
    std::cout << "\n";
  }
  const json report = acceptance_report(results);
  if (!out_path.empty()) write_output(out_path, report.dump(2) + "\n");
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kplus: monotone-metric kernels, Omega superoperators, and "
               "complete-positivity testing"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string kernel_json, kernel2_json, out_path, config_path;
  std::optional<double> tolerance;
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "random seed")->capture_default_str();

  auto add_common = [&](CLI::App* cmd, bool with_kernel) {
    if (with_kernel)
      cmd->add_option("--kernel", kernel_json,
                      R"(kernel descriptor, e.g. {"family":"heinz","params":{"alpha":0.5}})");
    cmd->add_option("--out", out_path, "output file (default stdout)");
    cmd->add_option("--config", config_path, "JSON TestConfig overrides");
    cmd->add_option("--tolerance", tolerance, "positivity tolerance override");
  };

  auto* families = app.add_subcommand("families", "list kernel families");
  add_common(families, false);

  double eval_x = 1.0;
  auto* eval = app.add_subcommand("eval", "evaluate a kernel and derived views");
  add_common(eval, true);
  eval->add_option("--x", eval_x, "evaluation point")->required();

  auto* cp = app.add_subcommand("cp-test", "complete-positivity (K+) test");
  add_common(cp, true);

  auto* order = app.add_subcommand("order-test", "test k1 <= k2 in the kernel order");
  add_common(order, true);
  order->add_option("--k2", kernel2_json, "second kernel descriptor")->required();

  auto* member = app.add_subcommand("membership", "K+/K- classification");
  add_common(member, true);

  std::string scan_family, scan_grid, scan_test = "membership";
  auto* scan = app.add_subcommand("scan", "sweep a family parameter");
  add_common(scan, false);
  scan->add_option("--family", scan_family, "single-parameter family")->required();
  scan->add_option("--grid", scan_grid, "grid: lo:step:hi or v1,v2,...")->required();
  scan->add_option("--test", scan_test, "cp | order-vs | membership");

  std::string crit_family;
  double crit_nu = 0.5, crit_mu = 1.0, crit_lo = 0.0, crit_hi = 1.0;
  bool assume_monotone = false;
  auto* crit = app.add_subcommand("critical", "bisection for a membership boundary");
  add_common(crit, false);
  crit->add_option("--family", crit_family, "family to search")->required();
  crit->add_option("--nu", crit_nu, "nu parameter (convex_combo/geometric_bridge)");
  crit->add_option("--mu", crit_mu, "mu parameter (geometric_bridge)");
  crit->add_option("--lo", crit_lo, "lower end of the search range")->required();
  crit->add_option("--hi", crit_hi, "upper end of the search range")->required();
  crit->add_flag("--assume-monotone", assume_monotone,
                 "assert membership is monotone over the range");

  std::string ft_case = "cosh-product";
  double ft_alpha = 0.0, ft_beta = 2.0, ft_smin = -8.0, ft_smax = 8.0, ft_step = 0.25;
  auto* ft = app.add_subcommand("ft-verify", "closed-form transforms vs quadrature");
  add_common(ft, false);
  ft->add_option("--case", ft_case, "cosh-product | alpha-zero | sech");
  ft->add_option("--alpha", ft_alpha, "alpha parameter");
  ft->add_option("--beta", ft_beta, "beta parameter");
  ft->add_option("--smin", ft_smin, "grid start");
  ft->add_option("--smax", ft_smax, "grid end");
  ft->add_option("--step", ft_step, "grid step");

  int bench_d = 3, bench_env = 2, bench_samples = 12;
  auto* bench = app.add_subcommand("channel-bench", "contraction coefficients of a "
                                                    "random channel");
  add_common(bench, true);
  bench->add_option("--d", bench_d, "system dimension");
  bench->add_option("--env", bench_env, "environment dimension");
  bench->add_option("--samples", bench_samples, "sampling effort");

  std::string suite = "all";
  bool inject_fault = false;
  auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
  add_common(verify, false);
  verify->add_option("--suite", suite, "all | kernels | posdef | closed-forms | channels");
  verify->add_flag("--inject-fault", inject_fault,
                   "corrupt a kernel evaluator (failure-path test)");

  CLI11_PARSE(app, argc, argv);

  try {
    const TestConfig cfg = load_config(config_path, tolerance);
    if (families->parsed()) return cmd_families(out_path);
    if (eval->parsed()) return cmd_eval(parse_kernel(kernel_json), eval_x, out_path);
    if (cp->parsed()) return cmd_cp_test(parse_kernel(kernel_json), cfg, out_path);
    if (order->parsed())
      return cmd_order_test(parse_kernel(kernel_json), parse_kernel(kernel2_json),
                            cfg, out_path);
    if (member->parsed()) return cmd_membership(parse_kernel(kernel_json), cfg, out_path);
    if (scan->parsed()) return cmd_scan(scan_family, scan_grid, scan_test, cfg, out_path);
    if (crit->parsed())
      return cmd_critical(crit_family, crit_nu, crit_mu, crit_lo, crit_hi,
                          assume_monotone, cfg, out_path);
    if (ft->parsed())
      return cmd_ft_verify(ft_case, ft_alpha, ft_beta, ft_smin, ft_smax, ft_step,
                           out_path);
    if (bench->parsed())
      return cmd_channel_bench(bench_d, bench_env, bench_samples, seed, kernel_json,
                               out_path);
    if (verify->parsed()) return cmd_verify(suite, inject_fault, seed, out_path);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "rejected: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "rejected: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
