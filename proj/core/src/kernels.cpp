#include "kplus/kernels.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "kplus/linalg.hpp"
#include "kplus/rng.hpp"

namespace kplus {

namespace {

// ── scalar helpers, templated over double / long double ─────────────────────

// sinh(y)/y, equal to 1 at y = 0
template <typename R>
R shc(R y) {
  const R a = std::abs(y);
  if (a < R(1e-4)) {
    const R y2 = y * y;
    return R(1) + y2 / R(6) + y2 * y2 / R(120);
  }
  return std::sinh(y) / y;
}

// log(sinh|y| / |y|)
template <typename R>
R log_shc(R y) {
  const R a = std::abs(y);
  if (a < R(1e-4)) {
    const R y2 = y * y;
    return std::log1p(y2 / R(6) + y2 * y2 / R(120));
  }
  if (a <= R(30)) return std::log(std::sinh(a) / a);
  // sinh a = e^a (1 - e^{-2a}) / 2
  return a - std::log(R(2) * a) + std::log1p(-std::exp(R(-2) * a));
}

template <typename R>
R log_cosh(R y) {
  const R a = std::abs(y);
  if (a <= R(30)) return std::log(std::cosh(a));
  return a + std::log1p(std::exp(R(-2) * a)) - std::log(R(2));
}

// log|e^y - 1|
template <typename R>
R log_abs_expm1(R y) {
  if (y > R(0)) {
    if (y > R(40)) return y + std::log1p(-std::exp(-y));
    return std::log(std::expm1(y));
  }
  return std::log(-std::expm1(y));  // |e^y - 1| = 1 - e^y for y < 0
}

template <typename R>
R eval_extreme(R nu, R x) {
  return (R(1) + nu) / R(2) * (R(1) / (x + nu) + R(1) / (R(1) + nu * x));
}

template <typename R>
R log_eval_extreme(R nu, R x) {
  return std::log((R(1) + nu) / R(2)) +
         std::log(R(1) / (x + nu) + R(1) / (R(1) + nu * x));
}

// (1/a) log cosh(a w / 2); series keeps accuracy through a -> 0
template <typename R>
R inv_alpha_log_cosh_half(R a, R w) {
  const R z = a * w / R(2);
  if (std::abs(z) < R(1e-3)) {
    const R w2 = w * w;
    return a * w2 / R(8) - a * a * a * w2 * w2 / R(192) +
           a * a * a * a * a * w2 * w2 * w2 / R(2880);
  }
  return log_cosh(z) / a;
}

template <typename R>
R eval_stolarsky_log(R a, R w) {
  // log k = (log|e^{aw}-1| - log|a| - log|e^w-1|) / (1-a)
  if (std::abs(R(1) - a) < R(1e-6)) {
    // identric limit: expansion of L(a) = log expm1(aw) - log a around a = 1
    const R l1 = w / (-std::expm1(-w)) - R(1);          // L'(1)
    const R sc = shc(w / R(2));
    const R l2 = R(1) - R(1) / (sc * sc);               // L''(1)
    return -l1 - (a - R(1)) * l2 / R(2);
  }
  if (std::abs(w) < R(1e-9)) {
    const R base = (a == R(0)) ? w / std::expm1(w)
                               : std::expm1(a * w) / (a * std::expm1(w));
    return std::log(base) / (R(1) - a);
  }
  const R num = (a == R(0)) ? std::log(std::abs(w)) - log_abs_expm1(w)
                            : log_abs_expm1(a * w) - std::log(std::abs(a)) -
                                  log_abs_expm1(w);
  return num / (R(1) - a);
}

template <typename R>
R eval_power_difference(R a, R w) {
  if (w == R(0)) return R(1);
  if (std::abs(a) < R(1e-13)) return -std::expm1(-w) / w;        // (x-1)/(x log x)
  if (std::abs(a - R(1)) < R(1e-13)) return w / std::expm1(w);   // log x/(x-1)
  const R y1 = (a - R(1)) * w, y2 = a * w;
  if (std::abs(y1) < R(500) && std::abs(y2) < R(500))
    return a / (a - R(1)) * std::expm1(y1) / std::expm1(y2);
  return std::exp(std::log(std::abs(a / (a - R(1)))) + log_abs_expm1(y1) -
                  log_abs_expm1(y2));
}

template <typename R>
R eval_kernel(const MetricKernel& k, R x);

template <typename R>
R eval_family(const MetricKernel& k, R x, R w) {
  switch (k.family) {
    case Family::extreme:
      return eval_extreme(R(k.p1), x);
    case Family::heinz: {
      const R arg = (R(k.p1) - R(0.5)) * w;
      return std::exp(-w / R(2) - log_cosh(arg));
    }
    case Family::binomial: {
      const R a = R(k.p1);
      if (a == R(0)) return std::exp(-w / R(2));
      return std::exp(-w / R(2) - inv_alpha_log_cosh_half(a, w));
    }
    case Family::power_difference:
      return eval_power_difference(R(k.p1), w);
    case Family::wyd: {
      const R p = R(k.p1);
      return std::exp(-w / R(2) + log_shc(p * w / R(2)) +
                      log_shc((R(1) - p) * w / R(2)) - R(2) * log_shc(w / R(2)));
    }
    case Family::stolarsky:
      return std::exp(eval_stolarsky_log(R(k.p1), w));
    case Family::stolarsky_dual:
      return std::exp(-eval_stolarsky_log(R(k.p1), -w));
    case Family::convex_combo: {
      const R lam = R(k.p2);
      return lam * eval_extreme(R(k.p1), x) + (R(1) - lam) * eval_extreme(R(1), x);
    }
    case Family::geometric_bridge: {
      const R lam = R(k.p3);
      return std::exp((R(1) - lam) * log_eval_extreme(R(k.p1), x) +
                      lam * log_eval_extreme(R(k.p2), x));
    }
    case Family::hansen_bridge: {
      const R lam = R(k.p1);
      return std::exp((R(1) - lam) * log_eval_extreme(R(1), x) +
                      lam * log_eval_extreme(R(1) - lam, x));
    }
    case Family::sinh_bridge: {
      const R a = R(k.p1);
      return std::exp(-w / R(2) + log_shc(a * w / R(2)) - log_shc(w / R(2)));
    }
    case Family::heron: {
      const R lam = R(k.p2);
      return lam * eval_extreme(R(k.p1), x) + (R(1) - lam) * std::exp(-w / R(2));
    }
    case Family::mixture: {
      R acc = R(0);
      for (const auto& [weight, part] : k.parts) acc += R(weight) * eval_kernel(part, x);
      return acc;
    }
    case Family::dual_of:
      return R(1) / eval_kernel(k.parts.front().second, R(1) / x);
  }
  throw std::logic_error("eval: unknown family");
}

template <typename R>
R eval_kernel(const MetricKernel& k, R x) {
  if (!(x > R(0)) || !std::isfinite(static_cast<double>(x)))
    throw std::domain_error("kernel eval: x must be positive and finite");
  if (x == R(1)) return R(1);
  return eval_family(k, x, std::log(x));
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::domain_error(what);
}

std::string interval_msg(const std::string& family, const std::string& param, double lo,
                         double hi, double got) {
  std::ostringstream os;
  os << family << ": " << param << " must lie in [" << lo << ", " << hi << "], got "
     << got;
  return os.str();
}

void check_range(const std::string& family, const std::string& param, double lo,
                 double hi, double v) {
  if (!(v >= lo && v <= hi) || std::isnan(v))
    throw std::domain_error(interval_msg(family, param, lo, hi, v));
}

}  // namespace

double MetricKernel::eval(double x) const { return eval_kernel<double>(*this, x); }

long double MetricKernel::eval_ld(long double x) const {
  return eval_kernel<long double>(*this, x);
}

// ── factories ────────────────────────────────────────────────────────────────

MetricKernel make_extreme(double nu) {
  check_range("extreme", "nu", 0, 1, nu);
  return MetricKernel{Family::extreme, nu};
}

MetricKernel make_heinz(double alpha) {
  check_range("heinz", "alpha", 0, 1, alpha);
  return MetricKernel{Family::heinz, alpha};
}

MetricKernel make_binomial(double alpha) {
  check_range("binomial", "alpha", -1, 1, alpha);
  return MetricKernel{Family::binomial, alpha};
}

MetricKernel make_power_difference(double alpha) {
  check_range("power_difference", "alpha", -1, 2, alpha);
  return MetricKernel{Family::power_difference, alpha};
}

MetricKernel make_wyd(double p) {
  check_range("wyd", "p", -1, 2, p);
  return MetricKernel{Family::wyd, p};
}

MetricKernel make_stolarsky(double alpha) {
  check_range("stolarsky", "alpha", -2, 2, alpha);
  return MetricKernel{Family::stolarsky, alpha};
}

MetricKernel make_stolarsky_dual(double alpha) {
  check_range("stolarsky_dual", "alpha", -2, 2, alpha);
  return MetricKernel{Family::stolarsky_dual, alpha};
}

MetricKernel make_convex_combo(double nu, double lambda) {
  check_range("convex_combo", "nu", 0, 1, nu);
  check_range("convex_combo", "lambda", 0, 1, lambda);
  return MetricKernel{Family::convex_combo, nu, lambda};
}

MetricKernel make_geometric_bridge(double mu, double nu, double lambda) {
  check_range("geometric_bridge", "mu", 0, 1, mu);
  check_range("geometric_bridge", "nu", 0, 1, nu);
  check_range("geometric_bridge", "lambda", 0, 1, lambda);
  return MetricKernel{Family::geometric_bridge, mu, nu, lambda};
}

MetricKernel make_hansen_bridge(double lambda) {
  check_range("hansen_bridge", "lambda", 0, 1, lambda);
  return MetricKernel{Family::hansen_bridge, lambda};
}

MetricKernel make_sinh_bridge(double alpha) {
  check_range("sinh_bridge", "alpha", 0, 2, alpha);
  return MetricKernel{Family::sinh_bridge, alpha};
}

MetricKernel make_heron(double nu, double lambda) {
  check_range("heron", "nu", 0, 1, nu);
  check_range("heron", "lambda", 0, 1, lambda);
  return MetricKernel{Family::heron, nu, lambda};
}

MetricKernel make_mixture(std::vector<std::pair<double, MetricKernel>> parts) {
  require(!parts.empty(), "mixture: needs at least one component");
  double total = 0;
  for (const auto& [w, part] : parts) {
    require(w > 0, "mixture: weights must be positive");
    total += w;
  }
  require(std::abs(total - 1.0) <= 1e-12, "mixture: weights must sum to 1");
  MetricKernel k{Family::mixture};
  k.parts = std::move(parts);
  return k;
}

namespace {

double named(const std::vector<std::pair<std::string, double>>& params,
             const std::string& name) {
  for (const auto& [n, v] : params)
    if (n == name) return v;
  throw std::domain_error("make_kernel: missing parameter '" + name + "'");
}

}  // namespace

MetricKernel make_kernel(const std::string& family,
                         const std::vector<std::pair<std::string, double>>& params) {
  const Family f = family_from_name(family);
  switch (f) {
    case Family::extreme: return make_extreme(named(params, "nu"));
    case Family::heinz: return make_heinz(named(params, "alpha"));
    case Family::binomial: return make_binomial(named(params, "alpha"));
    case Family::power_difference:
      return make_power_difference(named(params, "alpha"));
    case Family::wyd: return make_wyd(named(params, "p"));
    case Family::stolarsky: return make_stolarsky(named(params, "alpha"));
    case Family::stolarsky_dual: return make_stolarsky_dual(named(params, "alpha"));
    case Family::convex_combo:
      return make_convex_combo(named(params, "nu"), named(params, "lambda"));
    case Family::geometric_bridge:
      return make_geometric_bridge(named(params, "mu"), named(params, "nu"),
                                   named(params, "lambda"));
    case Family::hansen_bridge: return make_hansen_bridge(named(params, "lambda"));
    case Family::sinh_bridge: return make_sinh_bridge(named(params, "alpha"));
    case Family::heron:
      return make_heron(named(params, "nu"), named(params, "lambda"));
    default:
      throw std::domain_error("make_kernel: family '" + family +
                              "' needs structured construction");
  }
}

std::string family_name(Family f) {
  switch (f) {
    case Family::extreme: return "extreme";
    case Family::heinz: return "heinz";
    case Family::binomial: return "binomial";
    case Family::power_difference: return "power_difference";
    case Family::wyd: return "wyd";
    case Family::stolarsky: return "stolarsky";
    case Family::stolarsky_dual: return "stolarsky_dual";
    case Family::convex_combo: return "convex_combo";
    case Family::geometric_bridge: return "geometric_bridge";
    case Family::hansen_bridge: return "hansen_bridge";
    case Family::sinh_bridge: return "sinh_bridge";
    case Family::heron: return "heron";
    case Family::mixture: return "mixture";
    case Family::dual_of: return "dual";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  for (int i = 0; i <= static_cast<int>(Family::dual_of); ++i) {
    const Family f = static_cast<Family>(i);
    if (family_name(f) == name) return f;
  }
  throw std::domain_error("unknown kernel family '" + name + "'");
}

MetricKernel dual(const MetricKernel& k) {
  switch (k.family) {
    case Family::extreme:
      if (k.p1 == 0.0) return make_extreme(1.0);
      if (k.p1 == 1.0) return make_extreme(0.0);
      break;
    case Family::binomial:
      return make_binomial(-k.p1);
    case Family::power_difference:
      return make_power_difference(1.0 - k.p1);
    case Family::stolarsky:
      return make_stolarsky_dual(k.p1);
    case Family::stolarsky_dual:
      return make_stolarsky(k.p1);
    case Family::dual_of:
      return k.parts.front().second;
    default:
      break;
  }
  MetricKernel d{Family::dual_of};
  d.parts.emplace_back(1.0, k);
  return d;
}

double derived_eval(const MetricKernel& k, DerivedView which, double x) {
  const double v = k.eval(x);
  switch (which) {
    case DerivedView::f:
      return 1.0 / v;
    case DerivedView::g: {
      const double r = (x - 1.0) * std::sqrt(v);
      return r * r;
    }
    case DerivedView::weighted:
      return std::exp(0.5 * std::log(x)) * v;
  }
  throw std::logic_error("derived_eval: unknown view");
}

double scalar_mean(const MetricKernel& k, double x, double y) {
  if (!(x > 0) || !(y > 0))
    throw std::domain_error("scalar_mean: arguments must be positive");
  return y / k.eval(x / y);
}

DiscreteMeasure::DiscreteMeasure(std::vector<std::pair<double, double>> a)
    : atoms(std::move(a)) {
  require(!atoms.empty(), "DiscreteMeasure: empty");
  double total = 0;
  for (const auto& [nu, w] : atoms) {
    require(nu >= 0 && nu <= 1, "DiscreteMeasure: support must lie in [0,1]");
    require(w > 0, "DiscreteMeasure: weights must be positive");
    total += w;
  }
  require(std::abs(total - 1.0) <= 1e-12, "DiscreteMeasure: weights must sum to 1");
}

double integral_representation_eval(const DiscreteMeasure& m, double x) {
  if (!(x > 0)) throw std::domain_error("integral_representation_eval: x <= 0");
  double acc = 0;
  for (const auto& [nu, w] : m.atoms) acc += w * eval_extreme<double>(nu, x);
  return acc;
}

// ── class-K property checks ──────────────────────────────────────────────────

namespace {

ClassKReport check_class_K_impl(const std::function<double(double)>& k,
                                int monotone_pairs, std::uint64_t seed) {
  ClassKReport rep;
  constexpr int kGridPoints = 81;  // log-spaced over [1e-6, 1e6]
  for (int i = 0; i < kGridPoints; ++i) {
    const double lx = -6.0 + 12.0 * i / (kGridPoints - 1);
    const double x = std::pow(10.0, lx);
    const double kx = k(x);
    const double kinv = k(1.0 / x);
    const double rel = std::abs(x * kx - kinv) / std::max(1e-300, std::abs(kinv));
    rep.max_symmetry_residual = std::max(rep.max_symmetry_residual, rel);
    // genpword bounds with slack relative to the bound scale (the bounds
    // reach ~5e5 at the grid edges)
    const double lo = 2.0 / (1.0 + x), hi = (1.0 + x) / (2.0 * x);
    rep.max_bound_violation = std::max(
        {rep.max_bound_violation, (lo - kx) / lo, (kx - hi) / hi});
  }
  rep.symmetry_ok = rep.max_symmetry_residual <= 1e-10;
  rep.bounds_ok = rep.max_bound_violation <= 1e-12;

  rep.xk_near_zero = 1e-6 * k(1e-6);
  rep.k_near_inf = k(1e6);
  rep.bounded_ok = std::isfinite(rep.xk_near_zero) && rep.xk_near_zero < 1e3 &&
                   std::isfinite(rep.k_near_inf) && rep.k_near_inf < 1e3;

  // sampled operator monotone decreasing: A >= B > 0  =>  k(B) >= k(A)
  rep.monotone_min_eig = 1e9;
  Rng rng(seed, 7);
  for (int trial = 0; trial < monotone_pairs; ++trial) {
    const int d = 2 + static_cast<int>(rng.below(4));  // 2..5
    const std::uint64_t s1 = rng.next_u64(), s2 = rng.next_u64();
    Matrix g = random_sample(SampleKind::density, d, s1);
    Matrix b = g * double(d) + 0.05 * Matrix::Identity(d, d);
    Matrix q = random_sample(SampleKind::density, d, s2);
    Matrix a = b + q * (0.5 + rng.uniform());
    const Matrix kb = matrix_function(HermitianMatrix(b), k);
    const Matrix ka = matrix_function(HermitianMatrix(a), k);
    rep.monotone_min_eig =
        std::min(rep.monotone_min_eig, min_eigenvalue(HermitianMatrix(kb - ka)));
  }
  rep.monotone_pairs = monotone_pairs;
  rep.monotone_ok = rep.monotone_min_eig >= -1e-8;
  return rep;
}

}  // namespace

ClassKReport check_class_K(const MetricKernel& k, int monotone_pairs,
                           std::uint64_t seed) {
  return check_class_K_impl([&k](double x) { return k.eval(x); }, monotone_pairs,
                            seed);
}

ClassKReport check_class_K_fn(const std::function<double(double)>& k,
                              int monotone_pairs, std::uint64_t seed) {
  return check_class_K_impl(k, monotone_pairs, seed);
}

// ── JSON descriptors ─────────────────────────────────────────────────────────

nlohmann::json kernel_to_json(const MetricKernel& k) {
  nlohmann::json j;
  j["family"] = family_name(k.family);
  switch (k.family) {
    case Family::extreme: j["params"] = {{"nu", k.p1}}; break;
    case Family::heinz:
    case Family::binomial:
    case Family::power_difference:
    case Family::stolarsky:
    case Family::stolarsky_dual:
    case Family::sinh_bridge: j["params"] = {{"alpha", k.p1}}; break;
    case Family::wyd: j["params"] = {{"p", k.p1}}; break;
    case Family::convex_combo:
    case Family::heron: j["params"] = {{"nu", k.p1}, {"lambda", k.p2}}; break;
    case Family::geometric_bridge:
      j["params"] = {{"mu", k.p1}, {"nu", k.p2}, {"lambda", k.p3}};
      break;
    case Family::hansen_bridge: j["params"] = {{"lambda", k.p1}}; break;
    case Family::mixture: {
      j["components"] = nlohmann::json::array();
      for (const auto& [w, part] : k.parts)
        j["components"].push_back({{"weight", w}, {"kernel", kernel_to_json(part)}});
      break;
    }
    case Family::dual_of:
      j["inner"] = kernel_to_json(k.parts.front().second);
      break;
  }
  return j;
}

MetricKernel kernel_from_json(const nlohmann::json& j) {
  const std::string fam = j.at("family").get<std::string>();
  const Family f = family_from_name(fam);
  if (f == Family::mixture) {
    std::vector<std::pair<double, MetricKernel>> parts;
    for (const auto& c : j.at("components"))
      parts.emplace_back(c.at("weight").get<double>(),
                         kernel_from_json(c.at("kernel")));
    return make_mixture(std::move(parts));
  }
  if (f == Family::dual_of) return dual(kernel_from_json(j.at("inner")));
  std::vector<std::pair<std::string, double>> params;
  if (j.contains("params"))
    for (const auto& [name, v] : j.at("params").items())
      params.emplace_back(name, v.get<double>());
  return make_kernel(fam, params);
}

std::vector<FamilyInfo> family_catalog() {
  return {
      {"extreme", {{"nu", {0, 1}}}},
      {"heinz", {{"alpha", {0, 1}}}},
      {"binomial", {{"alpha", {-1, 1}}}},
      {"power_difference", {{"alpha", {-1, 2}}}},
      {"wyd", {{"p", {-1, 2}}}},
      {"stolarsky", {{"alpha", {-2, 2}}}},
      {"stolarsky_dual", {{"alpha", {-2, 2}}}},
      {"convex_combo", {{"nu", {0, 1}}, {"lambda", {0, 1}}}},
      {"geometric_bridge", {{"mu", {0, 1}}, {"nu", {0, 1}}, {"lambda", {0, 1}}}},
      {"hansen_bridge", {{"lambda", {0, 1}}}},
      {"sinh_bridge", {{"alpha", {0, 2}}}},
      {"heron", {{"nu", {0, 1}}, {"lambda", {0, 1}}}},
  };
}

}  // namespace kplus
