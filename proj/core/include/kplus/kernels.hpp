#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace kplus {

// ── The kernel catalog ────────────────────────────────────────────────────────
//
// A MetricKernel is a positive function k on (0, inf), normalized k(1) = 1,
// with the symmetry x k(x) = k(1/x), operator convex.  Families:
//
//   extreme(nu)           (1+nu)^2/2 * (1+x)/((x+nu)(1+nu x)),      nu in [0,1]
//   heinz(alpha)          2/(x^a + x^(1-a)),                        a in [0,1]
//   binomial(alpha)       (2/(x^a+1))^(1/a),                        a in [-1,1]
//   power_difference(a)   a/(a-1) * (x^(a-1)-1)/(x^a-1),            a in [-1,2]
//   wyd(p)                (1-x^p)(1-x^(1-p))/(p(1-p)(1-x)^2),       p in [-1,2]
//   stolarsky(a)          ((x^a-1)/(a(x-1)))^(1/(1-a)),             a in [-2,2]
//   stolarsky_dual(a)     1/stolarsky_a(1/x),                       a in [-2,2]
//   convex_combo(nu,l)    l*extreme(nu) + (1-l)*2/(1+x)
//   geometric_bridge      extreme(mu)^(1-l) * extreme(nu)^l
//   hansen_bridge(l)      geometric_bridge(1, 1-l, l)
//   sinh_bridge(a)        (x^(a/2)-x^(-a/2))/(a(x-1)),              a in [0,2]
//   heron(nu,l)           l*extreme(nu) + (1-l)*x^(-1/2)
//   mixture               finite convex combination of kernels
//   dual_of               1/k(1/x) of a wrapped kernel
//
// Parameters at removable singularities (binomial a=0, power_difference
// a in {0,1}, wyd p in {0,1}, stolarsky a in {0,1}, sinh_bridge a=0) evaluate
// through their closed-form limits.
enum class Family {
  extreme,
  heinz,
  binomial,
  power_difference,
  wyd,
  stolarsky,
  stolarsky_dual,
  convex_combo,
  geometric_bridge,
  hansen_bridge,
  sinh_bridge,
  heron,
  mixture,
  dual_of,
};

std::string family_name(Family f);
Family family_from_name(const std::string& name);

struct MetricKernel {
  Family family = Family::extreme;
  double p1 = 1.0;  // nu / alpha / p / lambda (single-parameter families)
  double p2 = 0.0;  // lambda (convex_combo, heron), nu (geometric_bridge)
  double p3 = 0.0;  // lambda (geometric_bridge)
  // mixture components (weight, kernel); dual_of stores one component
  std::vector<std::pair<double, MetricKernel>> parts;

  double eval(double x) const;
  long double eval_ld(long double x) const;
};

// Factories validate the admissible parameter intervals and reject anything
// outside them (closed intervals, exactly as stated per family).
MetricKernel make_extreme(double nu);
MetricKernel make_heinz(double alpha);
MetricKernel make_binomial(double alpha);
MetricKernel make_power_difference(double alpha);
MetricKernel make_wyd(double p);
MetricKernel make_stolarsky(double alpha);
MetricKernel make_stolarsky_dual(double alpha);
MetricKernel make_convex_combo(double nu, double lambda);
MetricKernel make_geometric_bridge(double mu, double nu, double lambda);
MetricKernel make_hansen_bridge(double lambda);
MetricKernel make_sinh_bridge(double alpha);
MetricKernel make_heron(double nu, double lambda);
MetricKernel make_mixture(std::vector<std::pair<double, MetricKernel>> parts);

// Generic byname factory used by the CLI: make_kernel("heinz", {{"alpha",.5}}).
MetricKernel make_kernel(const std::string& family,
                         const std::vector<std::pair<std::string, double>>& params);

// k^hat(x) = 1/k(1/x).  Closed under the catalog where a closed form exists
// (binomial -alpha, power_difference 1-alpha, stolarsky <-> stolarsky_dual,
// extreme 0 <-> 1), otherwise a dual_of wrapper.  dual(dual(k)) == k.
MetricKernel dual(const MetricKernel& k);

enum class DerivedView { f, g, weighted };

// f = 1/k, g = (1-x)^2 k(x), weighted = e^(t/2) k(e^t) at x = e^t.
double derived_eval(const MetricKernel& k, DerivedView which, double x);

// M^k(x, y) = y / k(x/y): symmetric homogeneous mean between min and max.
double scalar_mean(const MetricKernel& k, double x, double y);

// ── Integral representation (probability measure on [0,1]) ──────────────────
struct DiscreteMeasure {
  std::vector<std::pair<double, double>> atoms;  // (nu_i, weight_i)

  explicit DiscreteMeasure(std::vector<std::pair<double, double>> a);
};

// k(x) = sum_i w_i * extreme(nu_i)(x)
double integral_representation_eval(const DiscreteMeasure& m, double x);

// ── Sampled class-K property report ──────────────────────────────────────────
struct ClassKReport {
  double max_symmetry_residual = 0.0;   // |x k(x) - k(1/x)| rel., log grid
  double max_bound_violation = 0.0;     // against 2/(1+x) <= k <= (1+x)/2x
  double monotone_min_eig = 0.0;        // min eig of k(B)-k(A) over pairs A>=B
  int monotone_pairs = 0;
  double xk_near_zero = 0.0;            // x k(x) at x = 1e-6
  double k_near_inf = 0.0;              // k(x) at x = 1e6
  bool symmetry_ok = false;
  bool bounds_ok = false;
  bool monotone_ok = false;
  bool bounded_ok = false;
  bool passed() const { return symmetry_ok && bounds_ok && monotone_ok && bounded_ok; }
};

ClassKReport check_class_K(const MetricKernel& k, int monotone_pairs = 200,
                           std::uint64_t seed = 2024);

// Same checks applied to an arbitrary evaluator (used for non-member candidates).
ClassKReport check_class_K_fn(const std::function<double(double)>& k,
                              int monotone_pairs = 200, std::uint64_t seed = 2024);

// JSON descriptor: {"family": "...", "params": {...}}
nlohmann::json kernel_to_json(const MetricKernel& k);
MetricKernel kernel_from_json(const nlohmann::json& j);

// All single-parameter families with their admissible intervals (CLI listing).
struct FamilyInfo {
  std::string name;
  std::vector<std::pair<std::string, std::pair<double, double>>> params;
};
std::vector<FamilyInfo> family_catalog();

}  // namespace kplus
