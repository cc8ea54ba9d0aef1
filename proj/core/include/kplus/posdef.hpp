#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "kplus/kernels.hpp"

namespace kplus {

// ── Three-valued positive-definiteness verdicts ──────────────────────────────
//
// Positive definiteness of an even real function cannot be decided from
// finitely many samples, so the engine certifies refutations exactly (every
// refutation carries a re-checkable witness) and certifies positives only up
// to a quantified quadrature-tail and roundoff budget.

enum class Verdict { positive_definite, not_positive_definite, inconclusive };
enum class PdMethod { gram, fourier, closed_form, unbounded };

const char* verdict_name(Verdict v);
const char* method_name(PdMethod m);

struct PosDefDetail {
  std::string note;
  double worst_point = 0.0;   // frequency (fourier) or time point (gram/unbounded)
  double worst_value = 0.0;   // transform value / Gram eigenvalue / h(t)
  double tail_bound = 0.0;    // truncation-tail part of the error budget
  double floor = 0.0;         // roundoff part of the error budget
  double scale = 0.0;         // max |h-hat| over the scanned grid
  double offset = 0.0;        // subtracted limit h(inf), when detected
  double window = 0.0;        // half-width actually used
  std::vector<double> witness_points;  // Gram witness point set
  double witness_min_eig = 0.0;
  bool gram_cross_checked = false;
  bool gram_agrees = false;
};

struct PosDefVerdict {
  Verdict verdict = Verdict::inconclusive;
  // min Fourier value (or Gram eigenvalue) over the scan, normalized by the
  // transform scale; clamped to 0 for certified-positive results
  double margin = 0.0;
  PdMethod method = PdMethod::fourier;
  PosDefDetail detail;
};

nlohmann::json verdict_to_json(const PosDefVerdict& v);

struct TestConfig {
  int gram_size = 24;
  int gram_trials = 200;
  double point_scale = 40.0;       // Gram points drawn from [-scale, scale]
  double fourier_halfwidth = 80.0; // T; doubled up to 320 on slow decay
  int fourier_samples = 16384;     // nodes on [0, T]
  double tolerance = 1e-9;         // relative to the transform scale
};

// Even real test functions are evaluated in long double: near decision
// boundaries the transform minima sit 15+ digits below the peak, which plain
// double quadrature cannot resolve.
using RealFn = std::function<long double(long double)>;

// Windowed cosine transform 2 int_0^T h(t) cos(s t) dt on the engine's
// trapezoid grid (diagnostics and floor validation).
double windowed_cosine_transform(const RealFn& h, double halfwidth, int samples,
                                 double s);

// Random Gram matrices [h(t_i - t_j)]: refutation-only (finite sampling never
// certifies positivity).  Point sets mix uniform draws with geometric
// progressions of ratio 1.5.
PosDefVerdict gram_test(const RealFn& h, const TestConfig& cfg,
                        std::uint64_t seed = 1);

// Windowed cosine transform with explicit tail and roundoff budgets; also
// detects unbounded growth, constant offsets h(inf) > 0, and falls back to a
// Kolmogorov-density certificate for strictly positive slowly-decaying h.
PosDefVerdict fourier_test(const RealFn& h, const TestConfig& cfg);

// K+ membership test: positive definiteness of h(t) = e^{t/2} k(e^t).
// Fourier-based, with a Gram cross-check recorded on refutations.
PosDefVerdict cp_test(const MetricKernel& k, const TestConfig& cfg);

enum class MembershipClass { k_plus_only, k_minus_only, both, neither, inconclusive };

const char* membership_class_name(MembershipClass c);

struct MembershipResult {
  PosDefVerdict plus;   // cp_test(k)
  PosDefVerdict minus;  // cp_test(dual(k))
  MembershipClass classification = MembershipClass::inconclusive;
};

MembershipResult membership(const MetricKernel& k, const TestConfig& cfg);

// k1 <= k2 in the kernel order iff k1(e^t)/k2(e^t) is positive definite.
PosDefVerdict order_test(const MetricKernel& k1, const MetricKernel& k2,
                         const TestConfig& cfg);

// Tests h^r for each exponent; one refutation disproves infinite
// divisibility, all-positive is evidence only.
std::vector<PosDefVerdict> infdiv_test(const RealFn& h,
                                       const std::vector<double>& powers,
                                       const TestConfig& cfg);

// ── Critical-parameter bisection ─────────────────────────────────────────────
//
// Assumes membership is monotone over [lo, hi] (caller asserts this; the
// Hansen bridge needs an explicit override since its monotonicity is open).
// Inconclusive midpoints never move the certified bracket; the search retries
// them with tightened tolerance, then probes off-center points.
struct CriticalBracket {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> inconclusive_points;
  double midpoint() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
};

CriticalBracket critical_search(const std::function<MetricKernel(double)>& family,
                                double lo, double hi, const TestConfig& cfg,
                                double target_width = 1e-3);

}  // namespace kplus
