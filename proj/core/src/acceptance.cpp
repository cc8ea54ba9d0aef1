#include "kplus/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "kplus/channels.hpp"
#include "kplus/closed_forms.hpp"
#include "kplus/posdef.hpp"
#include "kplus/quadrature.hpp"
#include "kplus/rng.hpp"
#include "kplus/superop.hpp"

namespace kplus {

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
  bool ok = true;
  std::ostringstream log;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      log << "FAIL: " << what << "; ";
    }
  }
  std::string str() const {
    const std::string s = log.str();
    return s.empty() ? "ok" : s;
  }
};

enum class Agreement { match, inconclusive_consistent, contradiction };

Agreement compare(TriBool expected, Verdict got) {
  if (got == Verdict::inconclusive || expected == TriBool::unknown)
    return Agreement::inconclusive_consistent;
  const bool got_yes = got == Verdict::positive_definite;
  return (got_yes == (expected == TriBool::yes)) ? Agreement::match
                                                 : Agreement::contradiction;
}

// ── 1. family membership tables ──────────────────────────────────────────────
CriterionResult criterion_families(bool inject_fault) {
  Check c;
  const TestConfig cfg;

  if (inject_fault) {
    // corrupted evaluator with the symmetry x k(x) = k(1/x) broken
    const MetricKernel base = make_heinz(0.25);
    const auto bad = [base](double x) {
      return base.eval(x) * (1.0 + 0.1 * std::tanh(std::log(x)));
    };
    const ClassKReport rep = check_class_K_fn(bad, 20, 7);
    c.expect(rep.symmetry_ok,
             "kernel symmetry invariant x*k(x) = k(1/x) violated (residual " +
                 std::to_string(rep.max_symmetry_residual) + ")");
  }

  struct Sample {
    MetricKernel k;
    std::string name;
  };
  std::vector<Sample> samples;
  for (double a : {0.0, 0.25, 0.5, 0.75, 1.0})
    samples.push_back({make_heinz(a), "heinz(" + std::to_string(a) + ")"});
  for (double a : {-1.0, -0.5, 0.0, 0.5, 1.0})
    samples.push_back({make_binomial(a), "binomial(" + std::to_string(a) + ")"});
  for (double a : {-1.0, 0.0, 0.5, 1.0, 2.0})
    samples.push_back(
        {make_power_difference(a), "power_difference(" + std::to_string(a) + ")"});
  for (double p : {-1.0, -0.75, -0.5, 0.0, 0.5, 1.0, 1.2, 1.5, 2.0})
    samples.push_back({make_wyd(p), "wyd(" + std::to_string(p) + ")"});
  for (double a : {-2.0, -1.5, -1.0, 0.0, 1.0, 2.0})
    samples.push_back({make_stolarsky(a), "stolarsky(" + std::to_string(a) + ")"});
  for (double a : {0.0, 0.5, 1.0, 1.5, 2.0})
    samples.push_back({make_sinh_bridge(a), "sinh_bridge(" + std::to_string(a) + ")"});

  int definite_matches = 0;
  for (const auto& s : samples) {
    const ClassKReport rep = check_class_K(s.k, 12, 11);
    c.expect(rep.passed(), s.name + " failed class-K invariants");

    const FamilyMembership expected = family_membership(s.k);
    const MembershipResult got = membership(s.k, cfg);
    const Agreement ap = compare(expected.in_K_plus, got.plus.verdict);
    const Agreement am = compare(expected.in_K_minus, got.minus.verdict);
    c.expect(ap != Agreement::contradiction,
             s.name + " K+ verdict contradicts the closed form");
    c.expect(am != Agreement::contradiction,
             s.name + " K- verdict contradicts the closed form");
    if (ap == Agreement::match && am == Agreement::match) ++definite_matches;
  }
  const double frac = double(definite_matches) / double(samples.size());
  c.expect(frac >= 0.90, "definite-match rate " + std::to_string(frac) + " < 0.90");
  c.log << "definite matches " << definite_matches << "/" << samples.size() << "; ";

  CriterionResult r{1, "family membership table", c.ok, c.str(), 0};
  return r;
}

// ── 2. convex-combination threshold ──────────────────────────────────────────
CriterionResult criterion_threshold() {
  Check c;
  const TestConfig cfg;
  for (double nu : {0.1, 0.25, 0.5, 0.75}) {
    const double expected = newext_threshold(nu);
    const auto family = [nu](double lam) { return make_convex_combo(nu, lam); };
    const CriticalBracket br = critical_search(family, 0.02, 0.98, cfg);
    const double err = std::abs(br.midpoint() - expected);
    c.expect(err <= 5e-3, "nu=" + std::to_string(nu) + ": |" +
                              std::to_string(br.midpoint()) + " - " +
                              std::to_string(expected) + "| = " +
                              std::to_string(err) + " > 5e-3");
    c.log << "nu=" << nu << ": lambda_c " << br.midpoint() << " (exact " << expected
          << "); ";
  }
  return {2, "convex-combination critical threshold", c.ok, c.str(), 0};
}

// ── 3. geometric-bridge bounds ───────────────────────────────────────────────
CriterionResult criterion_bridge() {
  Check c;
  const TestConfig cfg;
  for (double nu : {0.3, 0.5, 0.7}) {
    const auto family = [nu](double lam) {
      return make_geometric_bridge(1.0, nu, lam);
    };
    const CriticalBracket br = critical_search(family, 0.24, 0.345, cfg);
    // endpoints certified by the search: K+ at 0.24, outside K+ at 0.345
    c.expect(br.lo >= 0.23 && br.hi <= 0.345,
             "nu=" + std::to_string(nu) + ": bracket [" + std::to_string(br.lo) +
                 ", " + std::to_string(br.hi) + "] outside [0.23, 0.345]");
    c.log << "nu=" << nu << ": bracket [" << br.lo << ", " << br.hi << "]; ";
  }
  {
    const auto family = [](double lam) { return make_geometric_bridge(1.0, 0.0, lam); };
    const CriticalBracket br = critical_search(family, 0.40, 0.60, cfg);
    const double err = std::abs(br.midpoint() - 0.5);
    c.expect(err <= 5e-3, "nu=0: |lambda_c - 0.5| = " + std::to_string(err));
    c.log << "nu=0: lambda_c " << br.midpoint() << "; ";
  }
  return {3, "geometric-bridge critical bounds", c.ok, c.str(), 0};
}

// ── 4. closed-form Fourier transforms vs quadrature ─────────────────────────
CriterionResult criterion_fourier_forms() {
  Check c;
  const std::vector<std::pair<double, double>> params = {
      {-0.5, 2.0}, {0.0, 3.0}, {0.9, 1.5}};
  for (const auto& [alpha, beta] : params) {
    const HyperbolicParams hp(alpha, beta);
    double worst = 0, worst0 = 0;
    for (double s = -8.0; s <= 8.0 + 1e-9; s += 0.25) {
      const auto g = [alpha, beta](double t) {
        return 1.0 / ((std::cosh(t / 2) + alpha) * (std::cosh(t) + beta));
      };
      const double quad = fourier_cos_even(g, s) / (4 * M_PI);
      worst = std::max(worst, std::abs(ft_cosh_product(hp, s) - quad));
      const auto g0 = [beta](double t) {
        return 1.0 / (std::cosh(t / 2) * (std::cosh(t) + beta));
      };
      const double quad0 = fourier_cos_even(g0, s);
      worst0 = std::max(worst0, std::abs(ft_alpha_zero(beta, s) - quad0));
    }
    c.expect(worst <= 1e-7, "ft_cosh_product(alpha=" + std::to_string(alpha) +
                                ", beta=" + std::to_string(beta) +
                                ") max err " + std::to_string(worst));
    c.expect(worst0 <= 1e-7, "ft_alpha_zero(beta=" + std::to_string(beta) +
                                 ") max err " + std::to_string(worst0));
    c.log << "(a=" << alpha << ",b=" << beta << "): errs " << worst << "/" << worst0
          << "; ";
  }
  double worst = 0;
  for (double s = -8.0; s <= 8.0 + 1e-9; s += 0.25) {
    const double quad =
        fourier_cos_even([](double t) { return 1.0 / std::cosh(t / 2); }, s);
    const double exact = 2 * M_PI / std::cosh(M_PI * s);
    worst = std::max(worst, std::abs(quad - exact));
  }
  c.expect(worst <= 1e-8, "sech transform err " + std::to_string(worst));
  return {4, "closed-form Fourier transforms", c.ok, c.str(), 0};
}

// ── 5. hyperbolic predicates vs numerical engine ─────────────────────────────
CriterionResult criterion_predicates() {
  Check c;
  TestConfig cfg;

  struct PowerCase {
    int k, m;
    double beta;
    bool must_refute;
  };
  for (const PowerCase pc : {PowerCase{1, 1, 2.0, false}, PowerCase{2, 1, 2.0, false},
                              PowerCase{1, 2, 2.0, true}, PowerCase{2, 3, 1.5, false}}) {
    const PdPredicate pred = hyperbolic_pd_predicate(HyperbolicKind::cosh_power_product,
                                                     pc.k, pc.m, pc.beta);
    const RealFn h = [pc](long double t) -> long double {
      return 1.0L / (std::pow(std::cosh(t / 2), (long double)pc.k) *
                     std::pow(std::cosh(t) + (long double)pc.beta, (long double)pc.m));
    };
    const PosDefVerdict v = fourier_test(h, cfg);
    const Agreement a = compare(pred.pd ? TriBool::yes : TriBool::no, v.verdict);
    const std::string name = "cosh_power(k=" + std::to_string(pc.k) +
                             ",m=" + std::to_string(pc.m) + ")";
    c.expect(a != Agreement::contradiction, name + " contradicts the predicate");
    if (pc.must_refute)
      c.expect(v.verdict == Verdict::not_positive_definite,
               name + " must be a definite refutation");
  }

  struct RatioCase {
    double a, b;
    bool must_refute;
  };
  for (const RatioCase rc :
       {RatioCase{0.5, 0.7, false}, RatioCase{1.2, 0.5, true}, RatioCase{1.5, 0.6, false}}) {
    const PdPredicate pred =
        hyperbolic_pd_predicate(HyperbolicKind::sinh_ratio, rc.a, rc.b);
    const RealFn h = [rc](long double t) -> long double {
      if (t == 0.0L) return (long double)(rc.a * rc.b);
      const long double sh = std::sinh(t);
      return std::sinh(rc.a * t) * std::sinh(rc.b * t) / (sh * sh);
    };
    const PosDefVerdict v = fourier_test(h, cfg);
    const Agreement a = compare(pred.pd ? TriBool::yes : TriBool::no, v.verdict);
    const std::string name =
        "sinh_ratio(" + std::to_string(rc.a) + "," + std::to_string(rc.b) + ")";
    c.expect(a != Agreement::contradiction, name + " contradicts the predicate");
    if (rc.must_refute)
      c.expect(v.verdict == Verdict::not_positive_definite,
               name + " must be a definite refutation");
  }

  for (double beta : {0.5, 1.0, 2.0}) {
    const PdPredicate pred = hyperbolic_pd_predicate(HyperbolicKind::cosh_beta, beta);
    const RealFn h = [beta](long double t) -> long double {
      return 1.0L / (std::cosh(t) + (long double)beta);
    };
    const PosDefVerdict v = fourier_test(h, cfg);
    const Agreement a = compare(pred.pd ? TriBool::yes : TriBool::no, v.verdict);
    c.expect(a != Agreement::contradiction,
             "cosh_beta(" + std::to_string(beta) + ") contradicts the predicate");
    if (beta == 2.0)
      c.expect(v.verdict == Verdict::not_positive_definite,
               "cosh_beta(2) must be a definite refutation");
  }
  return {5, "hyperbolic predicates vs engine", c.ok, c.str(), 0};
}

MetricKernel sample_kernel(Rng& rng) {
  switch (rng.below(8)) {
    case 0: return make_extreme(rng.uniform());
    case 1: return make_heinz(rng.uniform());
    case 2: return make_binomial(rng.uniform(-1, 1));
    case 3: return make_power_difference(rng.uniform(-1, 2));
    case 4: return make_wyd(rng.uniform(-1, 2));
    case 5: return make_stolarsky(rng.uniform(-2, 2));
    case 6: return make_sinh_bridge(rng.uniform(0, 2));
    default: return make_convex_combo(rng.uniform(), rng.uniform());
  }
}

// ── 6. superoperator identities ──────────────────────────────────────────────
CriterionResult criterion_superop(std::uint64_t seed) {
  Check c;
  Rng rng(seed, 6);
  double worst_rt = 0, worst_dual = 0, worst_herm = 0, worst_metric = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + static_cast<int>(rng.below(5));  // up to 6
    const MetricKernel k = sample_kernel(rng);
    const DensityMatrix rho = random_density(d, rng.next_u64());
    const HermitianMatrix x = random_traceless(d, rng.next_u64());
    const SuperoperatorHandle h(k, rho);

    const HermitianMatrix y = h.apply_omega_inverse(x);
    const Matrix rt = h.apply_omega(y).mat() - x.mat();
    worst_rt = std::max(worst_rt, rt.norm() / x.mat().norm());

    const Matrix dinv = matrix_function(rho.base(), [](double t) { return 1.0 / t; });
    const SuperoperatorHandle hd(dual(k), HermitianMatrix(dinv));
    const Matrix viadual = hd.apply_omega(x).mat() - y.mat();
    worst_dual = std::max(worst_dual, viadual.norm() / y.mat().norm());

    const Matrix ox = h.apply_omega(x).mat();
    worst_herm = std::max(worst_herm, (ox - ox.adjoint()).cwiseAbs().maxCoeff());

    const Complex q = metric(k, rho, x, x);
    worst_metric = std::min(worst_metric, q.real());
    worst_herm = std::max(worst_herm, std::abs(q.imag()));
  }
  c.expect(worst_rt <= 1e-10, "round-trip residual " + std::to_string(worst_rt));
  c.expect(worst_dual <= 1e-10, "duality residual " + std::to_string(worst_dual));
  c.expect(worst_herm <= 1e-12, "hermiticity residual " + std::to_string(worst_herm));
  c.expect(worst_metric >= -1e-12, "metric positivity " + std::to_string(worst_metric));
  std::ostringstream os;
  os << "round-trip " << worst_rt << ", duality " << worst_dual << ", herm "
     << worst_herm << ", min metric " << worst_metric;
  return {6, "superoperator identities", c.ok, c.ok ? os.str() : c.str(), 0};
}

DensityMatrix conditioned_density(int d, double cond, std::uint64_t seed) {
  RealVector lam(d);
  for (int i = 0; i < d; ++i)
    lam(i) = std::pow(cond, double(i) / std::max(1, d - 1));
  const Matrix u = random_unitary(d, seed);
  Matrix m = u * lam.asDiagonal() * u.adjoint();
  m /= m.trace().real();
  return DensityMatrix(0.5 * (m + m.adjoint()));
}

// ── 7. BKM cross-validation ──────────────────────────────────────────────────
CriterionResult criterion_bkm(std::uint64_t seed) {
  Check c;
  Rng rng(seed, 7);
  const MetricKernel bkm_kernel = make_wyd(1.0);  // log x/(x-1)
  double worst_fwd = 0, worst_inv = 0, worst_rt = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + static_cast<int>(rng.below(5));
    const double cond = std::pow(10.0, rng.uniform(0.5, 4.0));
    const DensityMatrix rho = conditioned_density(d, cond, rng.next_u64());
    const HermitianMatrix x = random_traceless(d, rng.next_u64());
    const SuperoperatorHandle h(bkm_kernel, rho);

    const Matrix fwd = bkm_quadrature(BkmDirection::forward, rho, x).mat();
    const Matrix via_schur = h.apply_omega(x).mat();
    worst_fwd = std::max(worst_fwd, (fwd - via_schur).norm() / via_schur.norm());

    const Matrix inv = bkm_quadrature(BkmDirection::inverse, rho, x).mat();
    const Matrix via_schur_inv = h.apply_omega_inverse(x).mat();
    worst_inv =
        std::max(worst_inv, (inv - via_schur_inv).norm() / via_schur_inv.norm());

    const Matrix rt =
        bkm_quadrature(BkmDirection::forward, rho, HermitianMatrix(inv)).mat();
    worst_rt = std::max(worst_rt, (rt - x.mat()).norm() / x.mat().norm());
  }
  c.expect(worst_fwd <= 1e-6, "forward vs Schur " + std::to_string(worst_fwd));
  c.expect(worst_inv <= 1e-6, "inverse vs Schur " + std::to_string(worst_inv));
  c.expect(worst_rt <= 1e-6, "forward(inverse) round-trip " + std::to_string(worst_rt));
  std::ostringstream os;
  os << "fwd " << worst_fwd << ", inv " << worst_inv << ", round-trip " << worst_rt;
  return {7, "BKM quadrature cross-validation", c.ok, c.ok ? os.str() : c.str(), 0};
}

// ── 8. metric monotonicity under CPT maps ────────────────────────────────────
CriterionResult criterion_monotonicity(std::uint64_t seed) {
  Check c;
  Rng rng(seed, 8);
  const std::vector<MetricKernel> kernels = {
      make_extreme(0.4), make_heinz(0.25), make_binomial(-0.5),
      make_power_difference(1.3), make_wyd(1.7)};
  int violations = 0;
  double worst_excess = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = 2 + static_cast<int>(rng.below(3));  // 2..4
    const QuantumChannel phi =
        random_channel(d, 1 + static_cast<int>(rng.below(3)), rng.next_u64());
    const DensityMatrix rho = random_density(d, rng.next_u64());
    const HermitianMatrix x = random_traceless(d, rng.next_u64());
    const MetricKernel& k = kernels[trial % kernels.size()];
    const ContractionAudit audit = contraction_audit(k, phi, rho, x);
    if (!audit.ok) {
      ++violations;
      worst_excess = std::max(worst_excess, (audit.lhs - audit.rhs) / audit.rhs);
    }
  }
  c.expect(violations == 0, std::to_string(violations) +
                                " monotonicity violations (worst excess " +
                                std::to_string(worst_excess) + ")");
  return {8, "metric monotonicity under CPT maps", c.ok,
          c.ok ? "0 violations in 1000 audits" : c.str(), 0};
}

// ── 9. contraction coefficients ──────────────────────────────────────────────
CriterionResult criterion_contraction(std::uint64_t seed) {
  Check c;
  const int d = 3;
  const MetricKernel root = make_binomial(0.0);  // x^{-1/2}
  const MetricKernel heinz0 = make_heinz(0.0), heinz14 = make_heinz(0.25);

  {
    const QuantumChannel id = QuantumChannel::identity(d);
    const EtaEstimates e = eta_estimates(root, id, 10, seed);
    c.expect(std::abs(e.riem_sup - 1) <= 1e-8, "identity riem " + std::to_string(e.riem_sup));
    c.expect(std::abs(e.dob_lower - 1) <= 1e-8, "identity dob " + std::to_string(e.dob_lower));
    c.expect(std::abs(e.relent_lower - 1) <= 1e-8,
             "identity relent " + std::to_string(e.relent_lower));
  }
  {
    const QuantumChannel dep = QuantumChannel::depolarizing(d);
    const EtaEstimates e = eta_estimates(root, dep, 10, seed);
    c.expect(std::abs(e.riem_sup) <= 1e-8, "depolarizing riem " + std::to_string(e.riem_sup));
    c.expect(std::abs(e.dob_lower) <= 1e-8, "depolarizing dob " + std::to_string(e.dob_lower));
    c.expect(std::abs(e.relent_lower) <= 1e-8,
             "depolarizing relent " + std::to_string(e.relent_lower));
  }

  Rng rng(seed, 9);
  for (int i = 0; i < 20; ++i) {
    const QuantumChannel phi =
        random_channel(d, 2 + static_cast<int>(rng.below(3)), rng.next_u64());
    const EtaEstimates e_root = eta_estimates(root, phi, 12, rng.next_u64());
    const EtaEstimates e_h0 = eta_estimates(heinz0, phi, 12, rng.next_u64());
    const EtaEstimates e_h14 = eta_estimates(heinz14, phi, 12, rng.next_u64());
    const double riem_heinz = std::max({e_h0.riem_sup, e_h14.riem_sup, e_root.riem_sup});
    c.expect(e_root.riem_sup <= 1 + 1e-8,
             "riem > 1: " + std::to_string(e_root.riem_sup));
    c.expect(e_root.relent_lower <= e_root.dob_lower + 2e-2,
             "relent " + std::to_string(e_root.relent_lower) + " > dob " +
                 std::to_string(e_root.dob_lower) + " + 2e-2");
    c.expect(e_root.dob_lower <= std::sqrt(riem_heinz) + 2e-2,
             "dob " + std::to_string(e_root.dob_lower) + " > sqrt(riem " +
                 std::to_string(riem_heinz) + ") + 2e-2");
  }
  return {9, "contraction coefficients", c.ok, c.str(), 0};
}

// ── 10. the kernel order ─────────────────────────────────────────────────────
CriterionResult criterion_order() {
  Check c;
  const TestConfig cfg;
  const MetricKernel smallest = make_extreme(1.0);   // 2/(1+x)
  const MetricKernel root = make_binomial(0.0);      // x^{-1/2}
  const MetricKernel largest = make_extreme(0.0);    // (1+x)/2x

  const auto positive_chain = [&](const MetricKernel& k1, const MetricKernel& k2,
                                  const std::string& name) {
    const PosDefVerdict v = order_test(k1, k2, cfg);
    c.expect(v.verdict != Verdict::not_positive_definite,
             name + " refuted but should hold");
    return v.verdict == Verdict::positive_definite;
  };

  c.expect(positive_chain(smallest, root, "2/(1+x) <= x^{-1/2}"),
           "2/(1+x) <= x^{-1/2} not definite");
  c.expect(positive_chain(root, largest, "x^{-1/2} <= (1+x)/2x"),
           "x^{-1/2} <= (1+x)/2x not definite");

  for (auto [a, b] : {std::pair{0.0, 0.2}, {0.2, 0.4}, {0.4, 0.5}})
    positive_chain(make_heinz(a), make_heinz(b), "heinz chain");
  // k_a^B <= k_b^B for b <= a (decreasing); k_a^PD <= k_b^PD for b <= a
  for (auto [a, b] : {std::pair{1.0, 0.0}, {0.5, -0.5}, {0.0, -1.0}})
    positive_chain(make_binomial(a), make_binomial(b), "binomial chain");
  for (auto [a, b] : {std::pair{0.0, -1.0}, {1.0, 0.5}, {2.0, 1.0}})
    positive_chain(make_power_difference(a), make_power_difference(b), "pd chain");

  const PosDefVerdict neg = order_test(make_extreme(0.5), largest, cfg);
  c.expect(neg.verdict == Verdict::not_positive_definite,
           "extreme(0.5) <= extreme(0) must be definitely refuted");
  const PosDefVerdict neg2 = order_test(smallest, dual(make_extreme(0.5)), cfg);
  c.expect(neg2.verdict == Verdict::not_positive_definite,
           "2/(1+x) <= dual(extreme(0.5)) must be definitely refuted");
  return {10, "kernel order relation", c.ok, c.str(), 0};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::string& suite,
                                            bool inject_fault, std::uint64_t seed) {
  std::vector<int> wanted;
  if (suite == "all")
    wanted = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  else if (suite == "kernels")
    wanted = {1, 6, 7, 10};
  else if (suite == "posdef")
    wanted = {2, 3, 5};
  else if (suite == "closed-forms")
    wanted = {4};
  else if (suite == "channels")
    wanted = {8, 9};
  else
    throw std::invalid_argument("unknown suite '" + suite + "'");

  std::vector<CriterionResult> out;
  for (int id : wanted) {
    const auto t0 = Clock::now();
    CriterionResult r;
    switch (id) {
      case 1: r = criterion_families(inject_fault); break;
      case 2: r = criterion_threshold(); break;
      case 3: r = criterion_bridge(); break;
      case 4: r = criterion_fourier_forms(); break;
      case 5: r = criterion_predicates(); break;
      case 6: r = criterion_superop(seed); break;
      case 7: r = criterion_bkm(seed); break;
      case 8: r = criterion_monotonicity(seed); break;
      case 9: r = criterion_contraction(seed); break;
      case 10: r = criterion_order(); break;
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    // stated runtime budgets
    if (id == 1 && r.seconds > 180) {
      r.pass = false;
      r.detail += "; runtime " + std::to_string(r.seconds) + "s > 180s";
    }
    if (id == 2 && r.seconds > 60) {
      r.pass = false;
      r.detail += "; runtime " + std::to_string(r.seconds) + "s > 60s";
    }
    out.push_back(std::move(r));
  }
  return out;
}

nlohmann::json acceptance_report(const std::vector<CriterionResult>& results) {
  nlohmann::json arr = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.pass;
    arr.push_back({{"id", r.id},
                   {"name", r.name},
                   {"pass", r.pass},
                   {"detail", r.detail},
                   {"seconds", r.seconds}});
  }
  return nlohmann::json{{"schema_version", 1}, {"pass", all}, {"criteria", arr}};
}

}  // namespace kplus
