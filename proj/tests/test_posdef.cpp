#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "kplus/closed_forms.hpp"
#include "kplus/posdef.hpp"
#include "kplus/quadrature.hpp"
#include "kplus/superop.hpp"

using namespace kplus;

namespace {

const TestConfig kCfg;

RealFn cp_profile(const MetricKernel& k) {
  return [k](long double t) -> long double {
    return std::exp(t / 2.0L) * k.eval_ld(std::exp(t));
  };
}

}  // namespace

TEST_CASE("TestConfig defaults") {
  CHECK(kCfg.gram_size == 24);
  CHECK(kCfg.gram_trials == 200);
  CHECK(kCfg.point_scale == 40.0);
  CHECK(kCfg.fourier_halfwidth == 80.0);
  CHECK(kCfg.fourier_samples == 16384);
  CHECK(kCfg.tolerance == 1e-9);
}

TEST_CASE("gram_test: cos t finds no violation, cosh-beta and sinh ratios do") {
  const PosDefVerdict ok = gram_test([](long double t) { return std::cos(t); }, kCfg);
  CHECK(ok.verdict == Verdict::inconclusive);  // never certifies
  CHECK(ok.margin >= -1e-9);

  const PosDefVerdict bad = gram_test(
      [](long double t) { return 1.0L / (std::cosh(t) + 2.0L); }, kCfg);
  CHECK(bad.verdict == Verdict::not_positive_definite);
  CHECK_FALSE(bad.detail.witness_points.empty());

  const PosDefVerdict ratio = gram_test(
      [](long double t) -> long double {
        if (t == 0.0L) return 0.6L;
        const long double sh = std::sinh(t);
        return std::sinh(1.2L * t) * std::sinh(0.5L * t) / (sh * sh);
      },
      kCfg);
  CHECK(ratio.verdict == Verdict::not_positive_definite);

  CHECK_THROWS_AS(gram_test([](long double) { return -1.0L; }, kCfg),
                  std::domain_error);
}

TEST_CASE("gram witness can be re-evaluated independently") {
  const RealFn h = [](long double t) { return 1.0L / (std::cosh(t) + 2.0L); };
  const PosDefVerdict v = gram_test(h, kCfg);
  REQUIRE(v.verdict == Verdict::not_positive_definite);
  const auto& pts = v.detail.witness_points;
  Eigen::MatrixXd gram(pts.size(), pts.size());
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = 0; j < pts.size(); ++j)
      gram(i, j) = static_cast<double>(h((long double)(pts[i] - pts[j])));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues()(0) < 0.0);
  CHECK(es.eigenvalues()(0) == doctest::Approx(v.detail.witness_min_eig).epsilon(1e-8));
}

TEST_CASE("windowed transform reproduces 2pi/cosh(pi s) at the error floor") {
  const RealFn sech_half = [](long double t) { return 1.0L / std::cosh(t / 2); };
  double worst_small = 0, worst_large = 0;
  for (double s = 0.0; s <= 12.0; s += 0.25) {
    const double got = windowed_cosine_transform(sech_half, 80.0, 16384, s);
    const double exact = 2 * M_PI / std::cosh(M_PI * s);
    const double err = std::abs(got - exact);
    if (s <= 6.0)
      worst_small = std::max(worst_small, err);
    else
      worst_large = std::max(worst_large, err);
  }
  CHECK(worst_small <= 1e-8);
  // large-s values are ~1e-10..1e-17; the error stays at tail + roundoff floor
  CHECK(worst_large <= 1e-13);
  const double deep = std::abs(windowed_cosine_transform(sech_half, 80.0, 16384, 12.0) -
                               2 * M_PI / std::cosh(12 * M_PI));
  CHECK(deep <= 1e-16);  // floor claim: a few * eps_ld * integral(|h|)
}

TEST_CASE("fourier_test: positive-definite certificates") {
  const PosDefVerdict sech = fourier_test(
      [](long double t) { return 1.0L / std::cosh(t / 2); }, kCfg);
  CHECK(sech.verdict == Verdict::positive_definite);
  CHECK(sech.method == PdMethod::fourier);

  const PosDefVerdict ratio =
      fourier_test([](long double t) -> long double {
        if (t == 0.0L) return 0.7L;
        return std::sinh(0.7L * t) / std::sinh(t);
      }, kCfg);
  CHECK(ratio.verdict == Verdict::positive_definite);
}

TEST_CASE("fourier_test: unbounded short-circuit and refutations") {
  const PosDefVerdict grow =
      fourier_test([](long double t) { return std::cosh(t / 2); }, kCfg);
  CHECK(grow.verdict == Verdict::not_positive_definite);
  CHECK(grow.method == PdMethod::unbounded);

  const PosDefVerdict beta2 =
      fourier_test([](long double t) { return 1.0L / (std::cosh(t) + 2.0L); }, kCfg);
  CHECK(beta2.verdict == Verdict::not_positive_definite);
  CHECK(beta2.method == PdMethod::fourier);
  CHECK(beta2.margin < -kCfg.tolerance);
}

TEST_CASE("fourier refutation witness re-evaluates under adaptive quadrature") {
  const PosDefVerdict v =
      fourier_test([](long double t) { return 1.0L / (std::cosh(t) + 2.0L); }, kCfg);
  REQUIRE(v.verdict == Verdict::not_positive_definite);
  const double s_star = v.detail.worst_point;
  const double independent = fourier_cos_even(
      [](double t) { return 1.0 / (std::cosh(t) + 2.0); }, s_star);
  CHECK(independent < 0.0);
  CHECK(independent == doctest::Approx(v.detail.worst_value).epsilon(1e-6));
}

TEST_CASE("fourier_test rejects asymmetric input") {
  CHECK_THROWS_AS(fourier_test(
                      [](long double t) {
                        return std::exp(-(t - 0.1L) * (t - 0.1L));
                      },
                      kCfg),
                  std::domain_error);
}

TEST_CASE("cp_test classifies known members and non-members") {
  CHECK(cp_test(make_extreme(1.0), kCfg).verdict == Verdict::positive_definite);
  const PosDefVerdict mid = cp_test(make_extreme(0.5), kCfg);
  CHECK(mid.verdict == Verdict::not_positive_definite);
  CHECK(mid.detail.gram_cross_checked);

  CHECK(cp_test(make_wyd(0.75), kCfg).verdict == Verdict::positive_definite);
  CHECK(cp_test(make_wyd(1.2), kCfg).verdict == Verdict::not_positive_definite);

  // the unique two-sided point x^{-1/2}
  CHECK(cp_test(make_binomial(0.0), kCfg).verdict == Verdict::positive_definite);
  CHECK(cp_test(dual(make_binomial(0.0)), kCfg).verdict ==
        Verdict::positive_definite);
}

TEST_CASE("membership classification") {
  CHECK(membership(make_binomial(0.0), kCfg).classification == MembershipClass::both);
  CHECK(membership(make_stolarsky(-1.5), kCfg).classification ==
        MembershipClass::k_minus_only);
  CHECK(membership(make_wyd(1.2), kCfg).classification == MembershipClass::neither);
  CHECK(membership(make_heinz(0.25), kCfg).classification ==
        MembershipClass::k_plus_only);
}

TEST_CASE("order_test") {
  // reflexivity: the ratio is the constant 1
  const PosDefVerdict self = order_test(make_wyd(0.3), make_wyd(0.3), kCfg);
  CHECK(self.verdict == Verdict::positive_definite);
  CHECK(self.method == PdMethod::closed_form);

  CHECK(order_test(make_heinz(0.2), make_heinz(0.4), kCfg).verdict ==
        Verdict::positive_definite);
  CHECK(order_test(make_extreme(0.5), make_extreme(0.0), kCfg).verdict ==
        Verdict::not_positive_definite);
}

TEST_CASE("infdiv_test") {
  // 1/cosh t is infinitely divisible: all tested powers positive definite
  const RealFn sech_t = [](long double t) { return 1.0L / std::cosh(t); };
  for (const auto& v : infdiv_test(sech_t, {1.0, 0.5, 0.25, 0.125}, kCfg))
    CHECK(v.verdict == Verdict::positive_definite);

  // (cosh(t/2)(cosh t+2))^{-1} is positive definite but not infinitely
  // divisible: some small power must fail
  const RealFn mixed = [](long double t) {
    return 1.0L / (std::cosh(t / 2) * (std::cosh(t) + 2.0L));
  };
  const auto verdicts = infdiv_test(mixed, {1.0, 0.5, 0.25, 0.125}, kCfg);
  CHECK(verdicts[0].verdict == Verdict::positive_definite);
  bool some_refuted = false;
  for (const auto& v : verdicts)
    some_refuted = some_refuted || v.verdict == Verdict::not_positive_definite;
  CHECK(some_refuted);

  // (cosh^4(t/2)(cosh t+2)^2)^{-1}: k = 2m, infinitely divisible
  const RealFn divisible = [](long double t) {
    const long double c = std::cosh(t / 2);
    const long double b = std::cosh(t) + 2.0L;
    return 1.0L / (c * c * c * c * b * b);
  };
  for (const auto& v : infdiv_test(divisible, {1.0, 0.5, 0.25, 0.125}, kCfg))
    CHECK(v.verdict == Verdict::positive_definite);

  CHECK_THROWS_AS(infdiv_test([](long double t) { return std::cos(t); }, {0.5}, kCfg),
                  std::domain_error);
  CHECK_THROWS_AS(infdiv_test(sech_t, {1.5}, kCfg), std::domain_error);
}

TEST_CASE("slow-decay certificates go through the Kolmogorov density") {
  // heinz(0.49): e^{t/2} k(e^t) = 1/cosh(0.01 t) decays far too slowly for the
  // windowed transform; the log-density certificate still certifies it
  const PosDefVerdict v = cp_test(make_heinz(0.49), kCfg);
  CHECK(v.verdict == Verdict::positive_definite);
  CHECK(v.detail.note.find("kolmogorov") != std::string::npos);

  // same situation just above the bridge threshold at nu = 0: cosh^{0.2}(t/2)
  CHECK(cp_test(make_geometric_bridge(1.0, 0.0, 0.4), kCfg).verdict ==
        Verdict::positive_definite);
  CHECK(cp_test(make_geometric_bridge(1.0, 0.0, 0.6), kCfg).verdict ==
        Verdict::not_positive_definite);
}

TEST_CASE("heron combinations are never in K+") {
  for (double lam : {0.1, 0.5, 0.9}) {
    const PosDefVerdict v = cp_test(make_heron(0.5, lam), kCfg);
    CHECK(v.verdict == Verdict::not_positive_definite);
  }
}

TEST_CASE("fourier and gram never contradict on definite verdicts") {
  const std::vector<MetricKernel> kernels = {
      make_heinz(0.0),   make_heinz(0.25),     make_binomial(0.6),
      make_extreme(0.5), make_extreme(0.9),    make_wyd(1.2),
      make_wyd(0.3),     make_stolarsky(-1.5), make_sinh_bridge(0.8),
      make_power_difference(1.6),              make_stolarsky_dual(0.8),
      make_convex_combo(0.3, 0.3),             make_geometric_bridge(1.0, 0.5, 0.28),
      make_hansen_bridge(0.2),                 make_heron(0.3, 0.4),
      make_mixture({{0.4, make_heinz(0.2)}, {0.6, make_binomial(0.3)}})};
  for (const auto& k : kernels) {
    const RealFn h = cp_profile(k);
    const PosDefVerdict f = fourier_test(h, kCfg);
    const PosDefVerdict g = gram_test(h, kCfg);
    const bool f_pd = f.verdict == Verdict::positive_definite;
    const bool g_npd = g.verdict == Verdict::not_positive_definite;
    CHECK_FALSE((f_pd && g_npd));
    if (f.verdict == Verdict::not_positive_definite)
      CHECK(g.verdict != Verdict::positive_definite);  // gram never certifies
  }
}

TEST_CASE("K+ verdicts agree with Schur-kernel positivity over sampled spectra") {
  const std::vector<MetricKernel> members = {make_heinz(0.3), make_binomial(0.5),
                                             make_wyd(0.75), make_extreme(1.0)};
  for (const auto& k : members) {
    REQUIRE(cp_test(k, kCfg).verdict == Verdict::positive_definite);
    for (int trial = 0; trial < 20; ++trial) {
      const int d = 2 + trial % 7;  // up to 8
      const DensityMatrix rho = random_density(d, 4000 + trial);
      const SuperoperatorHandle h(k, rho);
      const double mineig =
          Eigen::SelfAdjointEigenSolver<RealMatrix>(h.schur_kernel(),
                                                    Eigen::EigenvaluesOnly)
              .eigenvalues()(0);
      CHECK(mineig >= -1e-9);
    }
  }
  // the congruence-equivalent kernel matrices have the same positivity verdict
  const DensityMatrix rho = random_density(5, 99);
  const SpectralDecomposition s = eigh(rho.base());
  for (const auto& k : {make_heinz(0.3), make_extreme(0.5)}) {
    RealMatrix phi(5, 5), alt1(5, 5), alt2(5, 5);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) {
        const double wi = s.eigenvalues(i), wj = s.eigenvalues(j);
        const double kv = k.eval(wi / wj);
        phi(i, j) = kv / wj;
        alt1(i, j) = wi * kv;
        alt2(i, j) = std::sqrt(wi / wj) * kv;
      }
    const auto mineig = [](const RealMatrix& m) {
      return Eigen::SelfAdjointEigenSolver<RealMatrix>(0.5 * (m + m.transpose()),
                                                       Eigen::EigenvaluesOnly)
          .eigenvalues()(0);
    };
    const bool p0 = mineig(phi) >= -1e-9;
    const bool p1 = mineig(alt1) >= -1e-9;
    const bool p2 = mineig(alt2) >= -1e-9;
    CHECK(p0 == p1);
    CHECK(p0 == p2);
  }
}

TEST_CASE("critical_search error handling") {
  const auto heinz_family = [](double a) { return make_heinz(a); };
  // both endpoints in K+: no crossing
  CHECK_THROWS_AS(critical_search(heinz_family, 0.1, 0.4, kCfg), std::domain_error);
  CHECK_THROWS_AS(critical_search(heinz_family, 0.4, 0.1, kCfg),
                  std::invalid_argument);
}

TEST_CASE("critical_search finds the sinh-bridge boundary at alpha = 1") {
  const CriticalBracket br = critical_search(
      [](double a) { return make_sinh_bridge(a); }, 0.5, 1.5, kCfg, 1e-3);
  CHECK(std::abs(br.midpoint() - 1.0) <= 5e-3);
}

TEST_CASE("verdict JSON serialization") {
  const PosDefVerdict v =
      fourier_test([](long double t) { return 1.0L / (std::cosh(t) + 2.0L); }, kCfg);
  const nlohmann::json j = verdict_to_json(v);
  CHECK(j.at("verdict") == "not_positive_definite");
  CHECK(j.at("margin").get<double>() < 0);
  CHECK(j.at("witness").is_object());
  CHECK(j.at("witness").at("worst_value").get<double>() < 0);
}
