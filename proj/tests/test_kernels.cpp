#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "kplus/kernels.hpp"

using namespace kplus;

namespace {

std::vector<double> log_grid() {
  std::vector<double> g;
  for (int i = 0; i < 81; ++i) g.push_back(std::pow(10.0, -6.0 + 12.0 * i / 80.0));
  return g;
}

std::vector<MetricKernel> catalog_samples() {
  return {make_extreme(0.0),        make_extreme(0.37),
          make_extreme(1.0),        make_heinz(0.0),
          make_heinz(0.31),         make_heinz(0.5),
          make_binomial(-1.0),      make_binomial(-0.4),
          make_binomial(0.0),       make_binomial(0.7),
          make_power_difference(-1.0), make_power_difference(0.0),
          make_power_difference(0.6),  make_power_difference(1.0),
          make_power_difference(2.0),  make_wyd(-1.0),
          make_wyd(0.0),            make_wyd(0.5),
          make_wyd(1.0),            make_wyd(1.7),
          make_stolarsky(-2.0),     make_stolarsky(-0.3),
          make_stolarsky(1.0),      make_stolarsky(2.0),
          make_stolarsky_dual(-2.0), make_stolarsky_dual(0.8),
          make_convex_combo(0.25, 0.4), make_geometric_bridge(1.0, 0.5, 0.3),
          make_hansen_bridge(0.2),  make_sinh_bridge(0.0),
          make_sinh_bridge(1.3),    make_heron(0.5, 0.5),
          make_mixture({{0.3, make_heinz(0.2)}, {0.7, make_extreme(0.9)}})};
}

constexpr double kE = 2.718281828459045235;

}  // namespace

TEST_CASE("catalog values at specific points") {
  CHECK(make_extreme(1.0).eval(3.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(make_extreme(0.0).eval(2.0) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(make_heinz(0.0).eval(4.0) == doctest::Approx(0.4).epsilon(1e-14));
  // log x / (x-1) at x = e
  CHECK(make_wyd(1.0).eval(kE) == doctest::Approx(1.0 / (kE - 1.0)).epsilon(1e-13));
  CHECK(make_wyd(1.0).eval(kE) == doctest::Approx(0.581976706869).epsilon(1e-10));
  // every kernel is normalized at 1
  for (const auto& k : catalog_samples()) CHECK(k.eval(1.0) == 1.0);
}

TEST_CASE("Table 1 crossing points") {
  const auto grid = log_grid();
  const auto close = [&](const MetricKernel& a, const MetricKernel& b) {
    for (double x : grid) {
      const double va = a.eval(x), vb = b.eval(x);
      REQUIRE(std::abs(va - vb) <= 1e-10 * std::max({1.0, va, vb}));
    }
  };
  close(make_binomial(0.5), make_wyd(0.5));
  close(make_binomial(0.5), make_stolarsky(0.5));
  close(make_power_difference(1.0), make_wyd(1.0));
  close(make_power_difference(1.0), make_stolarsky(0.0));
  // the common fixed point x^{-1/2}
  for (const auto& k : {make_binomial(0.0), make_power_difference(0.5),
                        make_stolarsky(-1.0), make_heinz(0.5)})
    for (double x : grid)
      CHECK(k.eval(x) == doctest::Approx(1.0 / std::sqrt(x)).epsilon(1e-12));
  // the smallest element 2/(1+x)
  for (const auto& k : {make_binomial(1.0), make_power_difference(2.0),
                        make_stolarsky(2.0), make_heinz(0.0), make_extreme(1.0)})
    for (double x : grid)
      CHECK(k.eval(x) == doctest::Approx(2.0 / (1.0 + x)).epsilon(1e-12));
}

TEST_CASE("normalization, symmetry and genpword bounds on the log grid") {
  const auto grid = log_grid();
  for (const auto& k : catalog_samples()) {
    for (double x : grid) {
      const double kx = k.eval(x);
      CHECK(kx > 0);
      const double kinv = k.eval(1.0 / x);
      CHECK(std::abs(x * kx - kinv) <= 1e-10 * std::abs(kinv));
      const double lo = 2.0 / (1.0 + x), hi = (1.0 + x) / (2.0 * x);
      CHECK(kx >= lo * (1.0 - 1e-12));
      CHECK(kx <= hi * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("k'(1) = -1/2 across all families (limit handling near x = 1)") {
  const double u = 1e-6;
  for (const auto& k : catalog_samples()) {
    const double slope = (k.eval(1.0 + u) - 1.0) / u;
    CHECK(slope == doctest::Approx(-0.5).epsilon(2e-5));
    const double slope_m = (k.eval(1.0 - u) - 1.0) / (-u);
    CHECK(slope_m == doctest::Approx(-0.5).epsilon(2e-5));
  }
}

TEST_CASE("double evaluation matches long-double evaluation near x = 1") {
  for (const auto& k : catalog_samples()) {
    for (double x : {1.0 + 1e-3, 1.0 - 1e-3, 1.0 + 3e-5, 1.0 - 3e-5, 1.0 + 1e-9}) {
      const double v = k.eval(x);
      const double vld = static_cast<double>(k.eval_ld((long double)x));
      CHECK(v == doctest::Approx(vld).epsilon(1e-11));
    }
  }
}

TEST_CASE("parameter intervals are enforced with named bounds") {
  CHECK_THROWS_WITH_AS(make_heinz(1.5),
                       doctest::Contains("alpha must lie in [0, 1]"),
                       std::domain_error);
  CHECK_THROWS_AS(make_extreme(-0.1), std::domain_error);
  CHECK_THROWS_AS(make_binomial(1.01), std::domain_error);
  CHECK_THROWS_AS(make_power_difference(2.3), std::domain_error);
  CHECK_THROWS_AS(make_wyd(-1.2), std::domain_error);
  CHECK_THROWS_AS(make_stolarsky(2.2), std::domain_error);
  CHECK_THROWS_AS(make_sinh_bridge(-0.2), std::domain_error);
  CHECK_THROWS_AS(make_convex_combo(0.5, 1.2), std::domain_error);
  CHECK_THROWS_AS(make_kernel("nosuch", {}), std::domain_error);
  CHECK_THROWS_AS(make_extreme(0.5).eval(-1.0), std::domain_error);
  CHECK_THROWS_AS(make_extreme(0.5).eval(0.0), std::domain_error);
}

TEST_CASE("dual: closed-form mappings and involution") {
  const auto grid = log_grid();
  // dual(extreme(1)) = (1+x)/2x = extreme(0)
  const MetricKernel d1 = dual(make_extreme(1.0));
  for (double x : grid)
    CHECK(d1.eval(x) == doctest::Approx((1.0 + x) / (2.0 * x)).epsilon(1e-12));
  // binomial: alpha -> -alpha; power difference: alpha -> 1-alpha
  for (double x : grid) {
    CHECK(dual(make_binomial(0.6)).eval(x) ==
          doctest::Approx(make_binomial(-0.6).eval(x)).epsilon(1e-12));
    CHECK(dual(make_power_difference(0.3)).eval(x) ==
          doctest::Approx(make_power_difference(0.7).eval(x)).epsilon(1e-12));
  }
  for (const auto& k : catalog_samples()) {
    const MetricKernel dd = dual(dual(k));
    for (double x : {0.001, 0.1, 0.9, 3.7, 1234.5}) {
      CHECK(dd.eval(x) == doctest::Approx(k.eval(x)).epsilon(1e-12));
      // definition k^hat(x) = 1/k(1/x)
      CHECK(dual(k).eval(x) == doctest::Approx(1.0 / k.eval(1.0 / x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("derived views") {
  for (const auto& k : catalog_samples())
    CHECK(derived_eval(k, DerivedView::g, 1.0) == doctest::Approx(0.0));
  CHECK(derived_eval(make_extreme(1.0), DerivedView::f, 3.0) == doctest::Approx(2.0));
  // weighted view of 2/(1+x) is 1/cosh(t/2)
  for (double t : {0.0, 0.7, -2.5, 11.0}) {
    const double got =
        derived_eval(make_extreme(1.0), DerivedView::weighted, std::exp(t));
    CHECK(got == doctest::Approx(1.0 / std::cosh(t / 2)).epsilon(1e-12));
  }
  CHECK(derived_eval(make_extreme(1.0), DerivedView::weighted, 1.0) ==
        doctest::Approx(1.0));
  CHECK_THROWS_AS(derived_eval(make_heinz(0.3), DerivedView::f, -2.0),
                  std::domain_error);
}

TEST_CASE("scalar mean: values and mean axioms") {
  const MetricKernel arith = make_extreme(1.0);
  CHECK(scalar_mean(arith, 1.0, 3.0) == doctest::Approx(2.0));
  const MetricKernel geom = make_heinz(0.5);
  CHECK(scalar_mean(geom, 4.0, 9.0) == doctest::Approx(6.0));
  for (const auto& k : catalog_samples()) {
    CHECK(scalar_mean(k, 3.7, 3.7) == doctest::Approx(3.7));
    for (auto [x, y] : {std::pair{0.3, 2.0}, {1.0, 9.0}, {5.5, 0.01}}) {
      const double m = scalar_mean(k, x, y);
      CHECK(m == doctest::Approx(scalar_mean(k, y, x)).epsilon(1e-12));  // symmetric
      CHECK(m >= std::min(x, y) * (1 - 1e-12));
      CHECK(m <= std::max(x, y) * (1 + 1e-12));
      const double t = 2.31;
      CHECK(scalar_mean(k, t * x, t * y) == doctest::Approx(t * m).epsilon(1e-12));
      // monotone in each argument (finite differences, step 1e-4)
      CHECK(scalar_mean(k, x + 1e-4, y) >= m - 1e-8);
      CHECK(scalar_mean(k, x, y + 1e-4) >= m - 1e-8);
    }
  }
  CHECK_THROWS_AS(scalar_mean(make_heinz(0.2), -1.0, 2.0), std::domain_error);
}

TEST_CASE("integral representation over extreme kernels") {
  const DiscreteMeasure delta1({{1.0, 1.0}});
  for (double x : {0.2, 1.0, 7.0})
    CHECK(integral_representation_eval(delta1, x) ==
          doctest::Approx(2.0 / (1.0 + x)).epsilon(1e-14));

  const DiscreteMeasure half({{0.0, 0.5}, {1.0, 0.5}});
  CHECK(integral_representation_eval(half, 1.0) == doctest::Approx(1.0));

  // (1-lambda) delta_1 + lambda delta_nu reproduces the convex combination
  const double nu = 0.3, lam = 0.45;
  const DiscreteMeasure mix({{1.0, 1.0 - lam}, {nu, lam}});
  const MetricKernel cc = make_convex_combo(nu, lam);
  for (double x : log_grid())
    CHECK(integral_representation_eval(mix, x) ==
          doctest::Approx(cc.eval(x)).epsilon(1e-12));
  // results stay within the genpword envelope
  for (double x : {0.01, 0.5, 2.0, 50.0}) {
    const double v = integral_representation_eval(half, x);
    CHECK(v >= 2.0 / (1.0 + x) - 1e-14);
    CHECK(v <= (1.0 + x) / (2.0 * x) + 1e-14);
  }

  CHECK_THROWS_AS(DiscreteMeasure({{0.5, 0.7}}), std::domain_error);   // mass != 1
  CHECK_THROWS_AS(DiscreteMeasure({{1.2, 1.0}}), std::domain_error);   // nu > 1
  CHECK_THROWS_AS(integral_representation_eval(delta1, 0.0), std::domain_error);
}

TEST_CASE("check_class_K: members pass, x^-2 fails the symmetry check") {
  for (const auto& k : {make_extreme(0.3), make_wyd(1.7), make_stolarsky(-2.0)}) {
    const ClassKReport rep = check_class_K(k, 200, 13);
    CHECK(rep.passed());
    CHECK(rep.max_symmetry_residual <= 1e-10);
    CHECK(rep.monotone_min_eig >= -1e-8);
    CHECK(rep.monotone_pairs == 200);
  }
  const ClassKReport bad =
      check_class_K_fn([](double x) { return 1.0 / (x * x); }, 10, 13);
  CHECK_FALSE(bad.symmetry_ok);
  CHECK_FALSE(bad.passed());
}

TEST_CASE("mixture validation") {
  CHECK_THROWS_AS(make_mixture({}), std::domain_error);
  CHECK_THROWS_AS(make_mixture({{0.5, make_heinz(0.1)}}), std::domain_error);
  const MetricKernel m =
      make_mixture({{0.25, make_extreme(0.0)}, {0.75, make_extreme(1.0)}});
  for (double x : {0.5, 2.0})
    CHECK(m.eval(x) == doctest::Approx(0.25 * make_extreme(0.0).eval(x) +
                                       0.75 * make_extreme(1.0).eval(x)));
}

TEST_CASE("JSON descriptors round-trip") {
  for (const auto& k : catalog_samples()) {
    const MetricKernel back = kernel_from_json(kernel_to_json(k));
    for (double x : {0.05, 0.9, 17.0})
      CHECK(back.eval(x) == doctest::Approx(k.eval(x)).epsilon(1e-14));
  }
  const auto j = nlohmann::json::parse(R"({"family":"heinz","params":{"alpha":0.5}})");
  CHECK(kernel_from_json(j).eval(4.0) == doctest::Approx(0.5));
  CHECK_THROWS(kernel_from_json(nlohmann::json::parse(R"({"family":"heinz"})")));
}

TEST_CASE("evaluation is stable at extreme arguments") {
  for (const auto& k : catalog_samples()) {
    for (double t : {-320.0, -80.0, 80.0, 320.0}) {
      const long double x = std::exp((long double)t);
      const long double v = k.eval_ld(x);
      CHECK(std::isfinite((double)v));
      CHECK(v > 0.0L);
      // genpword envelope in log space
      const long double lo = 2.0L / (1.0L + x);
      CHECK(v >= lo * 0.999999L);
    }
  }
}
