#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "kplus/channels.hpp"
#include "kplus/rng.hpp"
#include "kplus/superop.hpp"

using namespace kplus;

namespace {

MetricKernel sample_kernel(Rng& rng) {
  switch (rng.below(6)) {
    case 0: return make_extreme(rng.uniform());
    case 1: return make_heinz(rng.uniform());
    case 2: return make_binomial(rng.uniform(-1, 1));
    case 3: return make_wyd(rng.uniform(-1, 2));
    case 4: return make_stolarsky(rng.uniform(-2, 2));
    default: return make_power_difference(rng.uniform(-1, 2));
  }
}

}  // namespace

TEST_CASE("schur kernel for D = diag(1,2), k = 2/(1+x)") {
  Matrix d(2, 2);
  d << 1, 0, 0, 2;
  const SuperoperatorHandle h(make_extreme(1.0), HermitianMatrix(d));
  // phi(l_i, l_j) = 2/(l_i + l_j)
  CHECK(h.schur_kernel()(0, 0) == doctest::Approx(1.0));
  CHECK(h.schur_kernel()(0, 1) == doctest::Approx(2.0 / 3.0));
  CHECK(h.schur_kernel()(1, 0) == doctest::Approx(2.0 / 3.0));
  CHECK(h.schur_kernel()(1, 1) == doctest::Approx(0.5));
}

TEST_CASE("schur kernel invariants: diagonal and transported symmetry") {
  Rng rng(31, 0);
  for (int trial = 0; trial < 25; ++trial) {
    const int d = 2 + trial % 5;
    const MetricKernel k = sample_kernel(rng);
    const DensityMatrix rho = random_density(d, 500 + trial);
    const SuperoperatorHandle h(k, rho);
    const auto& lam = h.spectral().eigenvalues;
    for (int i = 0; i < d; ++i) {
      CHECK(h.schur_kernel()(i, i) == doctest::Approx(1.0 / lam(i)).epsilon(1e-12));
      for (int j = 0; j < d; ++j) {
        // x k(x) = k(1/x) transported through phi(i,j) = k(l_i/l_j)/l_j makes
        // the Schur kernel symmetric
        const double lhs = h.schur_kernel()(i, j);
        const double rhs = h.schur_kernel()(j, i);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("omega at the identity base is the identity map") {
  for (const auto& k : {make_extreme(0.3), make_wyd(1.5), make_heinz(0.5)}) {
    const SuperoperatorHandle h(k, HermitianMatrix::identity(4));
    const HermitianMatrix x = random_traceless(4, 7);
    CHECK((h.apply_omega(x).mat() - x.mat()).norm() <= 1e-12);
    CHECK((h.apply_omega_inverse(x).mat() - x.mat()).norm() <= 1e-12);
  }
}

TEST_CASE("commuting case: omega is multiplication by D^{-1} for every k") {
  // D and X diagonal in the same basis
  const Matrix u = random_unitary(4, 11);
  RealVector dvals(4), xvals(4);
  dvals << 0.1, 0.3, 0.5, 1.3;
  xvals << 1.0, -2.0, 0.7, 0.2;
  const Matrix d = u * dvals.asDiagonal() * u.adjoint();
  const Matrix x = u * xvals.asDiagonal() * u.adjoint();
  RealVector inv = dvals.cwiseInverse().cwiseProduct(xvals);
  const Matrix expected = u * inv.asDiagonal() * u.adjoint();
  Rng rng(5, 1);
  for (int i = 0; i < 8; ++i) {
    const SuperoperatorHandle h(sample_kernel(rng), HermitianMatrix(d));
    CHECK((h.apply_omega(HermitianMatrix(x)).mat() - expected).norm() <= 1e-11);
  }
}

TEST_CASE("round-trip and duality over random instances") {
  Rng rng(77, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + static_cast<int>(rng.below(5));
    const MetricKernel k = sample_kernel(rng);
    const DensityMatrix rho = random_density(d, rng.next_u64());
    const HermitianMatrix x = random_traceless(d, rng.next_u64());
    const SuperoperatorHandle h(k, rho);

    const HermitianMatrix y = h.apply_omega_inverse(x);
    CHECK((h.apply_omega(y).mat() - x.mat()).norm() <= 1e-10 * x.mat().norm());

    // (Omega_D^k)^{-1} = Omega_{D^{-1}}^{k-hat}
    const Matrix dinv = matrix_function(rho.base(), [](double t) { return 1.0 / t; });
    const SuperoperatorHandle hd(dual(k), HermitianMatrix(dinv));
    CHECK((hd.apply_omega(x).mat() - y.mat()).norm() <= 1e-10 * y.mat().norm());
  }
}

TEST_CASE("singular bases are rejected") {
  Matrix d(2, 2);
  d << 1.0, 0, 0, 1e-13;
  CHECK_THROWS_AS(SuperoperatorHandle(make_heinz(0.5), HermitianMatrix(d)),
                  std::domain_error);
}

TEST_CASE("metric: commuting identity base, positivity, sesquilinearity") {
  const int d = 3;
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(d);
  const HermitianMatrix x = random_traceless(d, 1);
  const HermitianMatrix y = random_traceless(d, 2);
  const HermitianMatrix zero(Matrix::Zero(d, d));

  CHECK(std::abs(metric(make_heinz(0.3), mixed, zero, zero)) == 0.0);
  // D = I/d: Gamma = d Tr X* Y independently of k
  for (const auto& k : {make_extreme(0.2), make_wyd(1.3)}) {
    const Complex got = metric(k, mixed, x, y);
    const Complex expected = double(d) * (x.mat().adjoint() * y.mat()).trace();
    CHECK(std::abs(got - expected) <= 1e-10 * std::abs(expected));
  }

  Rng rng(13, 0);
  for (int trial = 0; trial < 60; ++trial) {
    const MetricKernel k = sample_kernel(rng);
    const DensityMatrix rho = random_density(d, rng.next_u64());
    const HermitianMatrix a = random_traceless(d, rng.next_u64());
    const HermitianMatrix b = random_traceless(d, rng.next_u64());
    const Complex q = metric(k, rho, a, a);
    CHECK(q.real() >= -1e-12);
    CHECK(std::abs(q.imag()) <= 1e-12);
    CHECK(std::abs(metric(k, rho, a, b) - std::conj(metric(k, rho, b, a))) <= 1e-10);
  }
}

TEST_CASE("quasi-entropy: zero at equal arguments, symmetric, monotone") {
  const int d = 3;
  const Matrix id = Matrix::Identity(d, d);
  const DensityMatrix rho = random_density(d, 21);
  CHECK(quasi_entropy(make_heinz(0.3), rho.base(), rho.base(), id) ==
        doctest::Approx(0.0).epsilon(1e-12));

  Rng rng(17, 0);
  for (int trial = 0; trial < 40; ++trial) {
    const MetricKernel k = sample_kernel(rng);
    const DensityMatrix a = random_density(d, rng.next_u64());
    const DensityMatrix b = random_density(d, rng.next_u64());
    const double hab = quasi_entropy(k, a.base(), b.base(), id);
    const double hba = quasi_entropy(k, b.base(), a.base(), id);
    CHECK(hab >= 0.0);
    CHECK(hab == doctest::Approx(hba).epsilon(1e-10));

    // data processing under a random CPT map, with output regularization
    const QuantumChannel phi = random_channel(d, 2, rng.next_u64());
    const auto regularize = [&](const Matrix& m) {
      return HermitianMatrix(Matrix(0.5 * (m + m.adjoint()) +
                                    1e-9 * Matrix::Identity(d, d)));
    };
    const double contracted = quasi_entropy(k, regularize(phi.apply(a.mat())),
                                            regularize(phi.apply(b.mat())), id);
    CHECK(contracted <= hab + 1e-6 * (1.0 + hab));
  }

  Matrix singular(d, d);
  singular.setZero();
  singular(0, 0) = 1.0;
  CHECK_THROWS_AS(
      quasi_entropy(make_heinz(0.3), HermitianMatrix(singular), rho.base(), id),
      std::domain_error);
}

TEST_CASE("operator mean: M-Omega identity, commuting case, identity") {
  const int d = 4;
  Rng rng(23, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const MetricKernel k = sample_kernel(rng);
    const DensityMatrix a = random_density(d, rng.next_u64());
    const HermitianMatrix x = random_traceless(d, rng.next_u64());
    const SuperoperatorHandle h(k, a);
    // M^k(A, A) = (Omega_A^k)^{-1}
    const Matrix via_mean = operator_mean_apply(k, a.base(), a.base(), x.mat());
    const Matrix via_inverse = h.apply_omega_inverse(x).mat();
    CHECK((via_mean - via_inverse).norm() <= 1e-10 * via_inverse.norm());
  }

  // commuting A, B with k = 2/(1+x): the arithmetic mean (A+B)/2
  const Matrix u = random_unitary(3, 3);
  RealVector av(3), bv(3);
  av << 0.5, 1.0, 2.0;
  bv << 0.25, 3.0, 1.5;
  const HermitianMatrix a(Matrix(u * av.asDiagonal() * u.adjoint()));
  const HermitianMatrix b(Matrix(u * bv.asDiagonal() * u.adjoint()));
  const Matrix mean = operator_mean(make_extreme(1.0), a, b);
  CHECK((mean - 0.5 * (a.mat() + b.mat())).norm() <= 1e-11);

  const HermitianMatrix id3 = HermitianMatrix::identity(3);
  CHECK((operator_mean(make_wyd(0.5), id3, id3) - Matrix::Identity(3, 3)).norm() <=
        1e-12);
}

TEST_CASE("BKM quadrature: commuting case and identities") {
  // commuting: forward integral is exactly D^{-1} X
  RealVector dv(3), xv(3);
  dv << 0.2, 0.5, 0.3;
  xv << 0.4, -0.1, -0.3;
  const Matrix u = random_unitary(3, 9);
  const DensityMatrix rho(Matrix(u * dv.asDiagonal() * u.adjoint()));
  const HermitianMatrix x(Matrix(u * xv.asDiagonal() * u.adjoint()));
  RealVector ratio = xv.cwiseQuotient(dv);
  const Matrix expected = u * ratio.asDiagonal() * u.adjoint();
  const Matrix fwd = bkm_quadrature(BkmDirection::forward, rho, x).mat();
  CHECK((fwd - expected).norm() <= 1e-8 * expected.norm());

  Rng rng(41, 0);
  const MetricKernel bkm = make_wyd(1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 2 + static_cast<int>(rng.below(5));
    const DensityMatrix r = random_density(d, rng.next_u64());
    const HermitianMatrix y = random_traceless(d, rng.next_u64());
    const SuperoperatorHandle h(bkm, r);

    const Matrix f = bkm_quadrature(BkmDirection::forward, r, y).mat();
    CHECK((f - h.apply_omega(y).mat()).norm() <= 1e-6 * f.norm());
    const Matrix inv = bkm_quadrature(BkmDirection::inverse, r, y).mat();
    CHECK((inv - h.apply_omega_inverse(y).mat()).norm() <= 1e-6 * inv.norm());

    const Matrix rt =
        bkm_quadrature(BkmDirection::forward, r, HermitianMatrix(inv)).mat();
    CHECK((rt - y.mat()).norm() <= 1e-6 * y.mat().norm());
  }

  CHECK_THROWS_AS(bkm_quadrature(BkmDirection::forward, rho, x, 8),
                  std::invalid_argument);
}
