#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "kplus/channels.hpp"
#include "kplus/rng.hpp"

using namespace kplus;

TEST_CASE("channel construction and CPT validation") {
  CHECK_NOTHROW(QuantumChannel::identity(3));
  // scaling a valid Kraus set breaks trace preservation
  std::vector<Matrix> bad = {0.9 * Matrix::Identity(2, 2)};
  CHECK_THROWS_AS(QuantumChannel{bad}, std::invalid_argument);
  CHECK_THROWS_AS(QuantumChannel{std::vector<Matrix>{}}, std::invalid_argument);
}

TEST_CASE("depolarizing channel maps X to Tr(X) I/d") {
  const int d = 3;
  const QuantumChannel dep = QuantumChannel::depolarizing(d);
  const HermitianMatrix x = random_hermitian(d, 5);
  const Matrix out = dep.apply(x.mat());
  const Matrix expected = x.mat().trace() * Matrix::Identity(d, d) / double(d);
  CHECK((out - expected).norm() <= 1e-12);
}

TEST_CASE("random channels are exact isometries") {
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + trial % 4, env = 1 + trial % 3;
    const QuantumChannel phi = random_channel(d, env, 900 + trial);
    Matrix sum = Matrix::Zero(d, d);
    for (const auto& f : phi.kraus()) sum += f.adjoint() * f;
    CHECK((sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(static_cast<int>(phi.kraus().size()) == env);
  }
}

TEST_CASE("apply: trace preservation, adjoint unitality and duality") {
  Rng rng(61, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 2 + static_cast<int>(rng.below(4));
    const QuantumChannel phi =
        random_channel(d, 1 + static_cast<int>(rng.below(4)), rng.next_u64());
    const HermitianMatrix x = random_hermitian(d, rng.next_u64());
    const HermitianMatrix y = random_hermitian(d, rng.next_u64());

    CHECK(std::abs(phi.apply(x.mat()).trace() - x.mat().trace()) <= 1e-12);
    CHECK((phi.apply_adjoint(Matrix::Identity(d, d)) - Matrix::Identity(d, d))
              .cwiseAbs()
              .maxCoeff() <= 1e-10);

    const Complex lhs = (phi.apply_adjoint(y.mat()).adjoint() * x.mat()).trace();
    const Complex rhs = (y.mat().adjoint() * phi.apply(x.mat())).trace();
    CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + std::abs(rhs)));
  }
  const QuantumChannel id2 = QuantumChannel::identity(2);
  const HermitianMatrix x = random_hermitian(2, 3);
  CHECK((id2.apply(x.mat()) - x.mat()).norm() == 0.0);
  CHECK_THROWS_AS(id2.apply(Matrix::Identity(3, 3)), std::invalid_argument);
}

TEST_CASE("hermitian basis is orthonormal and carries the trace in element 0") {
  for (int d : {2, 3, 4}) {
    const auto basis = hermitian_basis(d);
    REQUIRE(static_cast<int>(basis.size()) == d * d);
    for (size_t a = 0; a < basis.size(); ++a) {
      CHECK((basis[a] - basis[a].adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
      if (a > 0) CHECK(std::abs(basis[a].trace()) <= 1e-14);
      for (size_t b = 0; b <= a; ++b) {
        const double inner = (basis[a].adjoint() * basis[b]).trace().real();
        CHECK(inner == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("superop matrix representation is faithful") {
  const int d = 3;
  const QuantumChannel phi = random_channel(d, 3, 313);
  const RealMatrix m = superop_matrix(
      [&phi](const Matrix& x) { return phi.apply(x); }, d);
  const auto basis = hermitian_basis(d);
  const HermitianMatrix x = random_hermitian(d, 8);
  // coordinates of x, multiply, reconstruct
  RealVector coords(d * d);
  for (int a = 0; a < d * d; ++a)
    coords(a) = (basis[a].adjoint() * x.mat()).trace().real();
  const RealVector image = m * coords;
  Matrix rebuilt = Matrix::Zero(d, d);
  for (int a = 0; a < d * d; ++a) rebuilt += image(a) * basis[a];
  CHECK((rebuilt - phi.apply(x.mat())).norm() <= 1e-10);
}

TEST_CASE("contraction audit") {
  const int d = 3;
  const MetricKernel k = make_heinz(0.25);
  const DensityMatrix rho = random_density(d, 17);
  const HermitianMatrix x = random_traceless(d, 18);

  const ContractionAudit same =
      contraction_audit(k, QuantumChannel::identity(d), rho, x);
  CHECK(same.ok);
  CHECK(same.lhs == doctest::Approx(same.rhs).epsilon(1e-12));

  const ContractionAudit dep =
      contraction_audit(k, QuantumChannel::depolarizing(d), rho, x);
  CHECK(dep.ok);
  CHECK(dep.lhs <= 1e-12);        // traceless X maps to 0
  CHECK_FALSE(dep.regularized);   // I/d is strictly positive

  Rng rng(29, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const int dim = 2 + static_cast<int>(rng.below(3));
    const QuantumChannel phi =
        random_channel(dim, 1 + static_cast<int>(rng.below(3)), rng.next_u64());
    const ContractionAudit audit =
        contraction_audit(make_wyd(0.7), phi, random_density(dim, rng.next_u64()),
                          random_traceless(dim, rng.next_u64()));
    CHECK(audit.ok);
  }
}

TEST_CASE("eta_riem: identity, depolarizing, unitary channels") {
  const int d = 3;
  const MetricKernel k = make_binomial(0.0);
  const DensityMatrix rho = random_density(d, 71);
  CHECK(eta_riem(k, QuantumChannel::identity(d), rho) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(eta_riem(k, QuantumChannel::depolarizing(d), rho) ==
        doctest::Approx(0.0).epsilon(1e-10));

  const QuantumChannel unitary({random_unitary(d, 5)});
  CHECK(eta_riem(k, unitary, rho) == doctest::Approx(1.0).epsilon(1e-10));

  Rng rng(83, 0);
  for (int trial = 0; trial < 15; ++trial) {
    const QuantumChannel phi = random_channel(d, 2, rng.next_u64());
    const double eta = eta_riem(make_heinz(0.3), phi, random_density(d, rng.next_u64()));
    CHECK(eta <= 1.0 + 1e-8);
    CHECK(eta >= 0.0);
  }
}

TEST_CASE("channel JSON round-trip") {
  const QuantumChannel phi = random_channel(3, 2, 555);
  const QuantumChannel back = channel_from_json(channel_to_json(phi));
  REQUIRE(back.kraus().size() == phi.kraus().size());
  for (size_t i = 0; i < phi.kraus().size(); ++i)
    CHECK((back.kraus()[i] - phi.kraus()[i]).cwiseAbs().maxCoeff() <= 1e-15);
}
