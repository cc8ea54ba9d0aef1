#include "kplus/superop.hpp"

#include <cmath>
#include <stdexcept>

#include "kplus/quadrature.hpp"

namespace kplus {

namespace {

void require_positive_spectrum(const SpectralDecomposition& s) {
  if (s.eigenvalues(0) <= kSingularFloor)
    throw std::domain_error("superop: base is singular (min eigenvalue " +
                            std::to_string(s.eigenvalues(0)) + " <= 1e-12)");
}

RealMatrix schur_kernel_matrix(const MetricKernel& k, const RealVector& lam) {
  const int d = static_cast<int>(lam.size());
  RealMatrix phi(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) phi(i, j) = k.eval(lam(i) / lam(j)) / lam(j);
  return phi;
}

}  // namespace

SuperoperatorHandle::SuperoperatorHandle(MetricKernel kernel,
                                         const HermitianMatrix& base)
    : kernel_(std::move(kernel)), spectral_(eigh(base)) {
  require_positive_spectrum(spectral_);
  schur_ = schur_kernel_matrix(kernel_, spectral_.eigenvalues);
}

HermitianMatrix SuperoperatorHandle::apply_omega(const HermitianMatrix& x) const {
  if (x.dim() != dim())
    throw std::invalid_argument("apply_omega: dimension mismatch");
  const Matrix& u = spectral_.unitary;
  const Matrix inner = u.adjoint() * x.mat() * u;
  const Matrix out = u * inner.cwiseProduct(schur_.cast<Complex>()) * u.adjoint();
  return HermitianMatrix(out);
}

HermitianMatrix SuperoperatorHandle::apply_omega_inverse(
    const HermitianMatrix& y) const {
  if (y.dim() != dim())
    throw std::invalid_argument("apply_omega_inverse: dimension mismatch");
  const Matrix& u = spectral_.unitary;
  const Matrix inner = u.adjoint() * y.mat() * u;
  const Matrix out =
      u * inner.cwiseProduct(schur_.cwiseInverse().cast<Complex>()) * u.adjoint();
  return HermitianMatrix(out);
}

Complex metric(const MetricKernel& k, const DensityMatrix& d, const HermitianMatrix& x,
               const HermitianMatrix& y) {
  const SuperoperatorHandle h(k, d);
  return (x.mat().adjoint() * h.apply_omega(y).mat()).trace();
}

double quasi_entropy(const MetricKernel& k, const HermitianMatrix& a,
                     const HermitianMatrix& b, const Matrix& kmat) {
  const SpectralDecomposition sa = eigh(a), sb = eigh(b);
  require_positive_spectrum(sa);
  require_positive_spectrum(sb);
  if (kmat.rows() != a.dim() || kmat.cols() != a.dim())
    throw std::invalid_argument("quasi_entropy: K has wrong dimensions");
  const int d = a.dim();
  RealVector sqrt_b(d);
  for (int j = 0; j < d; ++j) sqrt_b(j) = std::sqrt(sb.eigenvalues(j));
  // C = U_A* K sqrt(B) U_B = (U_A* K U_B) diag(sqrt b)
  const Matrix c = (sa.unitary.adjoint() * kmat * sb.unitary) * sqrt_b.asDiagonal();
  double acc = 0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const double ratio = sa.eigenvalues(i) / sb.eigenvalues(j);
      const double r = 1.0 - ratio;
      const double g = r * r * k.eval(ratio);  // g(x) = (1-x)^2 k(x)
      acc += g * std::norm(c(i, j));
    }
  return acc;
}

Matrix operator_mean_apply(const MetricKernel& k, const HermitianMatrix& a,
                           const HermitianMatrix& b, const Matrix& x) {
  const SpectralDecomposition sa = eigh(a), sb = eigh(b);
  require_positive_spectrum(sa);
  require_positive_spectrum(sb);
  const int d = a.dim();
  RealMatrix w(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      w(i, j) = sb.eigenvalues(j) / k.eval(sa.eigenvalues(i) / sb.eigenvalues(j));
  const Matrix inner = sa.unitary.adjoint() * x * sb.unitary;
  return sa.unitary * inner.cwiseProduct(w.cast<Complex>()) * sb.unitary.adjoint();
}

Matrix operator_mean(const MetricKernel& k, const HermitianMatrix& a,
                     const HermitianMatrix& b) {
  return operator_mean_apply(k, a, b, Matrix::Identity(a.dim(), a.dim()));
}

HermitianMatrix bkm_quadrature(BkmDirection direction, const DensityMatrix& d,
                               const HermitianMatrix& x, int n_nodes) {
  if (n_nodes < 16) throw std::invalid_argument("bkm_quadrature: n_nodes >= 16");
  const SpectralDecomposition s = eigh(d.base());
  require_positive_spectrum(s);
  const int n = d.dim();
  if (x.dim() != n) throw std::invalid_argument("bkm_quadrature: dimension mismatch");
  const auto [nodes, weights] = gauss_legendre_01(n_nodes);

  Matrix acc = Matrix::Zero(n, n);
  if (direction == BkmDirection::forward) {
    // t = lam u/(1-u), dt = lam/(1-u)^2 du with lam the spectral geometric mean
    const double lam = std::exp(s.eigenvalues.array().log().mean());
    for (int q = 0; q < n_nodes; ++q) {
      const double u = nodes[q];
      const double t = lam * u / (1.0 - u);
      const double jac = lam / ((1.0 - u) * (1.0 - u));
      const Matrix resolvent =
          (d.mat() + t * Matrix::Identity(n, n)).ldlt().solve(Matrix::Identity(n, n));
      acc += weights[q] * jac * (resolvent * x.mat() * resolvent);
    }
  } else {
    for (int q = 0; q < n_nodes; ++q) {
      const double t = nodes[q];
      RealVector pt(n), p1t(n);
      for (int i = 0; i < n; ++i) {
        pt(i) = std::pow(s.eigenvalues(i), t);
        p1t(i) = std::pow(s.eigenvalues(i), 1.0 - t);
      }
      const Matrix dt_ = s.unitary * pt.asDiagonal() * s.unitary.adjoint();
      const Matrix d1t = s.unitary * p1t.asDiagonal() * s.unitary.adjoint();
      acc += weights[q] * (dt_ * x.mat() * d1t);
    }
  }
  return HermitianMatrix(0.5 * (acc + acc.adjoint()));
}

}  // namespace kplus
