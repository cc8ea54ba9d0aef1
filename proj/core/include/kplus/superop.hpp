#pragma once

#include "kplus/kernels.hpp"
#include "kplus/linalg.hpp"

namespace kplus {

// ── Omega_D^k: non-commutative multiplication by D^{-1} ──────────────────────
//
// With D = U diag(lambda) U*, the map acts as a Schur product in the
// eigenbasis:  Omega(X) = U (Phi o (U* X U)) U*  where
// Phi_ij = phi^k(lambda_i, lambda_j) = (1/lambda_j) k(lambda_i/lambda_j).
// The kernel matrix is built from eigenvalue ratios only; degenerate spectra
// need no special handling since phi^k is continuous across coincidences.
class SuperoperatorHandle {
 public:
  SuperoperatorHandle(MetricKernel kernel, const HermitianMatrix& base);
  SuperoperatorHandle(MetricKernel kernel, const DensityMatrix& base)
      : SuperoperatorHandle(std::move(kernel), base.base()) {}

  int dim() const { return static_cast<int>(spectral_.eigenvalues.size()); }
  const MetricKernel& kernel() const { return kernel_; }
  const SpectralDecomposition& spectral() const { return spectral_; }
  const RealMatrix& schur_kernel() const { return schur_; }

  HermitianMatrix apply_omega(const HermitianMatrix& x) const;
  HermitianMatrix apply_omega_inverse(const HermitianMatrix& y) const;

 private:
  MetricKernel kernel_;
  SpectralDecomposition spectral_;
  RealMatrix schur_;  // phi^k over eigenvalue pairs
};

// Gamma_D^k(X, Y) = Tr X* Omega_D^k(Y): sesquilinear, positive on X = Y.
Complex metric(const MetricKernel& k, const DensityMatrix& d, const HermitianMatrix& x,
               const HermitianMatrix& y);

// H_g(A,B,K) = Tr sqrt(B) K* g(L_A R_B^{-1})(K sqrt(B)) with g = (1-x)^2 k(x),
// evaluated entrywise as g(a_i/b_j) in the product eigenbasis.
double quasi_entropy(const MetricKernel& k, const HermitianMatrix& a,
                     const HermitianMatrix& b, const Matrix& kmat);

// M^k(A,B) = R_B (k(L_A R_B^{-1}))^{-1} acting on X through the two-sided
// eigenbasis: entries scale by the scalar mean M^k(a_i, b_j).  The action on
// a Hermitian X is Hermitian when A and B commute (and always for A = B);
// operator_mean returns the matrix mean M^k(A,B)(I).
Matrix operator_mean_apply(const MetricKernel& k, const HermitianMatrix& a,
                           const HermitianMatrix& b, const Matrix& x);
Matrix operator_mean(const MetricKernel& k, const HermitianMatrix& a,
                     const HermitianMatrix& b);

enum class BkmDirection { forward, inverse };

// Quadrature forms of the Bogoliubov-Kubo-Mori pair
//   forward: int_0^inf (D+tI)^{-1} X (D+tI)^{-1} dt   (Omega for k = log x/(x-1))
//   inverse: int_0^1  D^t X D^{1-t} dt
// The forward substitution t = lam u/(1-u) uses the geometric mean of the
// spectrum for lam, resolving both tails for condition numbers up to ~1e6.
HermitianMatrix bkm_quadrature(BkmDirection direction, const DensityMatrix& d,
                               const HermitianMatrix& x, int n_nodes = 200);

}  // namespace kplus
