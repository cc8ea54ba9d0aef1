#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>

namespace kplus {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Hermiticity handling: inputs within kAsymReject of their adjoint are
// symmetrized to (H + H*)/2, anything worse is rejected.
inline constexpr double kHermTol = 1e-12;
inline constexpr double kAsymReject = 1e-8;
// Floor below which a base point counts as singular for Omega maps.
inline constexpr double kSingularFloor = 1e-12;

// ── HermitianMatrix ───────────────────────────────────────────────────────────
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const Matrix& m);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Matrix& mat() const { return mat_; }

  static HermitianMatrix identity(int d) {
    return HermitianMatrix(Matrix::Identity(d, d));
  }

 private:
  Matrix mat_;
};

// ── DensityMatrix: positive semi-definite, unit trace ────────────────────────
class DensityMatrix {
 public:
  explicit DensityMatrix(const HermitianMatrix& h);
  explicit DensityMatrix(const Matrix& m) : DensityMatrix(HermitianMatrix(m)) {}

  int dim() const { return base_.dim(); }
  const Matrix& mat() const { return base_.mat(); }
  const HermitianMatrix& base() const { return base_; }

  static DensityMatrix maximally_mixed(int d) {
    return DensityMatrix(Matrix(Matrix::Identity(d, d) / double(d)));
  }

 private:
  HermitianMatrix base_;
};

// ── SpectralDecomposition: H = U diag(eigenvalues) U* ─────────────────────────
struct SpectralDecomposition {
  RealVector eigenvalues;  // ascending
  Matrix unitary;          // columns are eigenvectors

  Matrix reconstruct() const {
    return unitary * eigenvalues.asDiagonal() * unitary.adjoint();
  }
};

SpectralDecomposition eigh(const HermitianMatrix& h);

Matrix schur_product(const Matrix& a, const Matrix& b);

double min_eigenvalue(const HermitianMatrix& h);
double trace_norm(const HermitianMatrix& x);

// f(H) through the spectral decomposition.
template <typename F>
Matrix matrix_function(const HermitianMatrix& h, F&& f) {
  const SpectralDecomposition s = eigh(h);
  RealVector fe(s.eigenvalues.size());
  for (int i = 0; i < fe.size(); ++i) fe(i) = f(s.eigenvalues(i));
  return s.unitary * fe.asDiagonal() * s.unitary.adjoint();
}

enum class SampleKind { density, hermitian_traceless, unitary };

// Deterministic generators (Hilbert-Schmidt ensemble, GUE-minus-trace, Haar).
Matrix random_sample(SampleKind kind, int dim, std::uint64_t seed);

DensityMatrix random_density(int dim, std::uint64_t seed);
HermitianMatrix random_traceless(int dim, std::uint64_t seed);
HermitianMatrix random_hermitian(int dim, std::uint64_t seed);
Matrix random_unitary(int dim, std::uint64_t seed);

}  // namespace kplus
