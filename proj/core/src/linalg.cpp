#include "kplus/linalg.hpp"

#include <Eigen/Eigenvalues>

#include "kplus/rng.hpp"

namespace kplus {

HermitianMatrix::HermitianMatrix(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw std::invalid_argument("HermitianMatrix: matrix must be square and nonempty");
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kAsymReject)
    throw std::invalid_argument("HermitianMatrix: asymmetry " + std::to_string(asym) +
                                " exceeds 1e-8");
  mat_ = 0.5 * (m + m.adjoint());
}

DensityMatrix::DensityMatrix(const HermitianMatrix& h) : base_(h) {
  const double tr = h.mat().trace().real();
  if (std::abs(tr - 1.0) > 1e-12)
    throw std::invalid_argument("DensityMatrix: trace deviates from 1 by " +
                                std::to_string(tr - 1.0));
  if (min_eigenvalue(h) < -1e-12)
    throw std::invalid_argument("DensityMatrix: negative eigenvalue");
}

SpectralDecomposition eigh(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.mat());
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigh: eigensolver failed to converge");
  return SpectralDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

Matrix schur_product(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("schur_product: dimension mismatch");
  return a.cwiseProduct(b);
}

double min_eigenvalue(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.mat(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("min_eigenvalue: eigensolver failed");
  return solver.eigenvalues()(0);
}

double trace_norm(const HermitianMatrix& x) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(x.mat(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("trace_norm: eigensolver failed");
  return solver.eigenvalues().cwiseAbs().sum();
}

namespace {

Matrix gaussian_matrix(int d, Rng& rng) {
  Matrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = Complex(rng.gaussian(), rng.gaussian());
  return g;
}

}  // namespace

Matrix random_sample(SampleKind kind, int dim, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("random_sample: dim must be >= 1");
  Rng rng(seed, static_cast<std::uint64_t>(kind) + 17);
  switch (kind) {
    case SampleKind::density: {
      Matrix g = gaussian_matrix(dim, rng);
      Matrix m = g * g.adjoint();
      m /= m.trace().real();
      return 0.5 * (m + m.adjoint());
    }
    case SampleKind::hermitian_traceless: {
      Matrix g = gaussian_matrix(dim, rng);
      Matrix h = 0.5 * (g + g.adjoint());
      h -= (h.trace() / double(dim)) * Matrix::Identity(dim, dim);
      return h;
    }
    case SampleKind::unitary: {
      // Haar: QR of a Ginibre matrix with the R-diagonal phases divided out
      Matrix g = gaussian_matrix(dim, rng);
      Eigen::HouseholderQR<Matrix> qr(g);
      Matrix q = qr.householderQ();
      Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
      for (int j = 0; j < dim; ++j) {
        Complex rjj = r(j, j);
        Complex phase = rjj == Complex(0, 0) ? Complex(1, 0) : rjj / std::abs(rjj);
        q.col(j) *= phase;
      }
      return q;
    }
  }
  throw std::logic_error("random_sample: unknown kind");
}

DensityMatrix random_density(int dim, std::uint64_t seed) {
  return DensityMatrix(random_sample(SampleKind::density, dim, seed));
}

HermitianMatrix random_traceless(int dim, std::uint64_t seed) {
  return HermitianMatrix(random_sample(SampleKind::hermitian_traceless, dim, seed));
}

HermitianMatrix random_hermitian(int dim, std::uint64_t seed) {
  Rng rng(seed, 91);
  Matrix g = gaussian_matrix(dim, rng);
  return HermitianMatrix(0.5 * (g + g.adjoint()));
}

Matrix random_unitary(int dim, std::uint64_t seed) {
  return random_sample(SampleKind::unitary, dim, seed);
}

}  // namespace kplus
