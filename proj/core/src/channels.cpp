#include "kplus/channels.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "kplus/rng.hpp"
#include "kplus/superop.hpp"

namespace kplus {

QuantumChannel::QuantumChannel(std::vector<Matrix> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw std::invalid_argument("QuantumChannel: no Kraus operators");
  const int d = static_cast<int>(kraus_.front().rows());
  if (static_cast<int>(kraus_.size()) > d * d)
    throw std::invalid_argument("QuantumChannel: more than d^2 Kraus operators");
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& f : kraus_) {
    if (f.rows() != d || f.cols() != d)
      throw std::invalid_argument("QuantumChannel: Kraus dimensions differ");
    sum += f.adjoint() * f;
  }
  const double residual = (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (residual > 1e-8)
    throw std::invalid_argument("QuantumChannel: trace preservation violated by " +
                                std::to_string(residual));
}

Matrix QuantumChannel::apply(const Matrix& x) const {
  const int d = dim();
  if (x.rows() != d || x.cols() != d)
    throw std::invalid_argument("QuantumChannel::apply: dimension mismatch");
  Matrix out = Matrix::Zero(d, d);
  for (const auto& f : kraus_) out += f * x * f.adjoint();
  return out;
}

Matrix QuantumChannel::apply_adjoint(const Matrix& x) const {
  const int d = dim();
  if (x.rows() != d || x.cols() != d)
    throw std::invalid_argument("QuantumChannel::apply_adjoint: dimension mismatch");
  Matrix out = Matrix::Zero(d, d);
  for (const auto& f : kraus_) out += f.adjoint() * x * f;
  return out;
}

QuantumChannel QuantumChannel::identity(int d) {
  return QuantumChannel({Matrix::Identity(d, d)});
}

QuantumChannel QuantumChannel::depolarizing(int d) {
  std::vector<Matrix> kraus;
  kraus.reserve(d * d);
  const double norm = 1.0 / std::sqrt(double(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Matrix e = Matrix::Zero(d, d);
      e(i, j) = norm;
      kraus.push_back(e);
    }
  return QuantumChannel(std::move(kraus));
}

QuantumChannel random_channel(int d, int env, std::uint64_t seed) {
  if (d < 1 || env < 1)
    throw std::invalid_argument("random_channel: d, env must be >= 1");
  Rng rng(seed, 5);
  Matrix g(d * env, d);
  for (int i = 0; i < d * env; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = Complex(rng.gaussian(), rng.gaussian());
  // thin QR with phase fix: Haar isometry C^d -> C^{d*env}
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(d * env, d);
  Matrix r = qr.matrixQR().topRows(d).triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    if (rjj != Complex(0, 0)) q.col(j) *= rjj / std::abs(rjj);
  }
  std::vector<Matrix> kraus(env, Matrix(d, d));
  for (int e = 0; e < env; ++e)
    for (int i = 0; i < d; ++i)
      for (int c = 0; c < d; ++c) kraus[e](i, c) = q(i * env + e, c);
  return QuantumChannel(std::move(kraus));
}

nlohmann::json channel_to_json(const QuantumChannel& c) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& f : c.kraus()) {
    nlohmann::json m = nlohmann::json::array();
    for (int i = 0; i < f.rows(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (int j = 0; j < f.cols(); ++j)
        row.push_back({f(i, j).real(), f(i, j).imag()});
      m.push_back(row);
    }
    arr.push_back(m);
  }
  return nlohmann::json{{"kraus", arr}};
}

QuantumChannel channel_from_json(const nlohmann::json& j) {
  std::vector<Matrix> kraus;
  for (const auto& m : j.at("kraus")) {
    const int rows = static_cast<int>(m.size());
    Matrix f(rows, rows);
    for (int i = 0; i < rows; ++i) {
      const auto& row = m.at(i);
      if (static_cast<int>(row.size()) != rows)
        throw std::invalid_argument("channel_from_json: Kraus blocks must be square");
      for (int c = 0; c < rows; ++c)
        f(i, c) = Complex(row.at(c).at(0).get<double>(), row.at(c).at(1).get<double>());
    }
    kraus.push_back(std::move(f));
  }
  return QuantumChannel(std::move(kraus));
}

std::vector<Matrix> hermitian_basis(int d) {
  std::vector<Matrix> basis;
  basis.reserve(d * d);
  basis.push_back(Matrix::Identity(d, d) / std::sqrt(double(d)));
  const double r2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      Matrix s = Matrix::Zero(d, d);
      s(i, j) = r2;
      s(j, i) = r2;
      basis.push_back(s);
      Matrix a = Matrix::Zero(d, d);
      a(i, j) = Complex(0, -r2);
      a(j, i) = Complex(0, r2);
      basis.push_back(a);
    }
  for (int l = 1; l < d; ++l) {
    Matrix m = Matrix::Zero(d, d);
    const double norm = 1.0 / std::sqrt(double(l) * (l + 1));
    for (int k = 0; k < l; ++k) m(k, k) = norm;
    m(l, l) = -double(l) * norm;
    basis.push_back(m);
  }
  return basis;
}

RealMatrix superop_matrix(const std::function<Matrix(const Matrix&)>& map, int d) {
  const auto basis = hermitian_basis(d);
  const int n = d * d;
  RealMatrix m(n, n);
  for (int b = 0; b < n; ++b) {
    const Matrix image = map(basis[b]);
    for (int a = 0; a < n; ++a) {
      const Complex inner = (basis[a].adjoint() * image).trace();
      m(a, b) = inner.real();
    }
  }
  return m;
}

namespace {

DensityMatrix regularize_state(const Matrix& m, bool& flagged) {
  Matrix sym = 0.5 * (m + m.adjoint());
  HermitianMatrix h(sym);
  if (min_eigenvalue(h) <= kSingularFloor) {
    flagged = true;
    const int d = static_cast<int>(m.rows());
    const double eps = 1e-10;
    sym = (1.0 - eps) * sym + eps * Matrix::Identity(d, d) / double(d);
    return DensityMatrix(sym);
  }
  return DensityMatrix(sym);
}

}  // namespace

ContractionAudit contraction_audit(const MetricKernel& k, const QuantumChannel& phi,
                                   const DensityMatrix& rho, const HermitianMatrix& x) {
  ContractionAudit audit;
  const SuperoperatorHandle before(k, rho);
  audit.rhs = (x.mat().adjoint() * before.apply_omega(x).mat()).trace().real();

  bool flagged = false;
  const DensityMatrix sigma = regularize_state(phi.apply(rho.mat()), flagged);
  audit.regularized = flagged;
  const SuperoperatorHandle after(k, sigma);
  const HermitianMatrix phix(phi.apply(x.mat()));
  audit.lhs = (phix.mat().adjoint() * after.apply_omega(phix).mat()).trace().real();
  audit.ok = audit.lhs <= audit.rhs + 1e-10 * std::abs(audit.rhs);
  return audit;
}

double eta_riem(const MetricKernel& k, const QuantumChannel& phi,
                const DensityMatrix& rho) {
  const int d = rho.dim();
  const auto basis = hermitian_basis(d);
  const int n = d * d - 1;  // traceless block

  const SuperoperatorHandle om_rho(k, rho);
  bool flagged = false;
  const DensityMatrix sigma = regularize_state(phi.apply(rho.mat()), flagged);
  const SuperoperatorHandle om_sigma(k, sigma);

  RealMatrix s(n, n), m(n, n);
  std::vector<Matrix> phib(n);
  std::vector<Matrix> om_b(n), om_phib(n);
  for (int b = 0; b < n; ++b) {
    const Matrix& bb = basis[b + 1];
    om_b[b] = om_rho.apply_omega(HermitianMatrix(bb)).mat();
    phib[b] = phi.apply(bb);
    om_phib[b] = om_sigma.apply_omega(HermitianMatrix(phib[b])).mat();
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      s(a, b) = (basis[a + 1].adjoint() * om_b[b]).trace().real();
      m(a, b) = (phib[a].adjoint() * om_phib[b]).trace().real();
    }

  Eigen::SelfAdjointEigenSolver<RealMatrix> es(0.5 * (s + s.transpose()));
  if (es.eigenvalues()(0) <= 1e-14)
    throw std::domain_error("eta_riem: Omega_rho singular on the traceless subspace");
  RealVector inv_sqrt = es.eigenvalues().array().rsqrt();
  const RealMatrix w =
      es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().transpose();
  const RealMatrix sym = w * (0.5 * (m + m.transpose())) * w;
  Eigen::SelfAdjointEigenSolver<RealMatrix> eg(sym, Eigen::EigenvaluesOnly);
  return eg.eigenvalues()(d * d - 2);
}

namespace {

double dobrushin_value(const QuantumChannel& phi, const Eigen::VectorXcd& psi,
                       const Eigen::VectorXcd& chi) {
  const Matrix diff = psi * psi.adjoint() - chi * chi.adjoint();
  return 0.5 * trace_norm(HermitianMatrix(phi.apply(diff)));
}

}  // namespace

EtaEstimates eta_estimates(const MetricKernel& k, const QuantumChannel& phi,
                           int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("eta_estimates: samples >= 1");
  const int d = phi.dim();
  EtaEstimates out;

  // Dobrushin lower bound over orthogonal pure pairs with local refinement;
  // the best pair also seeds the eta_riem sup search below
  Eigen::VectorXcd best_psi = Eigen::VectorXcd::Zero(d),
                   best_chi = Eigen::VectorXcd::Zero(d);
  const int starts = std::max(50, samples);  // multistart default
  for (int s0 = 0; s0 < starts; ++s0) {
    Rng r2(seed ^ 0xD0B5ULL, 100 + s0);
    Eigen::VectorXcd psi(d), chi(d);
    for (int c = 0; c < d; ++c) {
      psi(c) = Complex(r2.gaussian(), r2.gaussian());
      chi(c) = Complex(r2.gaussian(), r2.gaussian());
    }
    psi.normalize();
    chi -= psi * (psi.adjoint() * chi);
    chi.normalize();
    double best = dobrushin_value(phi, psi, chi);
    double step = 0.5;
    for (int it = 0; it < 120; ++it) {
      Eigen::VectorXcd dpsi(d), dchi(d);
      for (int c = 0; c < d; ++c) {
        dpsi(c) = Complex(r2.gaussian(), r2.gaussian());
        dchi(c) = Complex(r2.gaussian(), r2.gaussian());
      }
      Eigen::VectorXcd p = (psi + step * dpsi).normalized();
      Eigen::VectorXcd q = chi + step * dchi;
      q -= p * (p.adjoint() * q);
      q.normalize();
      const double val = dobrushin_value(phi, p, q);
      if (val > best) {
        best = val;
        psi = p;
        chi = q;
      } else {
        step *= 0.93;
      }
    }
    if (best > out.dob_lower) {
      out.dob_lower = best;
      best_psi = psi;
      best_chi = chi;
    }
  }

  // eta_riem over sampled bases: Hilbert-Schmidt draws, near-pure pushes, the
  // maximally mixed state, and mixtures around the Dobrushin maximizer
  Rng rng(seed, 21);
  std::vector<DensityMatrix> bases;
  bases.push_back(DensityMatrix::maximally_mixed(d));
  for (int i = 0; i < samples; ++i)
    bases.push_back(random_density(d, rng.next_u64()));
  for (double eps : {1e-2, 1e-3, 1e-5}) {
    for (int i = 0; i < 3; ++i) {
      Eigen::VectorXcd psi(d);
      for (int c = 0; c < d; ++c) psi(c) = Complex(rng.gaussian(), rng.gaussian());
      psi.normalize();
      bases.emplace_back(Matrix((1.0 - eps) * (psi * psi.adjoint()) +
                                eps * Matrix::Identity(d, d) / double(d)));
    }
    if (best_psi.norm() > 0.5) {
      const Matrix pair = 0.5 * (best_psi * best_psi.adjoint()) +
                          0.5 * (best_chi * best_chi.adjoint());
      bases.emplace_back(Matrix((1.0 - eps) * pair +
                                eps * Matrix::Identity(d, d) / double(d)));
      bases.emplace_back(Matrix((1.0 - eps) * (best_psi * best_psi.adjoint()) +
                                eps * Matrix::Identity(d, d) / double(d)));
    }
  }
  for (const DensityMatrix& rho : bases)
    out.riem_sup = std::max(out.riem_sup, eta_riem(k, phi, rho));

  // quasi-entropy contraction ratio over sampled density pairs
  Rng r3(seed ^ 0x5e1fULL, 300);
  const Matrix id = Matrix::Identity(d, d);
  for (int i = 0; i < std::max(20, samples * 4); ++i) {
    bool flag = false;
    const DensityMatrix rho = random_density(d, r3.next_u64());
    const DensityMatrix gam = random_density(d, r3.next_u64());
    const double denom = quasi_entropy(k, rho.base(), gam.base(), id);
    if (denom < 1e-12) continue;
    const DensityMatrix prho = regularize_state(phi.apply(rho.mat()), flag);
    const DensityMatrix pgam = regularize_state(phi.apply(gam.mat()), flag);
    const double numer = quasi_entropy(k, prho.base(), pgam.base(), id);
    out.relent_lower = std::max(out.relent_lower, numer / denom);
  }
  return out;
}

}  // namespace kplus
