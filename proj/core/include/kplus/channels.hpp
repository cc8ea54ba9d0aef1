#pragma once

#include <cstdint>
#include <vector>

#include "json.hpp"
#include "kplus/kernels.hpp"
#include "kplus/linalg.hpp"

namespace kplus {

// ── CPT maps in Kraus form: Phi(X) = sum_j F_j X F_j* ────────────────────────
class QuantumChannel {
 public:
  explicit QuantumChannel(std::vector<Matrix> kraus);

  int dim() const { return static_cast<int>(kraus_.front().rows()); }
  const std::vector<Matrix>& kraus() const { return kraus_; }

  Matrix apply(const Matrix& x) const;          // sum F X F*
  Matrix apply_adjoint(const Matrix& x) const;  // sum F* X F

  static QuantumChannel identity(int d);
  static QuantumChannel depolarizing(int d);  // X -> Tr(X) I/d

 private:
  std::vector<Matrix> kraus_;
};

// Stinespring dilation through a Haar-random isometry C^d -> C^d (x) C^env.
QuantumChannel random_channel(int d, int env, std::uint64_t seed);

nlohmann::json channel_to_json(const QuantumChannel& c);
QuantumChannel channel_from_json(const nlohmann::json& j);

// Orthonormal Hermitian operator basis (generalized Gell-Mann plus I/sqrt d);
// element 0 carries the trace, the rest span the traceless subspace.
std::vector<Matrix> hermitian_basis(int d);

// d^2 x d^2 matrix of a superoperator in that basis; faithful for maps that
// preserve Hermiticity.
RealMatrix superop_matrix(const std::function<Matrix(const Matrix&)>& map, int d);

// ── Monotonicity audit of Gamma under a CPT map ───────────────────────────────
struct ContractionAudit {
  double lhs = 0.0;  // Gamma_{Phi(rho)}(Phi X, Phi X)
  double rhs = 0.0;  // Gamma_rho(X, X)
  bool ok = false;
  bool regularized = false;  // Phi(rho) was epsilon-mixed with I/d
};

ContractionAudit contraction_audit(const MetricKernel& k, const QuantumChannel& phi,
                                   const DensityMatrix& rho, const HermitianMatrix& x);

// Largest generalized eigenvalue of  Phihat o Omega_{Phi rho} o Phi  against
// Omega_rho on the traceless subspace (the X = I direction carrying
// lambda_1 = 1 is projected out), solved by congruence with S^{-1/2}.
double eta_riem(const MetricKernel& k, const QuantumChannel& phi,
                const DensityMatrix& rho);

struct EtaEstimates {
  double riem_sup = 0.0;     // max over sampled base points
  double dob_lower = 0.0;    // trace-norm contraction over pure orthogonal pairs
  double relent_lower = 0.0; // quasi-entropy ratio over sampled density pairs
};

// Sampled contraction coefficients.  All three are lower estimates of their
// suprema; dob_lower is refined by multistart local search.
EtaEstimates eta_estimates(const MetricKernel& k, const QuantumChannel& phi,
                           int samples, std::uint64_t seed);

}  // namespace kplus
