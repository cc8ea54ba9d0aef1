#pragma once

#include "kplus/kernels.hpp"

namespace kplus {

enum class TriBool { yes, no, unknown };

inline const char* tribool_name(TriBool t) {
  switch (t) {
    case TriBool::yes: return "yes";
    case TriBool::no: return "no";
    default: return "unknown";
  }
}

// Parameters of the hyperbolic product 1/((cosh(t/2)+alpha)(cosh t+beta)).
struct HyperbolicParams {
  double alpha;  // in (-1, 1]
  double beta;   // > -1
  double theta;  // arccos(alpha)
  double lam;    // log(beta + sqrt(beta^2-1)) when beta > 1, else 0

  HyperbolicParams(double alpha_, double beta_);
};

// Fourier transform (1/4pi) * int e^{ist} / ((cosh(t/2)+alpha)(cosh t+beta)) dt
// in closed form; requires beta > 1.  alpha = 1 is handled by its limit.
double ft_cosh_product(const HyperbolicParams& p, double s);

// int e^{ist} / (cosh(t/2)(cosh t+beta)) dt
//   = 2 pi (1 - sqrt(2/(beta+1)) cos(lam s)) / ((beta-1) cosh(pi s));
// nonnegative for all s.  Requires beta > 1.
double ft_alpha_zero(double beta, double s);

enum class LevyKind { cos_kernel, cosh_kernel };

// Kolmogorov densities of log((1+c)/(cosh(a t)+c)):
//   cos_kernel  (c = cos theta,  theta in [0,pi)):  cosh(theta s/a)/(s sinh(pi s/a))
//   cosh_kernel (c = cosh lam,   lam >= 0):         cos(lam s/a) /(s sinh(pi s/a))
// The origin is excluded (quadrature grids must skip s = 0).
double levy_density(LevyKind kind, double a, double param, double s);

enum class HyperbolicKind { cosh_beta, sinh_ratio, cosh_power_product };

struct PdPredicate {
  bool pd = false;
  TriBool infdiv = TriBool::unknown;
};

// Exact positive-definiteness / infinite-divisibility predicates:
//   cosh_beta:          h = 1/(cosh t + beta),              pd iff beta <= 1
//   sinh_ratio:         h = sinh(at) sinh(bt)/sinh^2 t,     pd iff a,b <= 1
//   cosh_power_product: h = 1/(cosh^k(t/2)(cosh t+beta)^m), pd iff k >= m,
//                       infinitely divisible iff k >= 2m    (beta > 1)
PdPredicate hyperbolic_pd_predicate(HyperbolicKind kind, double p1, double p2 = 0,
                                    double p3 = 0);

// Exact K+/K- membership intervals for the catalog; three-valued so regions
// where only bounds are known stay honest (geometric bridges with lambda in
// (1/4, 1/3], Hansen bridges past 1/4).
struct FamilyMembership {
  TriBool in_K_plus = TriBool::unknown;
  TriBool in_K_minus = TriBool::unknown;
};

FamilyMembership family_membership(const MetricKernel& k);

// Critical mixing weight 2 sqrt(nu)/(1+sqrt(nu))^2 for
// lambda*extreme(nu) + (1-lambda)*2/(1+x); strictly below 1/2 on (0,1).
double newext_threshold(double nu);

// Numerator N(s) = 2(1-lambda) + lambda*(1+nu)/sqrt(nu) * cos(arccosh(beta) s)
// of the transform of e^{t/2} a_{1,nu,lambda}(e^t); N >= 0 for all s iff
// lambda <= newext_threshold(nu).
double convcomb_ft_numerator(double nu, double lam_mix, double s);
double convcomb_ft_numerator_min(double nu, double lam_mix);

}  // namespace kplus
