#include "kplus/closed_forms.hpp"

#include <cmath>
#include <stdexcept>

namespace kplus {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;

// sinh(a s)/sinh(b s) for a, b > 0, stable across s = 0 and large s
double ratio_sinh(double a, double b, double s) {
  const double p = std::abs(a * s), q = std::abs(b * s);
  if (q < 1e-3) {
    const double p2 = p * p, q2 = q * q;
    return (a / b) * (1 + p2 / 6 + p2 * p2 / 120) / (1 + q2 / 6 + q2 * q2 / 120);
  }
  if (std::max(p, q) < 25.0) return std::sinh(p) / std::sinh(q);
  return std::exp(p - q) * (-std::expm1(-2 * p)) / (-std::expm1(-2 * q));
}

// sin(a s)/sinh(b s), even in s, value a/b at s = 0
double sin_over_sinh(double a, double b, double s) {
  const double sa = std::abs(s);
  const double q = b * sa;
  if (q < 1e-3) {
    const double p = a * sa, p2 = p * p, q2 = q * q;
    return (a / b) * (1 - p2 / 6 + p2 * p2 / 120) / (1 + q2 / 6 + q2 * q2 / 120);
  }
  if (q < 25.0) return std::sin(a * sa) / std::sinh(q);
  return std::sin(a * sa) * 2 * std::exp(-q) / (-std::expm1(-2 * q));
}

double sech(double y) {
  const double a = std::abs(y);
  return 2 * std::exp(-a) / (1 + std::exp(-2 * a));
}

double sinhc(double y) {
  const double a = std::abs(y);
  if (a < 1e-4) {
    const double y2 = y * y;
    return 1 + y2 / 6 + y2 * y2 / 120;
  }
  return std::sinh(a) / a;
}

}  // namespace

HyperbolicParams::HyperbolicParams(double alpha_, double beta_)
    : alpha(alpha_), beta(beta_) {
  if (!(alpha > -1.0 && alpha <= 1.0))
    throw std::domain_error("HyperbolicParams: alpha must lie in (-1, 1]");
  if (!(beta > -1.0)) throw std::domain_error("HyperbolicParams: beta must exceed -1");
  theta = std::acos(alpha);
  lam = beta > 1.0 ? std::log(beta + std::sqrt(beta * beta - 1.0)) : 0.0;
}

double ft_cosh_product(const HyperbolicParams& p, double s) {
  if (!(p.beta > 1.0))
    throw std::domain_error("ft_cosh_product: beta must exceed 1 (pole structure)");
  const double sa = std::abs(s);
  const double beta = p.beta, alpha = p.alpha, theta = p.theta, lam = p.lam;

  // sinh(2 theta s)/(sqrt(1-a^2) sinh(2 pi s))
  //   = (theta/(pi sin theta)) sinhc(2 theta s)/sinhc(2 pi s)
  const double theta_over_sin = theta < 1e-8 ? 1.0 + theta * theta / 6.0
                                             : theta / std::sin(theta);
  double term0;
  if (2 * kPi * sa < 25.0) {
    term0 = theta_over_sin / kPi * sinhc(2 * theta * sa) / sinhc(2 * kPi * sa);
  } else {
    term0 = theta_over_sin / kPi * (kPi / std::max(theta, 1e-30)) *
            ratio_sinh(2 * theta, 2 * kPi, sa);
    if (theta < 1e-8)  // limit sinh(2 theta s)/sqrt(1-a^2) -> 2s
      term0 = 2 * sa / std::sinh(2 * kPi * sa);
  }
  term0 /= (2 * alpha * alpha - 1 + beta);

  const double denom = std::sqrt(beta * beta - 1.0) * ((beta - 1) / 2 + alpha * alpha);
  const double fc = std::sqrt((beta - 1) / 2) / denom;
  const double fs = alpha / denom;

  const double term_c = fc * std::cos(lam * sa) * sech(kPi * sa) / 2;
  const double term_s = fs * sin_over_sinh(lam, kPi, sa) / 2;
  return term0 - term_c + term_s;
}

double ft_alpha_zero(double beta, double s) {
  if (!(beta > 1.0)) throw std::domain_error("ft_alpha_zero: beta must exceed 1");
  const double lam = std::log(beta + std::sqrt(beta * beta - 1.0));
  return 2 * kPi * (1 - std::sqrt(2 / (beta + 1)) * std::cos(lam * s)) /
         ((beta - 1)) * sech(kPi * s);
}

double levy_density(LevyKind kind, double a, double param, double s) {
  if (!(a > 0)) throw std::domain_error("levy_density: a must be positive");
  if (s == 0.0) throw std::domain_error("levy_density: s = 0 is excluded");
  const double sa = std::abs(s);
  switch (kind) {
    case LevyKind::cos_kernel: {
      if (!(param >= 0 && param < kPi))
        throw std::domain_error("levy_density: theta must lie in [0, pi)");
      // cosh(theta s/a) / (s sinh(pi s/a)), even in s
      const double q = kPi * sa / a;
      double val;
      if (q < 25.0)
        val = std::cosh(param * sa / a) / (sa * std::sinh(q));
      else
        val = std::exp(param * sa / a - q) * (1 + std::exp(-2 * param * sa / a)) /
              (sa * (-std::expm1(-2 * q)));
      return val;
    }
    case LevyKind::cosh_kernel: {
      if (!(param >= 0)) throw std::domain_error("levy_density: lam must be >= 0");
      const double q = kPi * sa / a;
      double denom;
      if (q < 25.0)
        denom = sa * std::sinh(q);
      else
        denom = sa * std::exp(q) * (-std::expm1(-2 * q)) / 2;
      return std::cos(param * sa / a) / denom;
    }
  }
  throw std::logic_error("levy_density: unknown kind");
}

PdPredicate hyperbolic_pd_predicate(HyperbolicKind kind, double p1, double p2,
                                    double p3) {
  PdPredicate out;
  switch (kind) {
    case HyperbolicKind::cosh_beta: {
      if (!(p1 > -1)) throw std::domain_error("cosh_beta: beta must exceed -1");
      out.pd = p1 <= 1.0;
      out.infdiv = out.pd ? TriBool::yes : TriBool::no;
      return out;
    }
    case HyperbolicKind::sinh_ratio: {
      if (!(p1 > 0 && p2 > 0))
        throw std::domain_error("sinh_ratio: a, b must be positive");
      out.pd = p1 <= 1.0 && p2 <= 1.0;
      out.infdiv = out.pd ? TriBool::yes : TriBool::no;
      return out;
    }
    case HyperbolicKind::cosh_power_product: {
      const int k = static_cast<int>(p1), m = static_cast<int>(p2);
      if (k < 1 || m < 1 || p1 != k || p2 != m)
        throw std::domain_error("cosh_power_product: k, m must be integers >= 1");
      if (!(p3 > 1)) throw std::domain_error("cosh_power_product: beta must exceed 1");
      out.pd = k >= m;
      out.infdiv = (k >= 2 * m) ? TriBool::yes : TriBool::no;
      return out;
    }
  }
  throw std::logic_error("hyperbolic_pd_predicate: unknown kind");
}

namespace {

FamilyMembership extreme_membership(double nu) {
  return {nu == 1.0 ? TriBool::yes : TriBool::no,
          nu == 0.0 ? TriBool::yes : TriBool::no};
}

FamilyMembership bridge_membership(double mu, double nu, double lambda);

// growth exponent of sqrt(x) * extreme(nu)(x) as x -> inf: +1/2 at nu = 0,
// else -1/2; the dual family grows for every nu > 0
double ext_exponent(double nu) { return nu == 0.0 ? 0.5 : -0.5; }
double ext_dual_exponent(double nu) { return nu == 0.0 ? -0.5 : 0.5; }

FamilyMembership bridge_membership(double mu, double nu, double lambda) {
  if (lambda == 0.0) return extreme_membership(mu);
  if (lambda == 1.0) return extreme_membership(nu);
  if (mu == nu) return extreme_membership(mu);
  if (nu == 1.0) return bridge_membership(1.0, mu, 1.0 - lambda);
  FamilyMembership out;
  if (mu == 1.0) {
    if (nu == 0.0) {
      out.in_K_plus = lambda <= 0.5 ? TriBool::yes : TriBool::no;
      out.in_K_minus = lambda >= 0.5 ? TriBool::yes : TriBool::no;
      return out;
    }
    // 1/4 <= lambda_c(nu) <= 1/3; the gap is open
    if (lambda <= 0.25)
      out.in_K_plus = TriBool::yes;
    else if (lambda <= 1.0 / 3.0)
      out.in_K_plus = TriBool::unknown;
    else
      out.in_K_plus = TriBool::no;
    out.in_K_minus = TriBool::no;  // sqrt(x) * dual grows
    return out;
  }
  const double e_plus = (1 - lambda) * ext_exponent(mu) + lambda * ext_exponent(nu);
  out.in_K_plus = e_plus > 0 ? TriBool::no : TriBool::unknown;
  const double e_minus =
      (1 - lambda) * ext_dual_exponent(mu) + lambda * ext_dual_exponent(nu);
  out.in_K_minus = e_minus > 0 ? TriBool::no : TriBool::unknown;
  return out;
}

}  // namespace

FamilyMembership family_membership(const MetricKernel& k) {
  FamilyMembership out;
  const auto yes_iff = [](bool b) { return b ? TriBool::yes : TriBool::no; };
  switch (k.family) {
    case Family::extreme:
      return extreme_membership(k.p1);
    case Family::heinz:
      out.in_K_plus = TriBool::yes;
      out.in_K_minus = yes_iff(k.p1 == 0.5);
      return out;
    case Family::binomial:
      out.in_K_plus = yes_iff(k.p1 >= 0.0);
      out.in_K_minus = yes_iff(k.p1 <= 0.0);
      return out;
    case Family::power_difference:
      out.in_K_plus = yes_iff(k.p1 >= 0.5);
      out.in_K_minus = yes_iff(k.p1 <= 0.5);
      return out;
    case Family::wyd:
      out.in_K_plus = yes_iff(k.p1 >= 0.0 && k.p1 <= 1.0);
      out.in_K_minus = yes_iff(k.p1 <= -0.5 || k.p1 >= 1.5);
      return out;
    case Family::stolarsky:
      out.in_K_plus = yes_iff(k.p1 >= -1.0);
      out.in_K_minus = yes_iff(k.p1 <= -1.0);
      return out;
    case Family::stolarsky_dual:
      out.in_K_plus = yes_iff(k.p1 <= -1.0);
      out.in_K_minus = yes_iff(k.p1 >= -1.0);
      return out;
    case Family::sinh_bridge:
      out.in_K_plus = yes_iff(k.p1 <= 1.0);
      out.in_K_minus = yes_iff(k.p1 >= 1.0);
      return out;
    case Family::convex_combo: {
      const double nu = k.p1, lam = k.p2;
      if (lam == 0.0 || nu == 1.0)
        out.in_K_plus = TriBool::yes;
      else if (nu == 0.0)
        out.in_K_plus = TriBool::no;  // unbounded e^{t/2} profile
      else
        out.in_K_plus = yes_iff(lam <= newext_threshold(nu));
      out.in_K_minus = yes_iff(nu == 0.0 && lam == 1.0);
      return out;
    }
    case Family::geometric_bridge:
      return bridge_membership(k.p1, k.p2, k.p3);
    case Family::hansen_bridge: {
      const double lam = k.p1;
      if (lam == 0.0) return extreme_membership(1.0);
      if (lam == 1.0) return extreme_membership(0.0);
      out.in_K_plus = lam <= 0.25 ? TriBool::yes : TriBool::unknown;
      out.in_K_minus = TriBool::no;
      return out;
    }
    case Family::heron: {
      const double nu = k.p1, lam = k.p2;
      if (lam == 0.0) return {TriBool::yes, TriBool::yes};  // x^{-1/2}
      if (nu == 1.0) {
        out.in_K_plus = TriBool::yes;
        out.in_K_minus = TriBool::no;
        return out;
      }
      out.in_K_plus = TriBool::no;  // Heron combinations never re-enter K+
      if (nu == 0.0)
        out.in_K_minus = yes_iff(lam >= 0.5);
      else
        out.in_K_minus = TriBool::unknown;
      return out;
    }
    case Family::mixture: {
      if (k.parts.size() == 1) return family_membership(k.parts.front().second);
      bool all_plus = true;
      for (const auto& [w, part] : k.parts)
        all_plus = all_plus && family_membership(part).in_K_plus == TriBool::yes;
      out.in_K_plus = all_plus ? TriBool::yes : TriBool::unknown;  // K+ is convex
      out.in_K_minus = TriBool::unknown;                           // K- is not
      return out;
    }
    case Family::dual_of: {
      const FamilyMembership inner = family_membership(k.parts.front().second);
      return {inner.in_K_minus, inner.in_K_plus};
    }
  }
  return out;
}

double newext_threshold(double nu) {
  if (!(nu > 0.0 && nu < 1.0))
    throw std::domain_error("newext_threshold: nu must lie in (0, 1)");
  const double r = std::sqrt(nu);
  return 2 * r / ((1 + r) * (1 + r));
}

double convcomb_ft_numerator(double nu, double lam_mix, double s) {
  if (!(nu > 0.0 && nu < 1.0))
    throw std::domain_error("convcomb_ft_numerator: nu must lie in (0, 1)");
  if (!(lam_mix >= 0.0 && lam_mix <= 1.0))
    throw std::domain_error("convcomb_ft_numerator: lambda must lie in [0, 1]");
  const double beta = (1 + nu * nu) / (2 * nu);
  const double osc = std::log(beta + std::sqrt(beta * beta - 1.0));
  return 2 * (1 - lam_mix) + lam_mix * (1 + nu) / std::sqrt(nu) * std::cos(osc * s);
}

double convcomb_ft_numerator_min(double nu, double lam_mix) {
  if (!(nu > 0.0 && nu < 1.0))
    throw std::domain_error("convcomb_ft_numerator_min: nu must lie in (0, 1)");
  return 2 * (1 - lam_mix) - lam_mix * (1 + nu) / std::sqrt(nu);
}

}  // namespace kplus
