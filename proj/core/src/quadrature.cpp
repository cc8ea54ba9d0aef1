#include "kplus/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace kplus {

namespace {

// Kronrod-15 abscissae on [0,1] side (symmetric) with K15 weights; the G7
// subset sits at the odd indices.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct GkResult {
  double value;
  double error;
};

GkResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double resk = 0.0, resg = 0.0;
  for (int j = 0; j < 8; ++j) {
    const double dx = h * kXgk[j];
    const double f1 = f(c - dx);
    const double f2 = (j == 7) ? f1 : f(c + dx);
    const double fsum = (j == 7) ? f1 : f1 + f2;
    resk += kWgk[j] * fsum;
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
  }
  resk *= h;
  resg *= h;
  return {resk, std::abs(resk - resg)};
}

void adapt(const std::function<double(double)>& f, double a, double b,
           double abs_tol, double rel_tol, double whole_scale, int depth,
           int max_depth, double& acc) {
  const GkResult r = gk15(f, a, b);
  const double tol = std::max(abs_tol, rel_tol * whole_scale);
  if (r.error <= tol * std::max(1e-3, (b - a)) || depth >= max_depth) {
    acc += r.value;
    return;
  }
  const double m = 0.5 * (a + b);
  adapt(f, a, m, abs_tol, rel_tol, whole_scale, depth + 1, max_depth, acc);
  adapt(f, m, b, abs_tol, rel_tol, whole_scale, depth + 1, max_depth, acc);
}

}  // namespace

double integrate_gk(const std::function<double(double)>& f, double a, double b,
                    double abs_tol, double rel_tol, int max_depth) {
  if (!(b > a)) return 0.0;
  const GkResult first = gk15(f, a, b);
  double acc = 0.0;
  adapt(f, a, b, abs_tol, rel_tol, std::abs(first.value), 0, max_depth, acc);
  return acc;
}

double fourier_cos_even(const std::function<double(double)>& h, double s,
                        double tail_cut, double abs_tol) {
  double T = 20.0;
  while (T < 400.0 && std::abs(h(T)) > tail_cut) T *= 1.5;
  const double sa = std::abs(s);
  // keep panels a fraction of the oscillation period
  const double panel = (sa > 1.0) ? 6.283185307179586 / sa : 6.283185307179586;
  double acc = 0.0;
  double a = 0.0;
  while (a < T) {
    const double b = std::min(T, a + panel);
    acc += integrate_gk([&](double t) { return h(t) * std::cos(s * t); }, a, b,
                        abs_tol / (1.0 + T / panel), 1e-13);
    a = b;
  }
  return 2.0 * acc;
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre_01(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre_01: n >= 1 required");
  std::vector<double> x(n), w(n);
  // Newton iteration on Legendre polynomials over [-1, 1]
  for (int i = 0; i < n; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = 0.5 * (1.0 - z);  // map to [0,1], ascending later
    w[i] = 1.0 / ((1.0 - z * z) * pp * pp);
  }
  return {x, w};
}

}  // namespace kplus
