#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace kplus {

// Adaptive Gauss-Kronrod (G7, K15) on [a, b]; subdivides until the local
// error estimate is below max(abs_tol, rel_tol * |whole|).
double integrate_gk(const std::function<double(double)>& f, double a, double b,
                    double abs_tol = 1e-12, double rel_tol = 1e-12,
                    int max_depth = 40);

// FT of an even function: 2 * int_0^T h(t) cos(s t) dt with T chosen so the
// integrand tail is below `tail_cut`.
double fourier_cos_even(const std::function<double(double)>& h, double s,
                        double tail_cut = 1e-14, double abs_tol = 1e-11);

// n-point Gauss-Legendre nodes and weights on [0, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre_01(int n);

}  // namespace kplus
