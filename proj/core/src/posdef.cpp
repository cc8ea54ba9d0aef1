#include "kplus/posdef.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cfloat>
#include <cmath>
#include <stdexcept>

#include "kplus/rng.hpp"

namespace kplus {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::positive_definite: return "positive_definite";
    case Verdict::not_positive_definite: return "not_positive_definite";
    default: return "inconclusive";
  }
}

const char* method_name(PdMethod m) {
  switch (m) {
    case PdMethod::gram: return "gram";
    case PdMethod::fourier: return "fourier";
    case PdMethod::closed_form: return "closed_form";
    default: return "unbounded";
  }
}

const char* membership_class_name(MembershipClass c) {
  switch (c) {
    case MembershipClass::k_plus_only: return "in_K_plus";
    case MembershipClass::k_minus_only: return "in_K_minus";
    case MembershipClass::both: return "in_K_plus_and_K_minus";
    case MembershipClass::neither: return "neither";
    default: return "inconclusive";
  }
}

nlohmann::json verdict_to_json(const PosDefVerdict& v) {
  nlohmann::json w;
  if (v.verdict == Verdict::not_positive_definite) {
    w = {{"kind", method_name(v.method)},
         {"worst_point", v.detail.worst_point},
         {"worst_value", v.detail.worst_value},
         {"tail_bound", v.detail.tail_bound},
         {"floor", v.detail.floor}};
    if (!v.detail.witness_points.empty()) {
      w["points"] = v.detail.witness_points;
      w["min_eigenvalue"] = v.detail.witness_min_eig;
    }
  } else {
    w = nullptr;
  }
  return nlohmann::json{{"verdict", verdict_name(v.verdict)},
                        {"margin", v.margin},
                        {"method", method_name(v.method)},
                        {"witness", w},
                        {"note", v.detail.note}};
}

namespace {

constexpr long double kEpsLd = LDBL_EPSILON;  // 2^-63 on x86-64

// trapezoid sum  2 dt sum_j' v_j cos(s j dt)  (ends half-weighted), computed
// with a resynchronized phase rotation and Kahan compensation so the roundoff
// floor stays a small multiple of eps * integral(|v|)
long double cos_sum_trap(const std::vector<long double>& v, long double dt,
                         long double s, int resync) {
  const int n = static_cast<int>(v.size());
  const long double phi = s * dt;
  const long double cd = std::cos(phi), sd = std::sin(phi);
  long double acc = 0.0L, comp = 0.0L, c = 1.0L, sn = 0.0L;
  for (int j = 0; j < n; ++j) {
    if (j % resync == 0) {
      const long double a = phi * static_cast<long double>(j);
      c = std::cos(a);
      sn = std::sin(a);
    }
    long double term = v[j] * c;
    if (j == 0 || j == n - 1) term *= 0.5L;
    const long double y = term - comp;
    const long double t = acc + y;
    comp = (t - acc) - y;
    acc = t;
    const long double cn = c * cd - sn * sd;
    sn = c * sd + sn * cd;
    c = cn;
  }
  return 2.0L * dt * acc;
}

struct ScanResult {
  double min_value = 0.0;
  double min_s = 0.0;
  double max_abs = 0.0;
  std::vector<double> values;  // stage-A grid values
};

constexpr int kNumFreq = 2048;
constexpr double kFreqMax = 32.0;
constexpr int kResyncCoarse = 256;
constexpr int kResyncExact = 4;
constexpr double kSubgridStep = 0.1;  // exact-phase safety net for shallow dips

ScanResult scan_transform(const std::vector<long double>& v, long double dt) {
  ScanResult r;
  r.values.resize(kNumFreq);
  const double ds = kFreqMax / kNumFreq;
  r.min_value = 1e300;
  for (int i = 0; i < kNumFreq; ++i) {
    const double s = i * ds;
    const double val =
        static_cast<double>(cos_sum_trap(v, dt, (long double)s, kResyncCoarse));
    r.values[i] = val;
    r.max_abs = std::max(r.max_abs, std::abs(val));
    if (val < r.min_value) {
      r.min_value = val;
      r.min_s = s;
    }
  }
  return r;
}

double golden_refine(const std::vector<long double>& v, long double dt, double lo,
                     double hi, double& best_s) {
  const double gr = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = static_cast<double>(cos_sum_trap(v, dt, x1, kResyncExact));
  double f2 = static_cast<double>(cos_sum_trap(v, dt, x2, kResyncExact));
  for (int it = 0; it < 30; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = static_cast<double>(cos_sum_trap(v, dt, x1, kResyncExact));
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = static_cast<double>(cos_sum_trap(v, dt, x2, kResyncExact));
    }
  }
  best_s = (f1 < f2) ? x1 : x2;
  return std::min(f1, f2);
}

struct WindowData {
  std::vector<long double> v;  // h(j dt), j = 0..N, possibly offset-subtracted
  long double dt = 0;
  double T = 0;
  double l1 = 0;       // 2 dt sum |v| ~ integral of |h|
  double offset = 0;   // subtracted limit
  double tail = 0;     // truncation bound for the transform
  double decay = 0;    // fitted exponential rate
  bool tail_ok = false;
};

// exponential tail fit over the last stretch of the window
void fit_tail(WindowData& w) {
  const int n = static_cast<int>(w.v.size());
  auto window_max = [&](double t0, double t1) {
    long double m = 0;
    const int j0 = std::max(0, (int)(t0 / (double)w.dt));
    const int j1 = std::min(n - 1, (int)(t1 / (double)w.dt));
    for (int j = j0; j <= j1; ++j) m = std::max(m, std::abs(w.v[j]));
    return static_cast<double>(m);
  };
  const double a1 = window_max(0.72 * w.T, 0.82 * w.T);
  const double a2 = window_max(0.95 * w.T, w.T);
  if (a2 == 0.0) {  // fully decayed inside the window
    w.decay = 1e9;
    w.tail = 0.0;
    w.tail_ok = true;
    return;
  }
  if (a1 <= a2 || a1 == 0.0) {
    w.decay = 0.0;
    w.tail = 1e300;
    w.tail_ok = false;
    return;
  }
  w.decay = std::log(a1 / a2) / (0.155 * w.T);
  w.tail = 2.5 * a2 / std::max(w.decay, 1e-8);
  w.tail_ok = w.decay >= 0.125;
}

PosDefVerdict make_npd(PdMethod method, double margin, PosDefDetail detail) {
  PosDefVerdict out;
  out.verdict = Verdict::not_positive_definite;
  out.method = method;
  out.margin = margin;
  out.detail = std::move(detail);
  return out;
}

// Kolmogorov-density certificate: for strictly positive even h with h(0)=1,
// nonnegativity of n(s) = -(1/2pi) FT[ (log h)'' ](s) exhibits h as the
// characteristic function of an infinitely divisible law, hence positive
// definite.  Numerically certified up to a finite-difference/quadrature floor.
bool levy_certificate(const std::vector<long double>& v_orig, long double dt,
                      PosDefDetail& detail) {
  const int n = static_cast<int>(v_orig.size());
  int cut = n;
  for (int j = 0; j < n; ++j) {
    if (!(v_orig[j] > 1e-300L)) {
      cut = j;
      break;
    }
  }
  std::vector<long double> psi(cut);
  for (int j = 0; j < cut; ++j) psi[j] = std::log(v_orig[j]);

  const int m = std::max(1, (int)std::lround(0.05 / (double)dt));
  if (cut < 8 * m) return false;
  const int nd = cut - 3 * m;
  std::vector<long double> dd(nd);
  const long double h2 = (long double)(m) * dt * (long double)(m)*dt;
  long double max_dd = 0;
  for (int j = 0; j < nd; ++j) {
    auto at = [&](int k) { return psi[std::abs(j + k * m)]; };
    dd[j] = (2 * (at(-3) + at(3)) - 27 * (at(-2) + at(2)) +
             270 * (at(-1) + at(1)) - 490 * at(0)) /
            (180 * h2);
    max_dd = std::max(max_dd, std::abs(dd[j]));
  }
  // bound the truncated psi'' tail with a fitted exponential
  double tail_psi = 0;
  {
    auto window_max = [&](double f0, double f1) {
      long double mx = 0;
      for (int j = (int)(f0 * nd); j < std::min(nd, (int)(f1 * nd)); ++j)
        mx = std::max(mx, std::abs(dd[j]));
      return (double)mx;
    };
    const double a1 = window_max(0.72, 0.82), a2 = window_max(0.93, 1.0);
    const double span = 0.175 * nd * (double)dt;
    if (a2 == 0.0) {
      tail_psi = 0.0;
    } else if (a1 <= a2) {
      return false;  // psi'' not decaying: no usable certificate
    } else {
      const double rate = std::log(a1 / a2) / span;
      tail_psi = 2.5 * a2 / std::max(rate, 1e-8) / (2 * M_PI);
    }
  }

  const double ds = kFreqMax / kNumFreq;
  double min_n = 1e300, min_s = 0, max_n = 0, l1 = 0;
  for (int j = 0; j < nd; ++j) l1 += std::abs((double)dd[j]);
  l1 *= 2 * (double)dt;
  for (int i = 0; i < kNumFreq; ++i) {
    const double s = i * ds;
    const double val =
        -static_cast<double>(cos_sum_trap(dd, dt, (long double)s, kResyncCoarse)) /
        (2 * M_PI);
    max_n = std::max(max_n, std::abs(val));
    if (val < min_n) {
      min_n = val;
      min_s = s;
    }
  }
  // floor: finite-difference truncation + psi'' tail + transform roundoff
  const double floor_fd =
      1e-8 * (1.0 + max_n) + tail_psi + 400 * (double)kEpsLd * l1;
  detail.note += "; kolmogorov-density certificate: min density " +
                 std::to_string(min_n) + " at s=" + std::to_string(min_s) +
                 " (floor " + std::to_string(floor_fd) + ")";
  return min_n >= -floor_fd;
}

}  // namespace

double windowed_cosine_transform(const RealFn& h, double halfwidth, int samples,
                                 double s) {
  const long double dt = (long double)halfwidth / samples;
  std::vector<long double> v(samples + 1);
  for (int j = 0; j <= samples; ++j) v[j] = h(dt * j);
  return static_cast<double>(cos_sum_trap(v, dt, (long double)s, kResyncExact));
}

PosDefVerdict fourier_test(const RealFn& h, const TestConfig& cfg) {
  const double h0 = static_cast<double>(h(0.0L));
  if (!std::isfinite(h0)) throw std::domain_error("fourier_test: h(0) is not finite");

  // evenness gate: asymmetric inputs are rejected, not symmetrized
  const double even_scale = std::max(1.0, std::abs(h0));
  for (double t : {0.37, 1.23, 3.7, 9.4, 17.3, 0.5 * cfg.fourier_halfwidth,
                   0.83 * cfg.fourier_halfwidth}) {
    const double a = static_cast<double>(h((long double)t));
    const double b = static_cast<double>(h((long double)-t));
    if (std::abs(a - b) > 1e-10 * even_scale)
      throw std::domain_error("fourier_test: h is not even (|h(t)-h(-t)| = " +
                              std::to_string(std::abs(a - b)) + " at t = " +
                              std::to_string(t) + ")");
  }

  if (h0 < 0) {
    PosDefDetail d;
    d.note = "h(0) < 0";
    d.worst_point = 0.0;
    d.worst_value = h0;
    d.witness_points = {0.0};
    d.witness_min_eig = h0;
    return make_npd(PdMethod::gram, -1.0, std::move(d));
  }

  double T = cfg.fourier_halfwidth;
  int N = cfg.fourier_samples;
  WindowData w;
  std::vector<long double> v_orig;
  PosDefDetail detail;

  for (;;) {
    w.T = T;
    w.dt = (long double)T / N;
    w.v.assign(N + 1, 0.0L);
    int overshoot_j = -1;
    for (int j = 0; j <= N; ++j) {
      w.v[j] = h(w.dt * j);
      if (!std::isfinite((double)w.v[j]))
        throw std::domain_error("fourier_test: h not finite at t = " +
                                std::to_string((double)(w.dt * j)));
      if (overshoot_j < 0 && j > 0 &&
          std::abs((double)w.v[j]) > std::abs(h0) * (1.0 + 1e-12) + 1e-300)
        overshoot_j = j;
    }
    v_orig = w.v;

    // |h(t)| <= h(0) is necessary; growth at the window edge reports as
    // unbounded, an interior overshoot as a two-point Gram witness
    if (overshoot_j >= 0) {
      int j = overshoot_j;
      bool edge = false;
      if (std::abs((double)w.v[N]) > std::abs(h0) * (1.0 + 1e-12)) {
        j = N;
        edge = true;
      }
      const double t = (double)(w.dt * j);
      const double val = (double)w.v[j];
      PosDefDetail d;
      d.worst_point = t;
      d.worst_value = val;
      d.witness_points = {0.0, t};
      d.witness_min_eig = h0 - std::abs(val);
      d.window = T;
      d.note = edge ? "h grows toward the window edge" : "|h(t)| exceeds h(0)";
      const double margin = (h0 - std::abs(val)) / std::max(std::abs(val), 1e-300);
      return make_npd(edge ? PdMethod::unbounded : PdMethod::gram,
                      std::max(-1e300, margin), std::move(d));
    }

    // constant h: the point mass at the origin
    long double dev = 0;
    for (int j = 0; j <= N; ++j) dev = std::max(dev, std::abs(w.v[j] - (long double)h0));
    if ((double)dev <= 1e-12 * std::max(1.0, std::abs(h0))) {
      PosDefVerdict out;
      out.verdict = Verdict::positive_definite;
      out.method = PdMethod::closed_form;
      out.margin = 0.0;
      out.detail.note = "constant function: transform is a point mass at 0";
      out.detail.window = T;
      return out;
    }

    // limit at infinity: split off the h(inf) * delta_0 component
    const long double c_inf = w.v[N];
    long double flat_dev = 0;
    for (int j = (int)(0.9 * N); j <= N; ++j)
      flat_dev = std::max(flat_dev, std::abs(w.v[j] - c_inf));
    const bool flat = (double)flat_dev <=
                      std::max(1e-11 * std::max(1.0, std::abs(h0)),
                               1e-9 * std::abs((double)c_inf));
    if (flat && std::abs((double)c_inf) > 1e-13 * std::max(1.0, std::abs(h0))) {
      if ((double)c_inf < 0) {
        PosDefDetail d;
        d.note = "h approaches a negative limit at infinity";
        d.worst_point = T;
        d.worst_value = (double)c_inf;
        d.window = T;
        for (int k = 0; k < 6; ++k)
          d.witness_points.push_back(0.9 * T + 0.02 * k * T);
        d.witness_min_eig = (double)c_inf;
        return make_npd(PdMethod::fourier, (double)c_inf / std::abs(h0),
                        std::move(d));
      }
      for (auto& x : w.v) x -= c_inf;
      w.offset = (double)c_inf;
    }

    fit_tail(w);
    w.l1 = 0;
    for (int j = 0; j <= N; ++j) w.l1 += std::abs((double)w.v[j]);
    w.l1 *= 2 * (double)w.dt;

    const double tol_proxy = std::max(cfg.tolerance * std::max(w.l1, 1.0),
                                      40 * (double)kEpsLd * w.l1);
    if ((!w.tail_ok || w.tail > tol_proxy) && T < 320.0) {
      T *= 2;
      N *= 2;
      continue;
    }
    break;
  }

  double min_ref = 0, min_ref_s = 0, scan_min = 0, scale = 1, floor_coarse = 0,
         floor_exact = 0, tol_abs = 0;
  for (;;) {
    // stage A: fast coarse-resync scan (scale and obvious violations)
    const ScanResult scan = scan_transform(w.v, w.dt);
    floor_coarse = 400 * (double)kEpsLd * std::max(w.l1, 1e-30);
    floor_exact = 24 * (double)kEpsLd * std::max(w.l1, 1e-30);
    scale = std::max(scan.max_abs, 1e-300);
    tol_abs = cfg.tolerance * scale;
    scan_min = scan.min_value;

    // stage B: exact-phase subgrid; shallow dips that coarse noise can mask
    // are wide in s, so a 0.1 spacing cannot miss them
    min_ref = static_cast<double>(
        cos_sum_trap(w.v, w.dt, (long double)scan.min_s, kResyncExact));
    min_ref_s = scan.min_s;
    for (double s = 0.0; s <= kFreqMax + 1e-9; s += kSubgridStep) {
      const double val =
          static_cast<double>(cos_sum_trap(w.v, w.dt, (long double)s, kResyncExact));
      if (val < min_ref) {
        min_ref = val;
        min_ref_s = s;
      }
    }
    {
      double s_best = min_ref_s;
      const double refined =
          golden_refine(w.v, w.dt, std::max(0.0, min_ref_s - kSubgridStep),
                        std::min(kFreqMax, min_ref_s + kSubgridStep), s_best);
      if (refined < min_ref) {
        min_ref = refined;
        min_ref_s = s_best;
      }
    }

    // a negative minimum that the truncation tail could explain is ambiguous:
    // widen the window until the tail is below the roundoff floor
    const bool refutable = min_ref < -(tol_abs + w.tail + floor_exact);
    const bool tail_ambiguous =
        min_ref < -3 * floor_exact && w.tail > floor_exact && w.T < 320.0;
    if (!refutable && tail_ambiguous) {
      const double T2 = w.T * 2;
      const int N2 = 2 * (static_cast<int>(w.v.size()) - 1);
      w.T = T2;
      w.dt = (long double)T2 / N2;
      w.v.assign(N2 + 1, 0.0L);
      for (int j = 0; j <= N2; ++j) w.v[j] = h(w.dt * j) - (long double)w.offset;
      // the widened window can reveal a boundedness violation
      for (int j = 0; j <= N2; ++j) {
        if (std::abs((double)w.v[j] + w.offset) > std::abs(h0) * (1.0 + 1e-12)) {
          const double t = (double)(w.dt * j);
          PosDefDetail d;
          d.worst_point = t;
          d.worst_value = (double)w.v[j] + w.offset;
          d.witness_points = {0.0, t};
          d.witness_min_eig = h0 - std::abs(d.worst_value);
          d.window = T2;
          d.note = "h exceeds h(0) inside the widened window";
          return make_npd(t >= 0.5 * T2 ? PdMethod::unbounded : PdMethod::gram,
                          (h0 - std::abs(d.worst_value)) /
                              std::max(std::abs(d.worst_value), 1e-300),
                          std::move(d));
        }
      }
      fit_tail(w);
      w.l1 = 0;
      for (int j = 0; j <= N2; ++j) w.l1 += std::abs((double)w.v[j]);
      w.l1 *= 2 * (double)w.dt;
      continue;
    }
    break;
  }

  detail.offset = w.offset;
  detail.window = w.T;
  detail.tail_bound = w.tail;
  detail.worst_point = min_ref_s;
  detail.worst_value = min_ref;
  detail.floor = floor_exact;
  detail.scale = scale;

  // provably negative: beyond the quantified tail + roundoff budget, with the
  // user tolerance on top for the refutation verdict itself
  const bool provably_negative = min_ref < -(w.tail + floor_exact);
  const bool refutes = min_ref < -(tol_abs + w.tail + floor_exact);
  if (refutes) {
    PosDefVerdict out;
    out.verdict = Verdict::not_positive_definite;
    out.method = PdMethod::fourier;
    out.margin = min_ref / scale;
    out.detail = detail;
    out.detail.note = "transform negative at s = " + std::to_string(min_ref_s);
    return out;
  }
  if (provably_negative) {
    // real violation smaller than the configured tolerance: never certify
    PosDefVerdict out;
    out.verdict = Verdict::inconclusive;
    out.method = PdMethod::fourier;
    out.margin = min_ref / scale;
    out.detail = detail;
    out.detail.note =
        "transform provably negative (" + std::to_string(min_ref) +
        " at s = " + std::to_string(min_ref_s) + ") but inside the tolerance band";
    return out;
  }

  const bool coarse_clean = scan_min >= -(tol_abs + floor_coarse);
  const bool exact_clean = min_ref >= -(tol_abs + floor_exact);
  const bool tail_small = w.tail <= std::max(tol_abs, 10 * floor_coarse);
  if (coarse_clean && exact_clean && tail_small && w.tail_ok) {
    PosDefVerdict out;
    out.verdict = Verdict::positive_definite;
    out.method = PdMethod::fourier;
    out.margin = std::max(0.0, min_ref / scale);
    out.detail = detail;
    out.detail.note = "transform nonnegative within tolerance";
    return out;
  }

  // inconclusive so far; a Kolmogorov-density certificate can still certify
  // strictly positive slowly-decaying h
  bool positive_everywhere = true;
  for (const auto& x : v_orig)
    if (!(x > 0.0L)) {
      positive_everywhere = false;
      break;
    }
  if (positive_everywhere && h0 > 0) {
    PosDefDetail ld = detail;
    ld.note = w.tail_ok ? "direct transform inconclusive"
                        : "slow decay: direct transform tail uncontrolled";
    if (levy_certificate(v_orig, w.dt, ld)) {
      PosDefVerdict out;
      out.verdict = Verdict::positive_definite;
      out.method = PdMethod::fourier;
      out.margin = 0.0;
      out.detail = std::move(ld);
      return out;
    }
    detail.note = ld.note;
  }

  PosDefVerdict out;
  out.verdict = Verdict::inconclusive;
  out.method = PdMethod::fourier;
  out.margin = min_ref / scale;
  out.detail = detail;
  if (out.detail.note.empty())
    out.detail.note = w.tail_ok ? "margin inside the error band"
                                : "tail not controlled within the window";
  return out;
}

PosDefVerdict gram_test(const RealFn& h, const TestConfig& cfg, std::uint64_t seed) {
  const double h0 = static_cast<double>(h(0.0L));
  if (!std::isfinite(h0) || h0 <= 0)
    throw std::domain_error("gram_test: h(0) must be positive and finite");

  const int n = cfg.gram_size;
  double worst = 1e300;
  std::vector<double> worst_points;

  for (int trial = 0; trial < cfg.gram_trials; ++trial) {
    Rng rng(seed, 1000 + trial);
    std::vector<double> pts;
    pts.reserve(n);
    // half uniform, half geometric progression with ratio 1.5
    for (int i = 0; i < n / 2; ++i)
      pts.push_back(rng.uniform(-cfg.point_scale, cfg.point_scale));
    double t0 = cfg.point_scale * std::pow(10.0, -rng.uniform(0.0, 2.5));
    double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
    double t = t0;
    while ((int)pts.size() < n) {
      pts.push_back(sign * t);
      sign = -sign;
      t *= 1.5;
      if (t > cfg.point_scale) t = t0 * (1.0 + rng.uniform());
    }
    Eigen::MatrixXd gram(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) {
        const double val = static_cast<double>(h((long double)(pts[i] - pts[j])));
        gram(i, j) = val;
        gram(j, i) = val;
      }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
    const double mineig = es.eigenvalues()(0);
    if (mineig < worst) {
      worst = mineig;
      worst_points = pts;
    }
  }

  PosDefVerdict out;
  out.method = PdMethod::gram;
  out.margin = worst / h0;
  out.detail.worst_value = worst;
  out.detail.witness_min_eig = worst;
  if (worst < -cfg.tolerance * h0) {
    out.verdict = Verdict::not_positive_definite;
    out.detail.witness_points = std::move(worst_points);
    out.detail.note = "Gram matrix has a negative eigenvalue";
  } else {
    // finite point sets never certify positivity
    out.verdict = Verdict::inconclusive;
    out.detail.note = "no violation found over sampled Gram matrices";
  }
  return out;
}

namespace {

RealFn cp_profile(const MetricKernel& k) {
  return [k](long double t) -> long double {
    return std::exp(t / 2.0L) * k.eval_ld(std::exp(t));
  };
}

}  // namespace

PosDefVerdict cp_test(const MetricKernel& k, const TestConfig& cfg) {
  const RealFn h = cp_profile(k);
  PosDefVerdict v = fourier_test(h, cfg);
  if (v.verdict == Verdict::not_positive_definite && v.method == PdMethod::fourier) {
    const PosDefVerdict g = gram_test(h, cfg);
    v.detail.gram_cross_checked = true;
    v.detail.gram_agrees = g.verdict == Verdict::not_positive_definite;
  }
  return v;
}

MembershipResult membership(const MetricKernel& k, const TestConfig& cfg) {
  MembershipResult r;
  r.plus = cp_test(k, cfg);
  r.minus = cp_test(dual(k), cfg);
  const bool p_pd = r.plus.verdict == Verdict::positive_definite;
  const bool p_npd = r.plus.verdict == Verdict::not_positive_definite;
  const bool m_pd = r.minus.verdict == Verdict::positive_definite;
  const bool m_npd = r.minus.verdict == Verdict::not_positive_definite;
  if (p_pd && m_pd)
    r.classification = MembershipClass::both;  // only x^{-1/2} can land here
  else if (p_pd && m_npd)
    r.classification = MembershipClass::k_plus_only;
  else if (p_npd && m_pd)
    r.classification = MembershipClass::k_minus_only;
  else if (p_npd && m_npd)
    r.classification = MembershipClass::neither;
  else
    r.classification = MembershipClass::inconclusive;
  return r;
}

PosDefVerdict order_test(const MetricKernel& k1, const MetricKernel& k2,
                         const TestConfig& cfg) {
  const RealFn h = [k1, k2](long double t) -> long double {
    const long double x = std::exp(t);
    return k1.eval_ld(x) / k2.eval_ld(x);
  };
  return fourier_test(h, cfg);
}

std::vector<PosDefVerdict> infdiv_test(const RealFn& h, const std::vector<double>& powers,
                                       const TestConfig& cfg) {
  for (double t : {0.0, 0.5, 2.0, 11.0, 33.0, 77.0}) {
    if (!(static_cast<double>(h((long double)t)) > 0.0))
      throw std::domain_error("infdiv_test: h must be strictly positive");
  }
  std::vector<PosDefVerdict> out;
  out.reserve(powers.size());
  for (double r : powers) {
    if (!(r > 0.0 && r <= 1.0))
      throw std::domain_error("infdiv_test: powers must lie in (0, 1]");
    const RealFn hr = [h, r](long double t) -> long double {
      return std::pow(h(t), (long double)r);
    };
    out.push_back(fourier_test(hr, cfg));
  }
  return out;
}

namespace {

// cp verdict with a tolerance ladder: retry inconclusive points with the
// tolerance dropped to the quantified error budget before giving up on them
Verdict cp_with_ladder(const MetricKernel& k, const TestConfig& cfg) {
  PosDefVerdict v = cp_test(k, cfg);
  if (v.verdict != Verdict::inconclusive) return v.verdict;
  TestConfig tight = cfg;
  tight.tolerance = 0.0;
  v = cp_test(k, tight);
  return v.verdict;
}

}  // namespace

CriticalBracket critical_search(const std::function<MetricKernel(double)>& family,
                                double lo, double hi, const TestConfig& cfg,
                                double target_width) {
  if (!(hi > lo)) throw std::invalid_argument("critical_search: empty range");
  const Verdict v_lo = cp_with_ladder(family(lo), cfg);
  const Verdict v_hi = cp_with_ladder(family(hi), cfg);
  if (v_lo == Verdict::inconclusive || v_hi == Verdict::inconclusive)
    throw std::domain_error("critical_search: endpoint verdict inconclusive");
  if (v_lo == v_hi)
    throw std::domain_error(
        "critical_search: endpoints agree, no membership crossing in range");

  CriticalBracket br;
  br.lo = lo;
  br.hi = hi;
  const Verdict lo_kind = v_lo;

  int evals = 0;
  while (br.width() > target_width && evals < 64) {
    bool moved = false;
    // midpoint first, then conservative off-center probes
    for (double frac : {0.5, 0.375, 0.625, 0.25, 0.75}) {
      const double m = br.lo + frac * br.width();
      ++evals;
      const Verdict vm = cp_with_ladder(family(m), cfg);
      if (vm == lo_kind) {
        br.lo = m;
        moved = true;
        break;
      }
      if (vm != Verdict::inconclusive) {
        br.hi = m;
        moved = true;
        break;
      }
      br.inconclusive_points.push_back(m);
    }
    if (!moved) break;  // everything near the boundary is inside the error band
  }
  return br;
}

}  // namespace kplus
