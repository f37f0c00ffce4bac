#include "nljc/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "nljc/error.hpp"

namespace nljc {

namespace {

constexpr double kPi = std::numbers::pi;

// g and dg/du multiplied by exp(-|Im gamma|) so that neither overflows when
// gamma = sqrt(L^2 + u) is far off the real axis. The positive scale factor
// is continuous in u, so it changes neither zeros, Newton steps nor winding.
struct ScaledG {
  cplx g;
  cplx dg;
  double log_scale;  // g_true = g * exp(log_scale)
};

ScaledG eval_scaled(double lambda, cplx u) {
  const double cl = std::cos(lambda);
  const double ls = lambda * std::sin(lambda);
  const cplx s = lambda * lambda + u;  // gamma^2
  const cplx gamma = std::sqrt(s);
  const double y = std::abs(gamma.imag());
  const double scale = std::exp(-y);

  cplx cos_g, sinc_g, dsinc_ds;
  if (std::abs(s) < 0.25) {
    // Power series in s: cos = sum (-s)^k/(2k)!, sinc = sum (-s)^k/(2k+1)!,
    // d sinc/ds = sum_{k>=1} k (-s)^{k-1} (-1) / (2k+1)!.
    cplx pw{1.0, 0.0};       // (-s)^k
    cplx pw_prev{0.0, 0.0};  // (-s)^{k-1}
    double fact_even = 1.0;  // (2k)!
    double fact_odd = 1.0;   // (2k+1)!
    cos_g = sinc_g = dsinc_ds = cplx{};
    for (int k = 0; k < 20; ++k) {
      if (k > 0) {
        fact_even *= (2.0 * k - 1.0) * (2.0 * k);
        fact_odd *= (2.0 * k) * (2.0 * k + 1.0);
        dsinc_ds -= static_cast<double>(k) * pw_prev / fact_odd;
      }
      cos_g += pw / fact_even;
      sinc_g += pw / fact_odd;
      pw_prev = pw;
      pw *= -s;
    }
    cos_g *= scale;
    sinc_g *= scale;
    dsinc_ds *= scale;
  } else {
    const double x = gamma.real();
    const double sy = gamma.imag() >= 0.0 ? 1.0 : -1.0;
    const double e = std::exp(-2.0 * y);
    const double ch = 0.5 * (1.0 + e);
    const double sh = sy * 0.5 * (1.0 - e);
    cos_g = cplx(std::cos(x) * ch, -std::sin(x) * sh);
    const cplx sin_g(std::sin(x) * ch, std::cos(x) * sh);
    sinc_g = sin_g / gamma;
    dsinc_ds = (cos_g - sinc_g) / (2.0 * s);
  }
  ScaledG out;
  out.g = cl * cos_g + ls * sinc_g + scale;
  out.dg = -0.5 * cl * sinc_g + ls * dsinc_ds;
  out.log_scale = y;
  return out;
}

double winding_segment(double lambda, double u_radius, double phi_a, cplx g_a, double phi_b,
                       cplx g_b, int depth) {
  const double min_mag = std::min(std::abs(g_a), std::abs(g_b));
  if (std::abs(g_b - g_a) < 0.5 * min_mag) return std::arg(g_b / g_a);
  if (depth > 48 || min_mag == 0.0)
    throw SearchExhaustedError("winding count: a zero of g lies on the integration contour");
  const double phi_m = 0.5 * (phi_a + phi_b);
  const cplx g_m = eval_scaled(lambda, std::polar(u_radius, phi_m)).g;
  return winding_segment(lambda, u_radius, phi_a, g_a, phi_m, g_m, depth + 1) +
         winding_segment(lambda, u_radius, phi_m, g_m, phi_b, g_b, depth + 1);
}

std::vector<cplx> sample_circle(double lambda, double u_radius, int count) {
  std::vector<cplx> g(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j)
    g[static_cast<std::size_t>(j)] =
        eval_scaled(lambda, std::polar(u_radius, 2.0 * kPi * j / count)).g;
  return g;
}

int circle_samples(double u_radius) {
  return 64 * (2 + static_cast<int>(std::ceil(std::sqrt(u_radius))));
}

// Newton iteration in the u-plane; returns false if it does not settle.
bool newton_u(double lambda, cplx& u) {
  for (int iter = 0; iter < 200; ++iter) {
    const auto v = eval_scaled(lambda, u);
    if (v.dg == cplx{}) return false;
    cplx step = v.g / v.dg;
    const double cap = 0.25 * std::max(1.0, std::abs(u));
    if (std::abs(step) > cap) step *= cap / std::abs(step);
    u -= step;
    if (!std::isfinite(u.real()) || !std::isfinite(u.imag())) return false;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(u))) return true;
  }
  // Near-double roots converge linearly; accept a tiny residual.
  return std::abs(eval_scaled(lambda, u).g) < 1e-12;
}

}  // namespace

GOfU g_of_u(double lambda, cplx u) {
  const auto v = eval_scaled(lambda, u);
  const double f = std::exp(v.log_scale);
  return {v.g * f, v.dg * f};
}

cplx g_function(double lambda, cplx z) { return g_of_u(lambda, z * z).value; }

cplx a_r_function(double lambda, cplx z) { return g_function(lambda, z) - 1.0; }

int count_zeros_u_disc(double lambda, double u_radius) {
  if (!(u_radius > 0.0)) return 0;
  const int m = circle_samples(u_radius);
  const auto g = sample_circle(lambda, u_radius, m);
  double total = 0.0;
  for (int j = 0; j < m; ++j) {
    const int next = (j + 1) % m;
    total += winding_segment(lambda, u_radius, 2.0 * kPi * j / m, g[static_cast<std::size_t>(j)],
                             2.0 * kPi * (j + 1) / m, g[static_cast<std::size_t>(next)], 0);
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

ConvergenceResult min_root(double lambda) {
  const double lam = std::abs(lambda);
  ConvergenceResult out;
  out.lambda = lam;
  if (lam == 0.0) {
    // g_0(z) = cos z + 1: double zero at z = pi.
    out.root = kPi;
    out.radius = kPi;
    return out;
  }

  const double z_window = kPi + 2.0 * lam + 5.0;
  double lo = 0.0;
  double hi = std::min(4.0, z_window);
  while (count_zeros_u_disc(lam, hi * hi) == 0) {
    if (hi >= z_window)
      throw SearchExhaustedError("min_root: no zero of g within |z| <= pi + 2|Lambda| + 5");
    lo = hi;
    hi = std::min(1.5 * hi, z_window);
  }

  for (int attempt = 0; attempt < 8; ++attempt) {
    while (hi - lo > 1e-4 * hi) {
      const double mid = 0.5 * (lo + hi);
      if (count_zeros_u_disc(lam, mid * mid) == 0)
        lo = mid;
      else
        hi = mid;
    }

    // Newton from the deepest minima of |g| on the bracketing circle.
    const double u_hi = hi * hi;
    const int m = circle_samples(u_hi);
    const auto g = sample_circle(lam, u_hi, m);
    std::vector<int> order(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) order[static_cast<std::size_t>(j)] = j;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return std::abs(g[static_cast<std::size_t>(a)]) < std::abs(g[static_cast<std::size_t>(b)]);
    });

    bool found = false;
    cplx best;
    const int starts = std::min(m, 16 << std::min(attempt, 4));
    for (int s = 0; s < starts; ++s) {
      cplx u = std::polar(u_hi, 2.0 * kPi * order[static_cast<std::size_t>(s)] / m);
      if (!newton_u(lam, u)) continue;
      if (std::abs(u) > u_hi * (1.0 + 1e-3)) continue;
      if (!found || std::abs(u) < std::abs(best)) {
        best = u;
        found = true;
      }
    }
    if (!found) continue;

    // Minimality certificate: no zero strictly inside a slightly smaller circle.
    const double inner = std::abs(best) * (1.0 - 1e-4);
    if (count_zeros_u_disc(lam, inner) != 0) {
      hi = std::sqrt(inner);
      lo = 0.0;
      continue;
    }
    out.root = std::sqrt(best);
    out.radius = std::sqrt(std::abs(best));
    return out;
  }
  throw SearchExhaustedError("min_root: root polishing failed for Lambda = " +
                             std::to_string(lambda));
}

double sufficient_bound(double kappa, double w_max) {
  if (w_max == 0.0) return std::numeric_limits<double>::infinity();
  return kPi / std::abs(kappa * w_max);
}

namespace {

void require_positive(double w_max, double kappa) {
  if (!(w_max > 0.0)) throw ConfigError("t_max: w_max must be > 0");
  if (!(kappa > 0.0)) throw ConfigError("t_max: kappa must be > 0");
}

// h(t) = |kappa w| t - r_{dw t / 2}; negative where the series converges.
double excess(double t, double delta_omega, double slope) {
  return slope * t - min_root(0.5 * delta_omega * t).radius;
}

// Fine scan step keeping both tau = slope t and Lambda = |dw| t / 2 moving by <= 0.02.
double scan_step(double delta_omega, double slope) {
  double dt = 0.02 / slope;
  if (delta_omega != 0.0) dt = std::min(dt, 0.04 / std::abs(delta_omega));
  return dt;
}

// Largest observed |dr/dLambda| is about 9, right at a root collision
// near Lambda = 1.96; elsewhere it stays near 1. Twice that is the margin.
constexpr double kRadiusRate = 20.0;

// Step that cannot carry h across zero given |h| and the rate bound above,
// never smaller than the fine step.
double safe_step(double h, double delta_omega, double slope) {
  const double rate = slope + 0.5 * kRadiusRate * std::abs(delta_omega);
  return std::max(scan_step(delta_omega, slope), 0.5 * std::abs(h) / rate);
}

// Boundary of h's sign change inside [a, b] (h(a) < 0 <= h(b) or reversed).
double bisect_crossing(double a, double b, double delta_omega, double slope) {
  const bool a_negative = excess(a, delta_omega, slope) < 0.0;
  while (b - a > 1e-7 * b) {
    const double mid = 0.5 * (a + b);
    if ((excess(mid, delta_omega, slope) < 0.0) == a_negative)
      a = mid;
    else
      b = mid;
  }
  return 0.5 * (a + b);
}

}  // namespace

double t_max(double delta_omega, double w_max, double kappa) {
  require_positive(w_max, kappa);
  const double slope = std::abs(kappa * w_max);
  if (delta_omega == 0.0) return kPi / slope;

  // r >= pi, so nothing crosses before pi / slope. The loop bound only
  // guards against a runaway scan.
  const double t_limit = 1e8 / slope;
  double prev = 0.0;
  double t = 0.99 * kPi / slope;
  while (t < t_limit) {
    const double h = excess(t, delta_omega, slope);
    if (h >= 0.0) return bisect_crossing(prev, t, delta_omega, slope);
    prev = t;
    t += safe_step(h, delta_omega, slope);
  }
  throw SearchExhaustedError("t_max: no crossing found");
}

bool converges_at(double t, double t0, double delta_omega, double w_max, double kappa) {
  if (!(t >= t0)) throw std::invalid_argument("converges_at requires t >= t0");
  const double tau = t - t0;
  if (tau == 0.0) return true;
  return std::abs(kappa * w_max) * tau < min_root(0.5 * delta_omega * tau).radius;
}

std::vector<std::pair<double, double>> reconvergence_intervals(double delta_omega, double w_max,
                                                               double kappa, double t_limit) {
  require_positive(w_max, kappa);
  const double slope = std::abs(kappa * w_max);
  const double start = t_max(delta_omega, w_max, kappa);
  std::vector<std::pair<double, double>> out;
  if (delta_omega == 0.0 || t_limit <= start) return out;

  double prev = start;
  bool prev_conv = false;
  double open = 0.0;
  double t = start + scan_step(delta_omega, slope);
  while (t <= t_limit) {
    const double h = excess(t, delta_omega, slope);
    const bool conv = h < 0.0;
    if (conv && !prev_conv) open = bisect_crossing(prev, t, delta_omega, slope);
    if (!conv && prev_conv) out.emplace_back(open, bisect_crossing(prev, t, delta_omega, slope));
    prev = t;
    prev_conv = conv;
    if (t == t_limit) break;
    t = std::min(t + safe_step(h, delta_omega, slope), t_limit);
  }
  if (prev_conv) out.emplace_back(open, t_limit);
  return out;
}

}  // namespace nljc
