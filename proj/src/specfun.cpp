#include "nljc/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "nljc/error.hpp"

namespace nljc {

void ModelParams::validate() const {
  const double values[] = {eta, delta_phi, theta, delta_omega, kappa_abs, nu, omega21};
  for (double v : values) {
    if (!std::isfinite(v)) throw ConfigError("model parameters must be finite");
  }
  if (k < 0) throw ConfigError("sideband order k must be >= 0, got " + std::to_string(k));
  if (!(eta > 0.0)) throw ConfigError("Lamb-Dicke parameter eta must be > 0");
  if (!(kappa_abs > 0.0)) throw ConfigError("coupling magnitude kappa_abs must be > 0");
}

double laguerre(int n, int k, double x) {
  if (n < 0) throw std::invalid_argument("laguerre: n must be >= 0");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + k - x;
  for (int j = 1; j < n; ++j) {
    const double next = ((2.0 * j + k + 1.0 - x) * cur - (j + k) * prev) / (j + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

namespace {

// Ascending series z^p / (2p+1)!! * sum_s (-z^2/2)^s / (s! (2p+3)(2p+5)...(2p+2s+1)).
double spherical_bessel_series(int p, double z) {
  double lead = 1.0;
  for (int j = 1; j <= p; ++j) lead *= z / (2.0 * j + 1.0);
  const double h = -0.5 * z * z;
  double term = 1.0;
  double sum = 1.0;
  for (int s = 1; s < 500; ++s) {
    term *= h / (s * (2.0 * p + 2.0 * s + 1.0));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return lead * sum;
}

}  // namespace

double spherical_bessel(int p, double z) {
  if (p < -1) throw std::invalid_argument("spherical_bessel: order must be >= -1");
  if (p == -1) {
    if (z == 0.0) throw std::domain_error("spherical_bessel: j_{-1} has a pole at z = 0");
    return std::cos(z) / z;
  }
  if (std::abs(z) < std::max(2.0, static_cast<double>(p))) return spherical_bessel_series(p, z);

  const double s = std::sin(z);
  const double c = std::cos(z);
  double jm1 = s / z;
  if (p == 0) return jm1;
  double j = s / (z * z) - c / z;
  for (int q = 1; q < p; ++q) {
    const double next = (2.0 * q + 1.0) / z * j - jm1;
    jm1 = j;
    j = next;
  }
  return j;
}

std::vector<double> bessel_j_sequence(int max_order, double x) {
  if (max_order < 0) throw std::invalid_argument("bessel_j_sequence: max_order must be >= 0");
  std::vector<double> out(static_cast<std::size_t>(max_order) + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const bool negative = x < 0.0;
  const double ax = std::abs(x);

  // Miller's algorithm: start far above max(order, x) and recur downwards;
  // normalize with J_0 + 2 sum J_{2k} = 1.
  const int top = std::max(max_order, static_cast<int>(std::ceil(ax)));
  const int start = 2 * ((top + 30 + static_cast<int>(std::sqrt(160.0 * (top + 1)))) / 2);
  double jp1 = 0.0;
  double j = 1e-30;
  double norm_sum = 0.0;
  for (int order = start; order > 0; --order) {
    const double jm1 = 2.0 * order / ax * j - jp1;
    jp1 = j;
    j = jm1;
    // j now holds the unnormalized J_{order-1}.
    const int idx = order - 1;
    if (idx <= max_order) out[static_cast<std::size_t>(idx)] = j;
    if (idx % 2 == 0 && idx > 0) norm_sum += 2.0 * j;
    if (std::abs(j) > 1e250) {
      j *= 1e-250;
      jp1 *= 1e-250;
      norm_sum *= 1e-250;
      for (int i = idx; i <= max_order; ++i) out[static_cast<std::size_t>(i)] *= 1e-250;
    }
  }
  norm_sum += j;  // J_0 term
  for (int i = 0; i <= max_order; ++i) {
    double v = out[static_cast<std::size_t>(i)] / norm_sum;
    if (negative && (i % 2 == 1)) v = -v;
    out[static_cast<std::size_t>(i)] = v;
  }
  return out;
}

double bessel_j(int m, double x) {
  const int am = std::abs(m);
  const double v = bessel_j_sequence(am, x)[static_cast<std::size_t>(am)];
  return (m < 0 && (am % 2 == 1)) ? -v : v;
}

double sqrt_factorial_ratio(int n, int m) {
  if (n < 0 || m < 0) throw std::invalid_argument("sqrt_factorial_ratio: negative argument");
  if (n == m) return 1.0;
  return std::exp(0.5 * (std::lgamma(n + 1.0) - std::lgamma(m + 1.0)));
}

double sideband_phase_factor(const ModelParams& params) {
  double f;
  switch (params.k % 4) {
    case 0: f = std::cos(params.delta_phi); break;
    case 1: f = -std::sin(params.delta_phi); break;
    case 2: f = -std::cos(params.delta_phi); break;
    default: f = std::sin(params.delta_phi); break;
  }
  // A node of the phase factor is only resolved to the rounding of delta_phi
  // itself (slope 1 there), so anything below that is an exact zero.
  const double resolution = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(params.delta_phi));
  return std::abs(f) <= resolution ? 0.0 : f;
}

double coupling_w(int n, const ModelParams& params) {
  if (n < 0) throw std::invalid_argument("coupling_w: n must be >= 0");
  const double x = params.eta * params.eta;
  return sideband_phase_factor(params) * std::pow(params.eta, params.k) * std::exp(-0.5 * x) *
         sqrt_factorial_ratio(n, n + params.k) * laguerre(n, params.k, x);
}

WMaxResult w_max(const ModelParams& params, int n_search) {
  if (n_search < 1) throw ConfigError("w_max: n_search must be >= 1");
  const int k = params.k;
  const double x = params.eta * params.eta;
  const double prefactor =
      std::abs(sideband_phase_factor(params) * std::pow(params.eta, k) * std::exp(-0.5 * x));

  // One sweep of the Laguerre recurrence instead of n_search independent calls.
  WMaxResult best;
  double prev = 0.0;
  double cur = 1.0;
  for (int n = 0; n <= n_search; ++n) {
    if (n == 1) {
      prev = 1.0;
      cur = 1.0 + k - x;
    } else if (n > 1) {
      const double next = ((2.0 * (n - 1) + k + 1.0 - x) * cur - (n - 1 + k) * prev) / n;
      prev = cur;
      cur = next;
    }
    const double value = prefactor * sqrt_factorial_ratio(n, n + k) * std::abs(cur);
    if (value > best.value) {
      best.value = value;
      best.argmax = n;
    }
  }
  best.at_boundary = best.value > 0.0 && best.argmax == n_search;
  return best;
}

}  // namespace nljc
