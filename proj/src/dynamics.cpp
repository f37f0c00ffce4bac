#include "nljc/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "nljc/error.hpp"

namespace nljc {

namespace {

constexpr cplx kI{0.0, 1.0};

void require_forward(double t, double t0) {
  if (!(t >= t0)) throw std::invalid_argument("evolution requires t >= t0");
}

void require_order(int ell) {
  if (ell < 1 || ell > kMaxMagnusOrder)
    throw std::invalid_argument("Magnus order must lie in 1..5, got " + std::to_string(ell));
}

}  // namespace

Mat2 BlockCoefficients::matrix() const {
  Mat2 u;
  u << a, b, -std::conj(b), std::conj(a);
  return u;
}

EvolutionMethod EvolutionMethod::magnus(int order) {
  require_order(order);
  return EvolutionMethod(Kind::Magnus, order);
}

EvolutionMethod EvolutionMethod::parse(std::string_view name) {
  if (name == "exact") return exact();
  if (name == "noto") return no_time_ordering();
  if (name.size() == 7 && name.substr(0, 6) == "magnus") {
    const char c = name[6];
    if (c >= '1' && c <= '5') return magnus(c - '0');
  }
  throw ConfigError("unknown evolution method '" + std::string(name) +
                    "' (expected exact, noto, magnus1..magnus5)");
}

std::string EvolutionMethod::name() const {
  switch (kind_) {
    case Kind::Exact: return "exact";
    case Kind::NoTimeOrdering: return "noto";
    case Kind::Magnus: return "magnus" + std::to_string(order_);
  }
  return "unknown";
}

double gamma_for_coupling(double w, const ModelParams& params) {
  const double half_detuning = 0.5 * params.delta_omega;
  const double coupling = w * params.kappa_abs;
  return std::sqrt(half_detuning * half_detuning + coupling * coupling);
}

double gamma_n(int n, const ModelParams& params) {
  return gamma_for_coupling(coupling_w(n, params), params);
}

BlockCoefficients exact_block_for_coupling(double w, double t, double t0, const ModelParams& params) {
  require_forward(t, t0);
  const double tau = t - t0;
  const double dw = params.delta_omega;
  const double gt = gamma_for_coupling(w, params) * tau;
  // tau * sinc(Gamma tau) replaces sin(Gamma tau) / Gamma so Gamma -> 0 stays finite.
  const double tau_sinc = tau * sinc(gt);

  BlockCoefficients out;
  out.a = std::exp(-kI * (0.5 * dw * tau)) * cplx(std::cos(gt), 0.5 * dw * tau_sinc);
  out.b = std::exp(-kI * (0.5 * dw * (t + t0))) * (-kI) * (params.kappa_abs * w * tau_sinc);
  return out;
}

BlockCoefficients exact_block(int n, double t, double t0, const ModelParams& params) {
  auto out = exact_block_for_coupling(coupling_w(n, params), t, t0, params);
  out.n = n;
  return out;
}

double magnus_f(int ell, double z) {
  require_order(ell);
  const double j0 = spherical_bessel(0, z);
  if (ell == 1) return j0;
  const double j1 = spherical_bessel(1, z);
  const double j2 = spherical_bessel(2, z);
  const double s = std::sin(z);
  const double c = std::cos(z);
  switch (ell) {
    case 2: return 0.5 * (j1 * c - j0 * s);
    case 3: return (j0 - j0 * j0 * j0 + j2) / 6.0;
    case 4: {
      const double j3 = spherical_bessel(3, z);
      const double s2 = std::sin(2.0 * z);
      const double c2 = std::cos(2.0 * z);
      return (0.5 * j0 * j0 * s2 - 0.5 * j0 * s - 0.5 * j1 * j1 * s2 - 0.5 * j2 * s - j1 * j0 * c2 +
              0.3 * j1 * c + 0.3 * j3 * c) /
             12.0;
    }
    default: {
      const double j3 = spherical_bessel(3, z);
      const double j4 = spherical_bessel(4, z);
      return (0.5 * j0 + 5.0 * j2 / 7.0 + 3.0 * j4 / 14.0 + 2.0 * j1 * j1 * j0 * s * s -
              13.0 / 6.0 * j1 * j0 * s - 0.5 * j3 * j0 * s - 5.0 / 3.0 * j1 * j2 * s +
              2.0 * j0 * j0 * j0 * c * c - 2.5 * j0 * j0 * c - 2.5 * j2 * j0 * c +
              4.0 * j1 * j0 * j0 * s * c) /
             60.0;
    }
  }
}

MagnusTermMatrix magnus_term_for_coupling(int ell, double w, double t, double t0,
                                          const ModelParams& params) {
  require_order(ell);
  require_forward(t, t0);
  const double tau = t - t0;
  const double dw = params.delta_omega;
  const double scale = std::pow(w * tau, ell) * magnus_f(ell, 0.5 * dw * tau);

  MagnusTermMatrix out;
  out.order = ell;
  if (ell % 2 == 1) {
    const cplx phase = std::exp(-kI * (0.5 * dw * (t + t0)));
    out.entries << 0.0, scale * phase, scale * std::conj(phase), 0.0;
  } else {
    out.entries << kI * scale, 0.0, 0.0, -kI * scale;
  }
  return out;
}

MagnusTermMatrix magnus_term(int ell, int n, double t, double t0, const ModelParams& params) {
  return magnus_term_for_coupling(ell, coupling_w(n, params), t, t0, params);
}

BlockCoefficients su2_exponential(double alpha, cplx beta) {
  const double th = std::sqrt(alpha * alpha + std::norm(beta));
  const double s = sinc(th);
  BlockCoefficients out;
  out.a = cplx(std::cos(th), alpha * s);
  out.b = beta * s;
  return out;
}

BlockCoefficients magnus_block_for_coupling(int order, double w, double t, double t0,
                                            const ModelParams& params) {
  require_order(order);
  require_forward(t, t0);
  Mat2 exponent = Mat2::Zero();
  cplx factor{1.0, 0.0};
  for (int j = 1; j <= order; ++j) {
    factor *= -kI * params.kappa_abs;
    exponent += factor * magnus_term_for_coupling(j, w, t, t0, params).entries;
  }
  // Each term is traceless anti-Hermitian; read off the SU(2) parameters.
  return su2_exponential(exponent(0, 0).imag(), exponent(0, 1));
}

BlockCoefficients magnus_block(int order, int n, double t, double t0, const ModelParams& params) {
  auto out = magnus_block_for_coupling(order, coupling_w(n, params), t, t0, params);
  out.n = n;
  return out;
}

BlockCoefficients no_time_ordering_block(int n, double t, double t0, const ModelParams& params) {
  return magnus_block(1, n, t, t0, params);
}

BlockCoefficients evolve_block(const EvolutionMethod& method, int n, double w, double t, double t0,
                               const ModelParams& params) {
  BlockCoefficients out;
  switch (method.kind()) {
    case EvolutionMethod::Kind::Exact: out = exact_block_for_coupling(w, t, t0, params); break;
    case EvolutionMethod::Kind::NoTimeOrdering:
      out = magnus_block_for_coupling(1, w, t, t0, params);
      break;
    case EvolutionMethod::Kind::Magnus:
      out = magnus_block_for_coupling(method.order(), w, t, t0, params);
      break;
  }
  out.n = n;
  return out;
}

Mat2 generating_exponent_for_coupling(double w, double kappa, double t, double t0,
                                      const ModelParams& params) {
  ModelParams scaled = params;
  scaled.kappa_abs = kappa;
  const auto block = exact_block_for_coupling(w, t, t0, scaled);
  const double re_a = block.a.real();
  const double im_a = block.a.imag();
  if (std::abs(re_a + 1.0) < 1e-9)
    throw BranchPointError("generating_exponent: Re(a_n) is within 1e-9 of the branch point -1");

  // arccos(Re a) / sqrt(1 - Re^2 a) as theta / sin(theta); sin(theta) is
  // recovered from unitarity so the Re a -> 1 limit stays accurate.
  const double sin_theta = std::sqrt(im_a * im_a + std::norm(block.b));
  const double theta = std::atan2(sin_theta, re_a);
  const double factor = sin_theta > 0.0 ? theta / sin_theta : 1.0;

  Mat2 m;
  m << -im_a, kI * block.b, -kI * std::conj(block.b), im_a;
  return factor * m;
}

Mat2 generating_exponent(int n, double kappa, double t, double t0, const ModelParams& params) {
  return generating_exponent_for_coupling(coupling_w(n, params), kappa, t, t0, params);
}

}  // namespace nljc
