#include "nljc/states.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nljc/error.hpp"

namespace nljc {

namespace {

constexpr cplx kI{0.0, 1.0};

int resolve_nmax(std::optional<int> n_max, cplx alpha0, int k) {
  const int n = n_max.value_or(truncation_nmax(alpha0, k));
  if (n < 0) throw ConfigError("n_max must be >= 0");
  return n;
}

std::vector<BlockCoefficients> blocks(const EvolutionMethod& method, int count, double t, double t0,
                                      const ModelParams& params) {
  std::vector<BlockCoefficients> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int n = 0; n < count; ++n)
    out.push_back(evolve_block(method, n, coupling_w(n, params), t, t0, params));
  return out;
}

// Coherent amplitudes including the free-evolution phase exp(-i n nu (t - t0)).
// omega21 only contributes a global phase per electronic level and is dropped.
std::vector<cplx> evolved_amplitudes(cplx alpha0, int count, double nu, double tau) {
  auto c = coherent_amplitudes(alpha0, count);
  if (nu != 0.0) {
    for (int n = 0; n < count; ++n) c[static_cast<std::size_t>(n)] *= std::exp(-kI * (n * nu * tau));
  }
  return c;
}

MotionalDensityMatrix assemble(double t, double t0, int n_max, const Eigen::VectorXcd& psi1,
                               const Eigen::VectorXcd& psi2) {
  MotionalDensityMatrix out;
  out.n_max = n_max;
  out.t = t;
  out.t0 = t0;
  const int dim = n_max + 1;
  out.entries.resize(dim, dim);
  for (int n = 0; n < dim; ++n) {
    out.entries(n, n) = std::norm(psi1(n)) + std::norm(psi2(n));
    for (int m = n + 1; m < dim; ++m) {
      const cplx v = psi1(n) * std::conj(psi1(m)) + psi2(n) * std::conj(psi2(m));
      out.entries(n, m) = v;
      out.entries(m, n) = std::conj(v);
    }
  }
  const double deficit = std::abs(out.trace().real() - 1.0);
  if (deficit > 1e-6) {
    std::ostringstream msg;
    msg << "truncated density matrix misses unit trace by " << deficit << " (n_max = " << n_max
        << "); increase n_max";
    throw ToleranceError(msg.str());
  }
  return out;
}

}  // namespace

int truncation_nmax(cplx alpha0, int k) {
  const double a = std::abs(alpha0);
  return static_cast<int>(std::ceil(a * a + 6.0 * a + k + 10.0));
}

std::vector<cplx> coherent_amplitudes(cplx alpha0, int count) {
  std::vector<cplx> out(static_cast<std::size_t>(std::max(count, 0)), cplx{0.0, 0.0});
  if (count <= 0) return out;
  const double r = std::abs(alpha0);
  if (r == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const double phi = std::arg(alpha0);
  const double log_r = std::log(r);
  for (int n = 0; n < count; ++n) {
    const double log_mag = -0.5 * r * r + n * log_r - 0.5 * std::lgamma(n + 1.0);
    out[static_cast<std::size_t>(n)] = std::polar(std::exp(log_mag), n * phi);
  }
  return out;
}

MotionalDensityMatrix rho_ground_input(double t, double t0, const ModelParams& params, cplx alpha0,
                                       std::optional<int> n_max, const EvolutionMethod& method) {
  params.validate();
  const int nm = resolve_nmax(n_max, alpha0, params.k);
  const int k = params.k;
  const int dim = nm + 1;
  const auto blk = blocks(method, dim, t, t0, params);
  const auto c = evolved_amplitudes(alpha0, dim + k, params.nu, t - t0);

  // |1,n> -> a*_{n-k} |1,n> + (phase) b_{n-k} |2,n-k>, with a_{m<0} = 1, b_{m<0} = 0.
  Eigen::VectorXcd psi1(dim), psi2(dim);
  for (int n = 0; n < dim; ++n) {
    const cplx a_shift = n >= k ? blk[static_cast<std::size_t>(n - k)].a : cplx{1.0, 0.0};
    psi1(n) = c[static_cast<std::size_t>(n)] * std::conj(a_shift);
    psi2(n) = c[static_cast<std::size_t>(n + k)] * blk[static_cast<std::size_t>(n)].b;
  }
  return assemble(t, t0, nm, psi1, psi2);
}

MotionalDensityMatrix rho_excited_input(double t, double t0, const ModelParams& params,
                                        cplx alpha0, std::optional<int> n_max,
                                        const EvolutionMethod& method) {
  params.validate();
  const int nm = resolve_nmax(n_max, alpha0, params.k);
  const int k = params.k;
  const int dim = nm + 1;
  const auto blk = blocks(method, dim, t, t0, params);
  const auto c = evolved_amplitudes(alpha0, dim, params.nu, t - t0);

  // |2,n> -> a_n |2,n> - (phase) b*_n |1,n+k>.
  Eigen::VectorXcd psi1(dim), psi2(dim);
  for (int n = 0; n < dim; ++n) {
    psi2(n) = c[static_cast<std::size_t>(n)] * blk[static_cast<std::size_t>(n)].a;
    psi1(n) = n >= k ? -c[static_cast<std::size_t>(n - k)] *
                           std::conj(blk[static_cast<std::size_t>(n - k)].b)
                     : cplx{0.0, 0.0};
  }
  return assemble(t, t0, nm, psi1, psi2);
}

MotionalDensityMatrix motional_density(double t, double t0, const ModelParams& params,
                                       const InitialState& initial, std::optional<int> n_max,
                                       const EvolutionMethod& method) {
  switch (initial.electronic) {
    case 1: return rho_ground_input(t, t0, params, initial.alpha0, n_max, method);
    case 2: return rho_excited_input(t, t0, params, initial.alpha0, n_max, method);
    default: throw ConfigError("electronic level must be 1 or 2");
  }
}

double sigma22(double t, double t0, const ModelParams& params, const InitialState& initial,
               std::optional<int> n_max, const EvolutionMethod& method) {
  params.validate();
  if (initial.electronic != 1 && initial.electronic != 2)
    throw ConfigError("electronic level must be 1 or 2");
  const int nm = resolve_nmax(n_max, initial.alpha0, params.k);
  const int dim = nm + 1;
  const int shift = initial.electronic == 1 ? params.k : 0;
  const auto c = coherent_amplitudes(initial.alpha0, dim + shift);

  double transferred = 0.0;
  for (int n = 0; n < dim; ++n) {
    const auto blk = evolve_block(method, n, coupling_w(n, params), t, t0, params);
    transferred += std::norm(blk.b) * std::norm(c[static_cast<std::size_t>(n + shift)]);
  }
  return initial.electronic == 1 ? transferred : 1.0 - transferred;
}

std::vector<std::pair<double, double>> sigma22_trace(const std::vector<double>& t_grid, double t0,
                                                     const ModelParams& params,
                                                     const InitialState& initial,
                                                     std::optional<int> n_max,
                                                     const EvolutionMethod& method) {
  std::vector<std::pair<double, double>> out;
  out.reserve(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (i > 0 && t_grid[i] < t_grid[i - 1])
      throw ConfigError("sigma22_trace: time grid must be ascending");
    out.emplace_back(t_grid[i], sigma22(t_grid[i], t0, params, initial, n_max, method));
  }
  return out;
}

}  // namespace nljc
