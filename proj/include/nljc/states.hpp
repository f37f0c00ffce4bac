#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "nljc/dynamics.hpp"

namespace nljc {

// Coherent motional state |alpha0> with the ion in electronic level 1 or 2.
struct InitialState {
  int electronic = 1;
  cplx alpha0{0.0, 0.0};
};

// Motional density matrix rho_{n,m} = <n|rho|m> truncated to 0..n_max.
struct MotionalDensityMatrix {
  int n_max = 0;
  double t = 0.0;
  double t0 = 0.0;
  Eigen::MatrixXcd entries;

  int dimension() const { return n_max + 1; }
  cplx trace() const { return entries.trace(); }
};

// ceil(|alpha0|^2 + 6|alpha0| + k + 10).
int truncation_nmax(cplx alpha0, int k);

// Coherent-state Fock amplitudes e^{-|a|^2/2} a^n / sqrt(n!), n = 0..count-1.
std::vector<cplx> coherent_amplitudes(cplx alpha0, int count);

// Reduced motional state for the initial state |1, alpha0>.
//
// n_max defaults to truncation_nmax. Throws ToleranceError when the
// truncated trace misses 1 by more than 1e-6, std::invalid_argument if t < t0.
MotionalDensityMatrix rho_ground_input(double t, double t0, const ModelParams& params, cplx alpha0,
                                       std::optional<int> n_max = std::nullopt,
                                       const EvolutionMethod& method = EvolutionMethod::exact());

// Reduced motional state for the initial state |2, alpha0>.
MotionalDensityMatrix rho_excited_input(double t, double t0, const ModelParams& params,
                                        cplx alpha0, std::optional<int> n_max = std::nullopt,
                                        const EvolutionMethod& method = EvolutionMethod::exact());

MotionalDensityMatrix motional_density(double t, double t0, const ModelParams& params,
                                       const InitialState& initial,
                                       std::optional<int> n_max = std::nullopt,
                                       const EvolutionMethod& method = EvolutionMethod::exact());

// Excited-state population sigma_22(t).
//
// Ground input:  sum_n |b_n|^2 P(n+k).
// Excited input: 1 - sum_n |b_n|^2 P(n), i.e. sum_n |a_n|^2 P(n) with the
// Poisson weights P(n) of |alpha0|^2 summed over the truncated range.
double sigma22(double t, double t0, const ModelParams& params, const InitialState& initial,
               std::optional<int> n_max = std::nullopt,
               const EvolutionMethod& method = EvolutionMethod::exact());

// sigma22 at every point of an ascending time grid.
std::vector<std::pair<double, double>> sigma22_trace(const std::vector<double>& t_grid, double t0,
                                                     const ModelParams& params,
                                                     const InitialState& initial,
                                                     std::optional<int> n_max = std::nullopt,
                                                     const EvolutionMethod& method =
                                                         EvolutionMethod::exact());

}  // namespace nljc
