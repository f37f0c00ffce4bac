#pragma once

#include <vector>

namespace nljc {

// Physical parameters of the detuned nonlinear Jaynes-Cummings model.
//
// Frequencies (delta_omega, nu, omega21) are in the same unit as kappa_abs.
// With the default kappa_abs = 1 every time is read as t * |kappa| and
// delta_omega as the ratio delta_omega / |kappa|.
//
// theta and omega21 are inert: theta is absorbed by the spinor basis and
// omega21 cancels in every motional phase difference. Both are kept so a
// configuration can be stored verbatim.
struct ModelParams {
  int k = 0;               // sideband order
  double eta = 0.2;        // Lamb-Dicke parameter
  double delta_phi = 0.0;  // trap-to-wave phase [rad]
  double theta = 0.0;      // coupling phase [rad], inert
  double delta_omega = 0.0;
  double kappa_abs = 1.0;
  double nu = 0.0;       // trap frequency, only enters free-evolution phases
  double omega21 = 0.0;  // electronic splitting, inert

  // Throws ConfigError unless eta > 0, kappa_abs > 0, k >= 0 and all values are finite.
  void validate() const;
};

// Generalized Laguerre polynomial L_n^{(k)}(x) by upward three-term recurrence.
double laguerre(int n, int k, double x);

// sin(x)/x with the removable singularity resolved.
double sinc(double x);

// Spherical Bessel function j_p(z), p >= -1.
//
// Uses the ascending series for |z| < max(2, p) and upward recurrence
// from j_0, j_1 otherwise. j_{-1}(z) = cos(z)/z throws std::domain_error at z = 0.
double spherical_bessel(int p, double z);

// Bessel function of the first kind J_m(x) for integer m (any sign) and real x.
double bessel_j(int m, double x);

// J_0(x) ... J_{max_order}(x) in one backward (Miller) recurrence sweep.
std::vector<double> bessel_j_sequence(int max_order, double x);

// sqrt(n! / m!) evaluated through log-gamma.
double sqrt_factorial_ratio(int n, int m);

// cos(delta_phi + pi k / 2), with the k-dependent quarter turns applied exactly.
double sideband_phase_factor(const ModelParams& params);

// Coupling coefficient w_n of the Fock-basis Hamiltonian:
// cos(dphi + pi k/2) eta^k e^{-eta^2/2} sqrt(n!/(n+k)!) L_n^{(k)}(eta^2).
double coupling_w(int n, const ModelParams& params);

struct WMaxResult {
  double value = 0.0;  // max |w_n| over the window
  int argmax = 0;      // first n attaining it
  // Warning: the maximum sits on the last index of the window, which
  // usually means n_search is too small.
  bool at_boundary = false;
};

inline constexpr int kDefaultWMaxSearch = 1000;

// max_{0 <= n <= n_search} |w_n|. n_search must be >= 1.
WMaxResult w_max(const ModelParams& params, int n_search = kDefaultWMaxSearch);

}  // namespace nljc
