#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace nljc {

using cplx = std::complex<double>;

// Minimal-modulus zero of g_Lambda and the resulting Magnus convergence radius.
struct ConvergenceResult {
  double lambda = 0.0;  // Lambda = delta_omega (t - t0) / 2
  cplx root;            // z0 with g_Lambda(z0) = 0 (its negative is a root as well)
  double radius = 0.0;  // r_Lambda = |z0|
};

// A_R(z) = cos(L) cos(gamma) + L sin(L) sinc(gamma), gamma^2 = L^2 + z^2.
// Entire in z; only z^2 enters.
cplx a_r_function(double lambda, cplx z);

// g(z) = A_R(z) + 1, whose zeros are the branch points of the Magnus generating function.
cplx g_function(double lambda, cplx z);

// g and dg/du as functions of u = z^2.
struct GOfU {
  cplx value;
  cplx derivative;
};
GOfU g_of_u(double lambda, cplx u);

// Number of zeros of g (in the u = z^2 plane) inside |u| < u_radius,
// from the winding number of g along the circle. Throws
// SearchExhaustedError when a zero sits on the contour itself.
int count_zeros_u_disc(double lambda, double u_radius);

// r_Lambda: the minimal |z0| over zeros of g_Lambda, certified by a winding
// count of zero on |u| = |u0| (1 - 1e-4). Only |Lambda| matters.
// Throws SearchExhaustedError if nothing is found within |z| <= pi + 2|Lambda| + 5.
ConvergenceResult min_root(double lambda);

// The spectral-norm bound pi / (|kappa| w_max); +infinity when w_max = 0.
double sufficient_bound(double kappa, double w_max);

// Smallest t > 0 with |kappa w_max| t = r_{delta_omega t / 2}: the end of
// continuous convergence of the Magnus series.
double t_max(double delta_omega, double w_max, double kappa);

// |kappa w_max| (t - t0) < r_{delta_omega (t - t0) / 2}.
bool converges_at(double t, double t0, double delta_omega, double w_max, double kappa);

// Convergent sub-intervals of (t_max, t_limit] ("reconvergence" windows).
std::vector<std::pair<double, double>> reconvergence_intervals(double delta_omega, double w_max,
                                                               double kappa, double t_limit);

}  // namespace nljc
