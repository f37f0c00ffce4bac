#pragma once

#include <complex>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "nljc/specfun.hpp"

namespace nljc {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;

// Entries of one decoupled SU(2) evolution block
//   U_n = [[a, b], [-b*, a*]]
// acting on the spinor pair {|2,n>, |1,n+k>}.
struct BlockCoefficients {
  int n = 0;
  cplx a{1.0, 0.0};
  cplx b{0.0, 0.0};

  Mat2 matrix() const;
  double norm_defect() const { return std::norm(a) + std::norm(b) - 1.0; }
};

// One Magnus term M_n^{[order]}(t, t0) as a 2x2 matrix.
struct MagnusTermMatrix {
  int order = 1;
  Mat2 entries = Mat2::Zero();
};

inline constexpr int kMaxMagnusOrder = 5;

// How the per-block evolution is computed.
class EvolutionMethod {
 public:
  enum class Kind { Exact, NoTimeOrdering, Magnus };

  static EvolutionMethod exact() { return EvolutionMethod(Kind::Exact, 0); }
  static EvolutionMethod no_time_ordering() { return EvolutionMethod(Kind::NoTimeOrdering, 1); }
  // Truncated Magnus series including orders 1..order (1 <= order <= 5).
  static EvolutionMethod magnus(int order);
  // Parses "exact", "noto" or "magnus1" ... "magnus5".
  static EvolutionMethod parse(std::string_view name);

  Kind kind() const { return kind_; }
  int order() const { return order_; }
  std::string name() const;

  friend bool operator==(const EvolutionMethod&, const EvolutionMethod&) = default;

 private:
  EvolutionMethod(Kind kind, int order) : kind_(kind), order_(order) {}
  Kind kind_;
  int order_;
};

// Gamma_n = sqrt((dw/2)^2 + w^2 |kappa|^2) for a given coupling value w.
double gamma_for_coupling(double w, const ModelParams& params);
double gamma_n(int n, const ModelParams& params);

// Closed-form solution of the block ODE  dU/dt = -i|kappa| H_n(t) U,  U(t0) = I.
// Throws std::invalid_argument if t < t0.
BlockCoefficients exact_block(int n, double t, double t0, const ModelParams& params);
BlockCoefficients exact_block_for_coupling(double w, double t, double t0, const ModelParams& params);

// exp(-i|kappa| M^{[1]}): the evolution with time ordering neglected.
BlockCoefficients no_time_ordering_block(int n, double t, double t0, const ModelParams& params);

// f_ell(z), ell = 1..5, the spherical-Bessel combinations of the Magnus terms.
double magnus_f(int ell, double z);

MagnusTermMatrix magnus_term(int ell, int n, double t, double t0, const ModelParams& params);
MagnusTermMatrix magnus_term_for_coupling(int ell, double w, double t, double t0,
                                          const ModelParams& params);

// exp(sum_{j<=order} (-i|kappa|)^j M^{[j]}) via the closed SU(2) exponential.
BlockCoefficients magnus_block(int order, int n, double t, double t0, const ModelParams& params);
BlockCoefficients magnus_block_for_coupling(int order, double w, double t, double t0,
                                            const ModelParams& params);

// Dispatch on method for a given coupling value.
BlockCoefficients evolve_block(const EvolutionMethod& method, int n, double w, double t, double t0,
                               const ModelParams& params);

// Exponential of a traceless anti-Hermitian 2x2 matrix
//   E = [[i alpha, beta], [-beta*, -i alpha]],
// returned as block coefficients: a = cos(th) + i alpha sinc(th), b = beta sinc(th).
BlockCoefficients su2_exponential(double alpha, cplx beta);

// Generating function M_n(kappa) with exp(-i M_n(kappa)) = U_n(kappa).
//
// kappa replaces params.kappa_abs (it may be any real value, including
// negative ones, which the finite-difference checks need). Throws
// BranchPointError when |Re a_n + 1| < 1e-9.
Mat2 generating_exponent(int n, double kappa, double t, double t0, const ModelParams& params);
Mat2 generating_exponent_for_coupling(double w, double kappa, double t, double t0,
                                      const ModelParams& params);

}  // namespace nljc
