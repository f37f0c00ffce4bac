#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the library's numerics except where noted (parameter structs).

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/numeric/odeint.hpp>

namespace oracle {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
constexpr double kPi = std::numbers::pi;
inline const cplx kI{0.0, 1.0};

// The block Hamiltonian H(s) = [[0, w e^{-i dw s}], [w e^{i dw s}, 0]].
inline Mat2 block_hamiltonian(double w, double dw, double s) {
  Mat2 h;
  h << 0.0, w * std::exp(-kI * (dw * s)), w * std::exp(kI * (dw * s)), 0.0;
  return h;
}

// dU/dt = -i kappa H(t) U, U(t0) = I, by adaptive Dormand-Prince.
// Returns U at every time in `times` (ascending, times[0] >= t0).
inline std::vector<Mat2> block_ode(double w, double dw, double kappa, double t0,
                                   const std::vector<double>& times, double tol = 1e-13) {
  using State = std::vector<cplx>;
  namespace ode = boost::numeric::odeint;
  auto rhs = [&](const State& u, State& du, double s) {
    const cplx off12 = w * std::exp(-kI * (dw * s));
    const cplx off21 = std::conj(off12);
    // rows of H times columns of U (U stored row-major: u00 u01 u10 u11)
    du[0] = -kI * kappa * off12 * u[2];
    du[1] = -kI * kappa * off12 * u[3];
    du[2] = -kI * kappa * off21 * u[0];
    du[3] = -kI * kappa * off21 * u[1];
  };
  State u{1.0, 0.0, 0.0, 1.0};
  std::vector<Mat2> out;
  auto stepper = ode::make_dense_output(tol, tol, ode::runge_kutta_dopri5<State>());
  std::vector<double> grid{t0};
  grid.insert(grid.end(), times.begin(), times.end());
  ode::integrate_times(stepper, rhs, u, grid.begin(), grid.end(), 1e-3,
                       [&](const State& x, double) {
                         Mat2 m;
                         m << x[0], x[1], x[2], x[3];
                         out.push_back(m);
                       });
  out.erase(out.begin());
  return out;
}

// Nested-commutator Magnus terms by ordered quadrature over the simplex
// t0 < t_j < ... < t_1 < t, with the usual convention Omega = sum (-i kappa)^l M^[l].
inline Mat2 comm(const Mat2& a, const Mat2& b) { return a * b - b * a; }

inline Mat2 magnus2_quadrature(double w, double dw, double t, double t0) {
  using G = boost::math::quadrature::gauss<double, 40>;
  auto inner = [&](double t1, int entry) {
    return G::integrate(
        [&](double t2) {
          const Mat2 c = comm(block_hamiltonian(w, dw, t1), block_hamiltonian(w, dw, t2));
          return c(entry / 2, entry % 2);
        },
        t0, t1);
  };
  Mat2 m;
  for (int e = 0; e < 4; ++e) {
    auto part = [&](bool imag) {
      return G::integrate(
          [&](double t1) {
            const cplx v = inner(t1, e);
            return imag ? v.imag() : v.real();
          },
          t0, t);
    };
    m(e / 2, e % 2) = 0.5 * cplx(part(false), part(true));
  }
  return m;
}

inline Mat2 magnus3_quadrature(double w, double dw, double t, double t0) {
  using G = boost::math::quadrature::gauss<double, 30>;
  // Integrate the full matrix by nesting fixed-order rules explicitly.
  const auto& x = G::abscissa();
  const auto& wt = G::weights();
  std::vector<std::pair<double, double>> rule;  // node in [-1,1], weight
  for (std::size_t i = 0; i < x.size(); ++i) {
    rule.emplace_back(x[i], wt[i]);
    if (x[i] != 0.0) rule.emplace_back(-x[i], wt[i]);
  }
  auto map = [](double xi, double a, double b) { return 0.5 * (a + b) + 0.5 * (b - a) * xi; };
  Mat2 total = Mat2::Zero();
  for (auto [x1, w1] : rule) {
    const double t1 = map(x1, t0, t);
    const double j1 = 0.5 * (t - t0) * w1;
    const Mat2 h1 = block_hamiltonian(w, dw, t1);
    for (auto [x2, w2] : rule) {
      const double t2 = map(x2, t0, t1);
      const double j2 = 0.5 * (t1 - t0) * w2;
      const Mat2 h2 = block_hamiltonian(w, dw, t2);
      for (auto [x3, w3] : rule) {
        const double t3 = map(x3, t0, t2);
        const double j3 = 0.5 * (t2 - t0) * w3;
        const Mat2 h3 = block_hamiltonian(w, dw, t3);
        total += (j1 * j2 * j3) * (comm(h1, comm(h2, h3)) + comm(h3, comm(h2, h1)));
      }
    }
  }
  return total / 6.0;
}

// Ridders-style extrapolated central difference for the l-th derivative of
// a smooth matrix-valued function at 0. Returns the estimate with the
// smallest error estimate from the tableau.
inline Mat2 derivative(const std::function<Mat2(double)>& f, int order, double h0) {
  static const std::array<std::vector<double>, 6> stencil{{
      {},
      {-0.5, 0.0, 0.5},                          // f'   on -1..1
      {1.0, -2.0, 1.0},                          // f''
      {-0.5, 1.0, 0.0, -1.0, 0.5},               // f''' on -2..2
      {1.0, -4.0, 6.0, -4.0, 1.0},               // f''''
      {-0.5, 2.0, -2.5, 0.0, 2.5, -2.0, 0.5},    // f^(5) on -3..3
  }};
  const auto& c = stencil[static_cast<std::size_t>(order)];
  const int half = static_cast<int>(c.size() / 2);
  auto central = [&](double h) -> Mat2 {
    Mat2 acc = Mat2::Zero();
    for (int j = -half; j <= half; ++j) {
      const double cj = c[static_cast<std::size_t>(j + half)];
      if (cj != 0.0) acc += cj * f(j * h);
    }
    return acc / std::pow(h, order);
  };
  constexpr int kRows = 10;
  constexpr double kShrink = 1.4;
  constexpr double kShrink2 = kShrink * kShrink;
  std::vector<std::vector<Mat2>> tab(kRows, std::vector<Mat2>(kRows, Mat2::Zero()));
  double h = h0;
  tab[0][0] = central(h);
  Mat2 best = tab[0][0];
  double best_err = std::numeric_limits<double>::infinity();
  for (int i = 1; i < kRows; ++i) {
    h /= kShrink;
    tab[0][i] = central(h);
    double fac = kShrink2;
    for (int j = 1; j <= i; ++j) {
      tab[j][i] = (tab[j - 1][i] * fac - tab[j - 1][i - 1]) / (fac - 1.0);
      fac *= kShrink2;
      const double err = std::max((tab[j][i] - tab[j - 1][i]).cwiseAbs().maxCoeff(),
                                  (tab[j][i] - tab[j - 1][i - 1]).cwiseAbs().maxCoeff());
      if (err <= best_err) {
        best_err = err;
        best = tab[j][i];
      }
    }
    if ((tab[i][i] - tab[i - 1][i - 1]).cwiseAbs().maxCoeff() >= 2.0 * best_err) break;
  }
  return best;
}

// Coupling coefficient in 50-digit arithmetic from the explicit Laguerre sum.
inline double coupling_w_high_precision(int n, int k, double eta, double delta_phi) {
  using boost::multiprecision::cpp_bin_float_50;
  using F = cpp_bin_float_50;
  const F x = F(eta) * F(eta);
  F lag = 0;
  for (int i = 0; i <= n; ++i) {
    // L_n^(k)(x) = sum_i (-1)^i C(n+k, n-i) x^i / i!
    F term = boost::multiprecision::tgamma(F(n + k + 1)) /
             (boost::multiprecision::tgamma(F(n - i + 1)) * boost::multiprecision::tgamma(F(k + i + 1)) *
              boost::multiprecision::tgamma(F(i + 1)));
    term *= boost::multiprecision::pow(x, i);
    lag += (i % 2 == 0) ? term : F(-term);
  }
  const F ratio = boost::multiprecision::sqrt(boost::multiprecision::tgamma(F(n + 1)) /
                                              boost::multiprecision::tgamma(F(n + k + 1)));
  const F phase = boost::multiprecision::cos(F(delta_phi) + boost::math::constants::pi<F>() * k / 2);
  const F value = phase * boost::multiprecision::pow(F(eta), k) * boost::multiprecision::exp(-x / 2) *
                  ratio * lag;
  return static_cast<double>(value);
}

// g(u) = cos(L) cos(gamma) + L sin(L) sinc(gamma) + 1 as a Maclaurin polynomial in u,
// coefficients and evaluation in 50-digit arithmetic.
inline cplx g_maclaurin(double lambda, cplx u, int terms = 160) {
  using F = boost::multiprecision::cpp_bin_float_50;
  using C = boost::multiprecision::cpp_complex_50;
  const F l = lambda;
  const F l2 = l * l;
  const F cl = boost::multiprecision::cos(l);
  const F ls = l * boost::multiprecision::sin(l);
  // cos(sqrt(s)) = sum (-1)^k s^k / (2k)!, sinc(sqrt(s)) = sum (-1)^k s^k / (2k+1)!,
  // s = L^2 + u; coefficient of u^j: sum_{k>=j} (-1)^k C(k,j) L^{2(k-j)} / (2k)!.
  std::vector<F> coef(static_cast<std::size_t>(terms), F(0));
  for (int j = 0; j < terms; ++j) {
    F cj = 0;
    F binom = 1;  // C(k, j) for k = j
    F l2pow = 1;
    F fe = boost::multiprecision::tgamma(F(2 * j + 1));  // (2k)!
    F fo = fe * (2 * j + 1);                             // (2k+1)!
    for (int k = j; k < j + 200; ++k) {
      const F sgn = (k % 2 == 0) ? F(1) : F(-1);
      const F term = sgn * binom * l2pow * (cl / fe + ls / fo);
      cj += term;
      if (k > j + 20 && boost::multiprecision::abs(term) < F(1e-45) * (boost::multiprecision::abs(cj) + F(1e-300)))
        break;
      binom = binom * (k + 1) / (k + 1 - j);
      l2pow *= l2;
      fe *= F(2 * k + 1) * F(2 * k + 2);
      fo *= F(2 * k + 2) * F(2 * k + 3);
    }
    coef[static_cast<std::size_t>(j)] = cj;
  }
  C acc(0);
  const C uu(F(u.real()), F(u.imag()));
  for (int j = terms - 1; j >= 0; --j) acc = acc * uu + C(coef[static_cast<std::size_t>(j)]);
  acc += C(1);
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

// Joint electronic (x) motional state evolved directly in the Fock basis.
// Component layout: index 2*n + 0 -> |1, n>, 2*n + 1 -> |2, n>, n = 0..fock_max.
// H(t) = kappa sum_n w_n ( e^{i theta} e^{-i dw t} |2,n><1,n+k| + h.c. ).
struct JointState {
  std::vector<cplx> ground;   // <1, n|psi>
  std::vector<cplx> excited;  // <2, n|psi>
};

inline JointState evolve_joint(const std::vector<double>& w_n, int k, double dw, double kappa,
                               double theta, double t0, double t, JointState psi) {
  using State = std::vector<cplx>;
  namespace ode = boost::numeric::odeint;
  const int dim = static_cast<int>(psi.ground.size());
  State x(static_cast<std::size_t>(2 * dim));
  for (int n = 0; n < dim; ++n) {
    x[static_cast<std::size_t>(2 * n)] = psi.ground[static_cast<std::size_t>(n)];
    x[static_cast<std::size_t>(2 * n + 1)] = psi.excited[static_cast<std::size_t>(n)];
  }
  auto rhs = [&](const State& s, State& ds, double time) {
    std::fill(ds.begin(), ds.end(), cplx{});
    const cplx ph = std::exp(kI * (theta - dw * time));
    for (int n = 0; n + k < dim; ++n) {
      const cplx c = kappa * w_n[static_cast<std::size_t>(n)];
      const auto i2 = static_cast<std::size_t>(2 * n + 1);
      const auto i1 = static_cast<std::size_t>(2 * (n + k));
      ds[i2] += -kI * c * ph * s[i1];
      ds[i1] += -kI * c * std::conj(ph) * s[i2];
    }
  };
  if (t > t0) ode::integrate_adaptive(ode::make_controlled(1e-13, 1e-13, ode::runge_kutta_dopri5<State>()),
                                      rhs, x, t0, t, 1e-3);
  JointState out;
  out.ground.resize(static_cast<std::size_t>(dim));
  out.excited.resize(static_cast<std::size_t>(dim));
  for (int n = 0; n < dim; ++n) {
    out.ground[static_cast<std::size_t>(n)] = x[static_cast<std::size_t>(2 * n)];
    out.excited[static_cast<std::size_t>(n)] = x[static_cast<std::size_t>(2 * n + 1)];
  }
  return out;
}

inline std::vector<cplx> coherent(cplx alpha, int dim) {
  std::vector<cplx> c(static_cast<std::size_t>(dim));
  cplx v = std::exp(-0.5 * std::norm(alpha));
  for (int n = 0; n < dim; ++n) {
    c[static_cast<std::size_t>(n)] = v;
    v *= alpha / std::sqrt(n + 1.0);
  }
  return c;
}

inline Eigen::MatrixXcd reduce_motional(const JointState& psi, int dim) {
  Eigen::MatrixXcd rho(dim, dim);
  for (int m = 0; m < dim; ++m)
    for (int n = 0; n < dim; ++n)
      rho(m, n) = psi.ground[static_cast<std::size_t>(m)] * std::conj(psi.ground[static_cast<std::size_t>(n)]) +
                  psi.excited[static_cast<std::size_t>(m)] * std::conj(psi.excited[static_cast<std::size_t>(n)]);
  return rho;
}

// Filtered P-function through the normally ordered characteristic function
//   Phi(beta) = Tr[rho e^{beta a^dag} e^{-beta^* a}]
// and a polar 2D Fourier integral over the filter support |beta| <= 2w:
//   P(alpha) = pi^-2 int d^2beta Phi(beta) Omega(|beta|/2w) e^{alpha beta^* - alpha^* beta}.
inline double characteristic_p(const Eigen::MatrixXcd& rho, cplx alpha, double w, int radial = 80,
                               int angular = 128) {
  const int dim = static_cast<int>(rho.rows());
  std::vector<double> fact(static_cast<std::size_t>(dim + 1), 1.0);
  for (int i = 1; i <= dim; ++i) fact[static_cast<std::size_t>(i)] = fact[static_cast<std::size_t>(i - 1)] * i;
  auto phi_normal = [&](cplx beta) {
    // <n| e^{beta a^dag} e^{-beta^* a} |m> = sum_j beta^{n-j} (-beta^*)^{m-j} sqrt(n! m!) / ((n-j)! (m-j)! j!)
    cplx total{};
    for (int m = 0; m < dim; ++m)
      for (int n = 0; n < dim; ++n) {
        if (rho(m, n) == cplx{}) continue;
        cplx elem{};
        for (int j = 0; j <= std::min(n, m); ++j)
          elem += std::pow(beta, n - j) * std::pow(-std::conj(beta), m - j) *
                  std::sqrt(fact[static_cast<std::size_t>(n)] * fact[static_cast<std::size_t>(m)]) /
                  (fact[static_cast<std::size_t>(n - j)] * fact[static_cast<std::size_t>(m - j)] *
                   fact[static_cast<std::size_t>(j)]);
        total += rho(m, n) * elem;
      }
    return total;
  };
  auto filter = [](double z) { return (2.0 / kPi) * (std::acos(z) - z * std::sqrt(1.0 - z * z)); };

  // r = 2w sin(u), u in [0, pi/2]: the endpoint behaviour of the filter becomes smooth.
  const int panels = radial / 20;
  cplx total{};
  for (int p = 0; p < panels; ++p) {
    const double ua = 0.5 * kPi * p / panels;
    const double ub = 0.5 * kPi * (p + 1) / panels;
    auto radial_integrand = [&](double u, bool imag) {
      const double r = 2.0 * w * std::sin(u);
      const double jac = 2.0 * w * std::cos(u) * r;
      cplx ang{};
      for (int q = 0; q < angular; ++q) {
        const cplx beta = std::polar(r, 2.0 * kPi * q / angular);
        ang += phi_normal(beta) * std::exp(alpha * std::conj(beta) - std::conj(alpha) * beta);
      }
      ang *= 2.0 * kPi / angular;
      const cplx v = ang * filter(std::sin(u)) * jac;
      return imag ? v.imag() : v.real();
    };
    using G = boost::math::quadrature::gauss<double, 20>;
    total += cplx(G::integrate([&](double u) { return radial_integrand(u, false); }, ua, ub),
                  G::integrate([&](double u) { return radial_integrand(u, true); }, ua, ub));
  }
  return (total / (kPi * kPi)).real();
}

}  // namespace oracle
