#pragma once

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "nljc/states.hpp"

namespace nljc {

inline constexpr double kDefaultFilterWidth = 1.5;
inline constexpr int kDefaultQuadNodes = 200;

// Gauss-Legendre nodes and weights mapped to [0, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(int count);
};

// Rectangular phase-space grid. Rows run along Im(alpha), columns along Re(alpha);
// both ends of each range are sampled.
struct GridSpec {
  double re_min = -4.0;
  double re_max = 4.0;
  double im_min = -4.0;
  double im_max = 4.0;
  int n_re = 201;
  int n_im = 201;

  void validate() const;
  // Sample point for row i (imaginary axis) and column j (real axis).
  cplx point(int i, int j) const;
  // Square grid [-extent, extent]^2 with res points per axis.
  static GridSpec square(double extent, int res);
};

// Regularized P-function sampled on a grid; values are indexed [row = im][col = re].
struct QuasiprobGrid {
  double filter_width = kDefaultFilterWidth;
  GridSpec grid;
  std::vector<std::vector<double>> values;
  // Largest |Im P| seen while summing (should vanish for Hermitian rho).
  double max_imag_residue = 0.0;

  double max_value() const;
  double min_value() const;
};

// Lambda_{n,m}(x): the radial Fock-basis kernel of the filtered characteristic function.
double lambda_nm(int n, int m, double x);

// (arccos z - z sqrt(1 - z^2)), the overlap of two unit discs at separation 2z.
double disc_overlap(double z);

// Single element P_{Omega,n,m}(alpha) by Gauss-Legendre quadrature over z in [0,1].
cplx p_omega_element(int n, int m, cplx alpha, double filter_width,
                     int quad_nodes = kDefaultQuadNodes);

// Evaluates sum_{m,n} rho_{m,n} P_{Omega,n,m}(alpha) for one density matrix.
//
// The Lambda_{n,m}(2wz) kernels are tabulated per quadrature node and
// contracted with rho by diagonal offset once; each alpha then costs one
// Bessel sweep per node plus a sum over offsets.
class QuasiprobEvaluator {
 public:
  QuasiprobEvaluator(const Eigen::MatrixXcd& rho, double filter_width,
                     int quad_nodes = kDefaultQuadNodes);

  cplx value(cplx alpha) const;
  double filter_width() const { return filter_width_; }

 private:
  double filter_width_;
  int dim_;
  GaussLegendre rule_;
  std::vector<double> radial_weight_;  // w_q z_q disc_overlap(z_q) * 16 w^2 / pi^2
  // offset_sums_[q][d + dim - 1] = sum_{n-m=d} rho_{m,n} Lambda_{n,m}(2 w z_q)
  std::vector<std::vector<cplx>> offset_sums_;
};

QuasiprobGrid p_omega_grid(const MotionalDensityMatrix& rho, const GridSpec& grid,
                           double filter_width = kDefaultFilterWidth,
                           int quad_nodes = kDefaultQuadNodes);
QuasiprobGrid p_omega_grid(const Eigen::MatrixXcd& rho, const GridSpec& grid,
                           double filter_width = kDefaultFilterWidth,
                           int quad_nodes = kDefaultQuadNodes);

}  // namespace nljc
