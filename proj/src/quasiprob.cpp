#include "nljc/quasiprob.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "nljc/error.hpp"
#include "nljc/specfun.hpp"

namespace nljc {

namespace {

constexpr double kPi = std::numbers::pi;

double filter_prefactor(double w) { return 16.0 * w * w / (kPi * kPi); }

}  // namespace

GaussLegendre::GaussLegendre(int count) {
  if (count < 1) throw std::invalid_argument("GaussLegendre: need at least one node");
  nodes.resize(static_cast<std::size_t>(count));
  weights.resize(static_cast<std::size_t>(count));
  const int half = (count + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton iteration on P_count from the Tricomi initial guess.
    double x = std::cos(kPi * (i + 0.75) / (count + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int j = 2; j <= count; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = count * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Map [-1, 1] -> [0, 1].
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(count - 1 - i);
    nodes[lo] = 0.5 * (1.0 - x);
    nodes[hi] = 0.5 * (1.0 + x);
    weights[lo] = 0.5 * w;
    weights[hi] = 0.5 * w;
  }
}

void GridSpec::validate() const {
  if (n_re < 1 || n_im < 1) throw ConfigError("grid resolution must be >= 1 per axis");
  if (!(re_max >= re_min) || !(im_max >= im_min)) throw ConfigError("grid ranges must be ascending");
}

cplx GridSpec::point(int i, int j) const {
  const double re = n_re > 1 ? re_min + (re_max - re_min) * j / (n_re - 1) : re_min;
  const double im = n_im > 1 ? im_min + (im_max - im_min) * i / (n_im - 1) : im_min;
  return {re, im};
}

GridSpec GridSpec::square(double extent, int res) {
  GridSpec g;
  g.re_min = g.im_min = -extent;
  g.re_max = g.im_max = extent;
  g.n_re = g.n_im = res;
  return g;
}

double QuasiprobGrid::max_value() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& row : values)
    for (double v : row) m = std::max(m, v);
  return m;
}

double QuasiprobGrid::min_value() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& row : values)
    for (double v : row) m = std::min(m, v);
  return m;
}

double lambda_nm(int n, int m, double x) {
  if (n < 0 || m < 0) throw std::invalid_argument("lambda_nm: indices must be >= 0");
  const int lo = std::min(n, m);
  const int d = std::abs(m - n);
  const double lag = laguerre(lo, d, x * x);
  if (d == 0) return lag;
  if (x == 0.0) return 0.0;
  // |x|^d sqrt(lo! / hi!) in log space.
  const double mag =
      std::exp(d * std::log(std::abs(x)) + 0.5 * (std::lgamma(lo + 1.0) - std::lgamma(lo + d + 1.0)));
  double sign = (x < 0.0 && d % 2 == 1) ? -1.0 : 1.0;
  if (m > n && d % 2 == 1) sign = -sign;  // (-x)^{m-n}
  return sign * mag * lag;
}

double disc_overlap(double z) {
  const double zc = std::clamp(z, 0.0, 1.0);
  return std::acos(zc) - zc * std::sqrt(1.0 - zc * zc);
}

cplx p_omega_element(int n, int m, cplx alpha, double filter_width, int quad_nodes) {
  if (!(filter_width > 0.0)) throw ConfigError("filter width must be > 0");
  const GaussLegendre rule(quad_nodes);
  const double r = std::abs(alpha);
  const double phi = r > 0.0 ? std::arg(alpha) : 0.0;
  const int d = n - m;
  double sum = 0.0;
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double z = rule.nodes[q];
    sum += rule.weights[q] * lambda_nm(n, m, 2.0 * filter_width * z) * z *
           bessel_j(d, 4.0 * filter_width * r * z) * disc_overlap(z);
  }
  return filter_prefactor(filter_width) * std::polar(1.0, d * phi) * sum;
}

QuasiprobEvaluator::QuasiprobEvaluator(const Eigen::MatrixXcd& rho, double filter_width,
                                       int quad_nodes)
    : filter_width_(filter_width), dim_(static_cast<int>(rho.rows())), rule_(quad_nodes) {
  if (!(filter_width > 0.0)) throw ConfigError("filter width must be > 0");
  if (rho.rows() != rho.cols() || rho.rows() == 0)
    throw ConfigError("density matrix must be square and non-empty");
  const std::size_t nq = rule_.nodes.size();
  const double pref = filter_prefactor(filter_width);
  radial_weight_.resize(nq);
  offset_sums_.assign(nq, std::vector<cplx>(static_cast<std::size_t>(2 * dim_ - 1), cplx{}));
  for (std::size_t q = 0; q < nq; ++q) {
    const double z = rule_.nodes[q];
    radial_weight_[q] = pref * rule_.weights[q] * z * disc_overlap(z);
    const double x = 2.0 * filter_width * z;
    auto& sums = offset_sums_[q];
    for (int n = 0; n < dim_; ++n) {
      for (int m = 0; m < dim_; ++m) {
        const cplx rho_mn = rho(m, n);
        if (rho_mn == cplx{}) continue;
        sums[static_cast<std::size_t>(n - m + dim_ - 1)] += rho_mn * lambda_nm(n, m, x);
      }
    }
  }
}

cplx QuasiprobEvaluator::value(cplx alpha) const {
  const double r = std::abs(alpha);
  const double phi = r > 0.0 ? std::arg(alpha) : 0.0;
  const int dmax = dim_ - 1;

  std::vector<cplx> rot(static_cast<std::size_t>(dmax) + 1);
  for (int d = 0; d <= dmax; ++d) rot[static_cast<std::size_t>(d)] = std::polar(1.0, d * phi);

  cplx total{};
  for (std::size_t q = 0; q < rule_.nodes.size(); ++q) {
    const auto bessel = bessel_j_sequence(dmax, 4.0 * filter_width_ * r * rule_.nodes[q]);
    const auto& sums = offset_sums_[q];
    cplx acc = sums[static_cast<std::size_t>(dmax)] * bessel[0];
    for (int d = 1; d <= dmax; ++d) {
      const double jd = bessel[static_cast<std::size_t>(d)];
      const double jneg = (d % 2 == 1) ? -jd : jd;  // J_{-d}
      acc += rot[static_cast<std::size_t>(d)] * jd * sums[static_cast<std::size_t>(dmax + d)] +
             std::conj(rot[static_cast<std::size_t>(d)]) * jneg *
                 sums[static_cast<std::size_t>(dmax - d)];
    }
    total += radial_weight_[q] * acc;
  }
  return total;
}

QuasiprobGrid p_omega_grid(const Eigen::MatrixXcd& rho, const GridSpec& grid, double filter_width,
                           int quad_nodes) {
  grid.validate();
  const QuasiprobEvaluator eval(rho, filter_width, quad_nodes);

  QuasiprobGrid out;
  out.filter_width = filter_width;
  out.grid = grid;
  out.values.assign(static_cast<std::size_t>(grid.n_im),
                    std::vector<double>(static_cast<std::size_t>(grid.n_re), 0.0));
  std::vector<double> row_residue(static_cast<std::size_t>(grid.n_im), 0.0);

  // Rows are independent; each worker owns a fixed stride of rows so the
  // result does not depend on scheduling.
  const unsigned workers =
      std::clamp(std::thread::hardware_concurrency(), 1u, static_cast<unsigned>(grid.n_im));
  auto run_rows = [&](unsigned first) {
    for (int i = static_cast<int>(first); i < grid.n_im; i += static_cast<int>(workers)) {
      auto& row = out.values[static_cast<std::size_t>(i)];
      double residue = 0.0;
      for (int j = 0; j < grid.n_re; ++j) {
        const cplx v = eval.value(grid.point(i, j));
        row[static_cast<std::size_t>(j)] = v.real();
        residue = std::max(residue, std::abs(v.imag()));
      }
      row_residue[static_cast<std::size_t>(i)] = residue;
    }
  };
  if (workers == 1) {
    run_rows(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run_rows, w);
    for (auto& th : pool) th.join();
  }
  for (double r : row_residue) out.max_imag_residue = std::max(out.max_imag_residue, r);
  return out;
}

QuasiprobGrid p_omega_grid(const MotionalDensityMatrix& rho, const GridSpec& grid,
                           double filter_width, int quad_nodes) {
  return p_omega_grid(rho.entries, grid, filter_width, quad_nodes);
}

}  // namespace nljc
