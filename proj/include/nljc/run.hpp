#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nljc/dynamics.hpp"
#include "nljc/quasiprob.hpp"
#include "nljc/states.hpp"

namespace nljc {

inline constexpr int kSchemaVersion = 1;

// Everything a CLI subcommand needs. Times are t*|kappa| and frequencies are
// in units of |kappa| (kappa_abs stays 1 on this surface).
struct RunConfig {
  std::string subcommand;
  ModelParams params;
  InitialState initial;
  double t0 = 0.0;
  double t_start = 0.0;
  double t_end = 0.0;
  int steps = 1;  // number of grid points, endpoints included
  std::vector<EvolutionMethod> methods{EvolutionMethod::exact()};
  std::optional<int> n_max;
  double filter_width = kDefaultFilterWidth;
  double grid_extent = 4.0;
  int grid_res = 201;
  int quad_nodes = kDefaultQuadNodes;
  int wmax_search = kDefaultWMaxSearch;
  // convergence scan over delta_omega
  double dw_min = 0.0;
  double dw_max = 0.0;
  int dw_steps = 0;  // 0: single row at params.delta_omega
  double t_limit = 0.0;  // > 0 enables the reconvergence-interval table
  std::string out;
  std::string reconvergence_out;

  // Throws ConfigError on any domain violation.
  void validate() const;
  std::vector<double> time_grid() const;
};

// Formats with 15 significant digits ("%.15g").
std::string format_number(double v);

// Each run_* returns the exact bytes that the CLI writes.
std::string run_sigma22(const RunConfig& config);
std::string run_density(const RunConfig& config);
std::string run_quasiprob(const RunConfig& config);

struct ConvergenceTables {
  std::string bounds;          // delta_omega,t_max,sufficient_bound
  std::string reconvergence;   // delta_omega,t_start,t_end (empty unless t_limit > 0)
};
ConvergenceTables run_convergence(const RunConfig& config);

// "w_max=<value> argmax=<n>" line; sets at_boundary when the window was too small.
std::string run_wmax(const RunConfig& config, bool* at_boundary = nullptr);

// Writes via a temporary file in the same directory and renames it into place.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace nljc
