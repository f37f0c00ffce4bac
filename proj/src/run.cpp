#include "nljc/run.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nljc/convergence.hpp"
#include "nljc/error.hpp"

namespace nljc {

namespace {

using nlohmann::json;

json params_json(const RunConfig& c) {
  const auto& p = c.params;
  return json{{"k", p.k},
              {"eta", p.eta},
              {"delta_phi", p.delta_phi},
              {"theta", p.theta},
              {"delta_omega", p.delta_omega},
              {"kappa_abs", p.kappa_abs},
              {"nu", p.nu},
              {"omega21", p.omega21},
              {"electronic", c.initial.electronic},
              {"alpha0_re", c.initial.alpha0.real()},
              {"alpha0_im", c.initial.alpha0.imag()},
              {"t0", c.t0},
              {"method", c.methods.front().name()}};
}

MotionalDensityMatrix density_at_end(const RunConfig& c) {
  return motional_density(c.t_end, c.t0, c.params, c.initial, c.n_max, c.methods.front());
}

}  // namespace

void RunConfig::validate() const {
  params.validate();
  if (initial.electronic != 1 && initial.electronic != 2)
    throw ConfigError("--electronic must be 1 or 2");
  if (!std::isfinite(initial.alpha0.real()) || !std::isfinite(initial.alpha0.imag()))
    throw ConfigError("alpha0 must be finite");
  if (steps < 1) throw ConfigError("--steps must be >= 1");
  if (!(t_end >= t_start)) throw ConfigError("time grid must be ascending (t_end >= t_start)");
  if (!(t_start >= t0)) throw ConfigError("time grid must start at or after t0");
  if (methods.empty()) throw ConfigError("at least one --method is required");
  if (n_max && *n_max < 0) throw ConfigError("--nmax must be >= 0");
  if (!(filter_width > 0.0)) throw ConfigError("--filter-width must be > 0");
  if (!(grid_extent >= 0.0)) throw ConfigError("--grid-extent must be >= 0");
  if (grid_res < 1) throw ConfigError("--grid-res must be >= 1");
  if (quad_nodes < 64) throw ConfigError("--quad-nodes must be >= 64");
  if (wmax_search < 1) throw ConfigError("--wmax-search must be >= 1");
  if (dw_steps < 0) throw ConfigError("--dw-steps must be >= 0");
  if (dw_steps > 0 && !(dw_max >= dw_min)) throw ConfigError("--dw-max must be >= --dw-min");
}

std::vector<double> RunConfig::time_grid() const {
  std::vector<double> grid(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i)
    grid[static_cast<std::size_t>(i)] =
        steps == 1 ? t_start : t_start + (t_end - t_start) * i / (steps - 1);
  if (steps > 1) grid.back() = t_end;
  return grid;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

std::string run_sigma22(const RunConfig& config) {
  config.validate();
  std::vector<EvolutionMethod> columns{EvolutionMethod::exact()};
  for (const auto& m : config.methods)
    if (m.kind() != EvolutionMethod::Kind::Exact) columns.push_back(m);

  std::ostringstream out;
  out << "t_kappa";
  for (const auto& m : columns) out << ",sigma22_" << m.name();
  out << '\n';
  for (double t : config.time_grid()) {
    out << format_number(t);
    for (const auto& m : columns)
      out << ',' << format_number(sigma22(t, config.t0, config.params, config.initial,
                                          config.n_max, m));
    out << '\n';
  }
  return out.str();
}

std::string run_density(const RunConfig& config) {
  config.validate();
  const auto rho = density_at_end(config);
  json re = json::array();
  json im = json::array();
  for (int i = 0; i < rho.dimension(); ++i) {
    json row_re = json::array();
    json row_im = json::array();
    for (int j = 0; j < rho.dimension(); ++j) {
      row_re.push_back(rho.entries(i, j).real());
      row_im.push_back(rho.entries(i, j).imag());
    }
    re.push_back(std::move(row_re));
    im.push_back(std::move(row_im));
  }
  json doc{{"schema_version", kSchemaVersion},
           {"params", params_json(config)},
           {"t", rho.t},
           {"n_max", rho.n_max},
           {"re", std::move(re)},
           {"im", std::move(im)}};
  return doc.dump() + "\n";
}

std::string run_quasiprob(const RunConfig& config) {
  config.validate();
  const auto rho = density_at_end(config);
  const auto spec = GridSpec::square(config.grid_extent, config.grid_res);
  const auto grid = p_omega_grid(rho, spec, config.filter_width, config.quad_nodes);
  json doc{{"schema_version", kSchemaVersion},
           {"params", params_json(config)},
           {"t", rho.t},
           {"n_max", rho.n_max},
           {"quad_nodes", config.quad_nodes},
           {"w", config.filter_width},
           {"grid",
            {{"re_min", spec.re_min},
             {"re_max", spec.re_max},
             {"im_min", spec.im_min},
             {"im_max", spec.im_max},
             {"n_re", spec.n_re},
             {"n_im", spec.n_im}}},
           {"values", grid.values}};
  return doc.dump() + "\n";
}

ConvergenceTables run_convergence(const RunConfig& config) {
  config.validate();
  const auto wm = w_max(config.params, config.wmax_search);
  if (!(wm.value > 0.0)) throw ConfigError("convergence: all couplings w_n vanish (w_max = 0)");
  const double kappa = config.params.kappa_abs;

  std::vector<double> detunings;
  if (config.dw_steps == 0) {
    detunings.push_back(config.params.delta_omega);
  } else {
    for (int i = 0; i < config.dw_steps; ++i)
      detunings.push_back(config.dw_steps == 1 ? config.dw_min
                                               : config.dw_min + (config.dw_max - config.dw_min) *
                                                                     i / (config.dw_steps - 1));
  }

  ConvergenceTables tables;
  std::ostringstream bounds;
  std::ostringstream recon;
  bounds << "delta_omega,t_max,sufficient_bound\n";
  recon << "delta_omega,t_start,t_end\n";
  const double bound = sufficient_bound(kappa, wm.value);
  for (double dw : detunings) {
    bounds << format_number(dw) << ',' << format_number(t_max(dw, wm.value, kappa)) << ','
           << format_number(bound) << '\n';
    if (config.t_limit > 0.0) {
      for (const auto& [a, b] : reconvergence_intervals(dw, wm.value, kappa, config.t_limit))
        recon << format_number(dw) << ',' << format_number(a) << ',' << format_number(b) << '\n';
    }
  }
  tables.bounds = bounds.str();
  if (config.t_limit > 0.0) tables.reconvergence = recon.str();
  return tables;
}

std::string run_wmax(const RunConfig& config, bool* at_boundary) {
  config.params.validate();
  if (config.wmax_search < 1) throw ConfigError("--wmax-search must be >= 1");
  const auto wm = w_max(config.params, config.wmax_search);
  if (at_boundary) *at_boundary = wm.at_boundary;
  return "w_max=" + format_number(wm.value) + " argmax=" + std::to_string(wm.argmax) + "\n";
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << content;
    f.flush();
    if (!f) {
      f.close();
      fs::remove(tmp);
      throw std::runtime_error("failed writing " + tmp.string());
    }
  }
  fs::rename(tmp, target);
}

}  // namespace nljc
