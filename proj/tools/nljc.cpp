// nljc: command-line front end for the detuned nonlinear Jaynes-Cummings simulator.
//
// Exit codes: 0 ok, 2 configuration error, 3 numerical tolerance violated, 1 anything else.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nljc/error.hpp"
#include "nljc/run.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitTolerance = 3;

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-")
    std::cout << content << std::flush;
  else
    nljc::write_file_atomic(path, content);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Detuned nonlinear Jaynes-Cummings simulator for a trapped ion"};
  app.set_config("--config", "", "TOML file with option values (command-line flags win)");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);

  nljc::RunConfig cfg;
  double alpha_re = 0.0;
  double alpha_im = 0.0;
  std::vector<std::string> method_names;
  int nmax = -1;

  app.add_option("--k", cfg.params.k, "sideband order k >= 0")->capture_default_str();
  app.add_option("--eta", cfg.params.eta, "Lamb-Dicke parameter")->capture_default_str();
  app.add_option("--delta-phi", cfg.params.delta_phi, "laser phase difference")->capture_default_str();
  app.add_option("--theta", cfg.params.theta, "phase of kappa")->capture_default_str();
  app.add_option("--delta-omega", cfg.params.delta_omega, "detuning in units of |kappa|")
      ->capture_default_str();
  app.add_option("--alpha0-re", alpha_re, "Re alpha0 of the initial coherent state")
      ->capture_default_str();
  app.add_option("--alpha0-im", alpha_im, "Im alpha0")->capture_default_str();
  app.add_option("--electronic", cfg.initial.electronic, "initial electronic level, 1 or 2")
      ->capture_default_str();
  app.add_option("--t0", cfg.t0, "preparation time t0 |kappa|")->capture_default_str();
  app.add_option("--t-start", cfg.t_start, "first time t |kappa|")->capture_default_str();
  app.add_option("--t-end", cfg.t_end, "last time t |kappa| (evaluation time for density/quasiprob)")
      ->capture_default_str();
  app.add_option("--steps", cfg.steps, "number of time-grid points")->capture_default_str();
  app.add_option("--method", method_names, "exact | noto | magnus1..magnus5 (repeatable)");
  app.add_option("--nmax", nmax, "Fock truncation (default: automatic)");
  app.add_option("--filter-width", cfg.filter_width, "filter width w of P_Omega")
      ->capture_default_str();
  app.add_option("--grid-extent", cfg.grid_extent, "phase-space grid half width")
      ->capture_default_str();
  app.add_option("--grid-res", cfg.grid_res, "grid points per axis")->capture_default_str();
  app.add_option("--quad-nodes", cfg.quad_nodes, "Gauss-Legendre nodes for the radial integral")
      ->capture_default_str();
  app.add_option("--wmax-search", cfg.wmax_search, "Fock window searched for w_max")
      ->capture_default_str();
  app.add_option("--dw-min", cfg.dw_min, "convergence: first detuning of the scan")
      ->capture_default_str();
  app.add_option("--dw-max", cfg.dw_max, "convergence: last detuning of the scan")
      ->capture_default_str();
  app.add_option("--dw-steps", cfg.dw_steps, "convergence: scan points (0 = use --delta-omega)")
      ->capture_default_str();
  app.add_option("--t-limit", cfg.t_limit, "convergence: search reconvergence windows up to this time")
      ->capture_default_str();
  app.add_option("--reconvergence-out", cfg.reconvergence_out,
                 "convergence: CSV path for the reconvergence windows");
  app.add_option("--out", cfg.out, "output path (default: stdout)");

  app.add_subcommand("sigma22", "excited-state population trace (CSV)")->fallthrough();
  app.add_subcommand("density", "motional density matrix at --t-end (JSON)")->fallthrough();
  app.add_subcommand("quasiprob", "filtered P-function on a phase-space grid (JSON)")->fallthrough();
  app.add_subcommand("convergence", "Magnus convergence time versus detuning (CSV)")->fallthrough();
  app.add_subcommand("wmax", "maximal coupling coefficient over the Fock window")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    cfg.subcommand = app.get_subcommands().front()->get_name();
    cfg.initial.alpha0 = {alpha_re, alpha_im};
    if (nmax >= 0) cfg.n_max = nmax;
    if (app.count("--nmax") && nmax < 0) throw nljc::ConfigError("--nmax must be >= 0");
    if (!method_names.empty()) {
      cfg.methods.clear();
      for (const auto& name : method_names) cfg.methods.push_back(nljc::EvolutionMethod::parse(name));
    }

    if (cfg.subcommand == "sigma22") {
      emit(cfg.out, nljc::run_sigma22(cfg));
    } else if (cfg.subcommand == "density") {
      emit(cfg.out, nljc::run_density(cfg));
    } else if (cfg.subcommand == "quasiprob") {
      emit(cfg.out, nljc::run_quasiprob(cfg));
    } else if (cfg.subcommand == "convergence") {
      const auto tables = nljc::run_convergence(cfg);
      emit(cfg.out, tables.bounds);
      if (!tables.reconvergence.empty()) {
        if (cfg.reconvergence_out.empty())
          std::cout << tables.reconvergence << std::flush;
        else
          nljc::write_file_atomic(cfg.reconvergence_out, tables.reconvergence);
      }
    } else if (cfg.subcommand == "wmax") {
      bool at_boundary = false;
      emit(cfg.out, nljc::run_wmax(cfg, &at_boundary));
      if (at_boundary)
        std::cerr << "warning: maximum sits at the edge of the search window; increase --wmax-search\n";
    }
  } catch (const nljc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const nljc::ToleranceError& e) {
    std::cerr << "tolerance violation: " << e.what() << '\n';
    return kExitTolerance;
  } catch (const nljc::BranchPointError& e) {
    std::cerr << "tolerance violation: " << e.what() << '\n';
    return kExitTolerance;
  } catch (const nljc::SearchExhaustedError& e) {
    std::cerr << "tolerance violation: " << e.what() << '\n';
    return kExitTolerance;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
