#include "floodsim/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "floodsim/config.hpp"
#include "floodsim/coupling.hpp"
#include "floodsim/euler.hpp"
#include "floodsim/threading.hpp"
#include "floodsim/time_control.hpp"
#include "floodsim/topography_io.hpp"
#include "floodsim/writers.hpp"

namespace floodsim {

namespace {

namespace fs = std::filesystem;

std::string frame_name(const std::string& dir, long step, const char* ext) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame_%06ld.%s", step, ext);
  return (fs::path(dir) / buf).string();
}

int cmd_validate(const std::string& config_path, bool quiet) {
  const io::SimConfig cfg = io::parse_config_file(config_path);
  if (!quiet) {
    std::cout << "config OK: scenario '" << cfg.scenario_name << "', grid " << cfg.nx << "x"
              << cfg.ny << " on [" << cfg.x0 << "," << cfg.x1 << "]x[" << cfg.y0 << "," << cfg.y1
              << "], t_end " << cfg.t_end << ", debris "
              << (cfg.debris_enabled ? "enabled" : "disabled") << "\n";
  }
  return 0;
}

int cmd_run(const std::string& config_path, const std::string& output_dir, int frames,
            bool quiet) {
  io::SimConfig cfg = io::parse_config_file(config_path);
  if (!output_dir.empty()) cfg.output_directory = output_dir;
  if (frames >= 0) cfg.frame_every = frames;

  std::error_code ec;
  fs::create_directories(cfg.output_directory, ec);
  if (ec || !fs::is_directory(cfg.output_directory))
    throw IoError("cannot create output directory '" + cfg.output_directory + "'");

  int written = 0;
  auto sink = [&](const io::OutputFrame& frame) {
    if (cfg.output_format == io::OutputFormat::csv || cfg.output_format == io::OutputFormat::both)
      io::write_frame_csv(frame, frame_name(cfg.output_directory, frame.step, "csv"));
    if (cfg.output_format == io::OutputFormat::vtk || cfg.output_format == io::OutputFormat::both)
      io::write_frame_vtk(frame, frame_name(cfg.output_directory, frame.step, "vtk"));
    ++written;
    if (!quiet)
      std::cout << "frame " << written << ": step " << frame.step << ", t = " << frame.t << "\n";
  };

  const sim::RunResult res = sim::run_simulation(cfg, sink);
  if (!quiet)
    std::cout << "done: " << res.state.step << " steps to t = " << res.state.t << ", "
              << res.frames_emitted << " frames in '" << cfg.output_directory << "'\n";
  return 0;
}

int cmd_sod(int cells, const std::string& output_dir, bool first_order, bool quiet) {
  const euler::SodResult res = euler::run_sod(cells, 0.23, 0.25, 1.5, first_order);
  std::cout << "sod: " << cells << " cells, T=0.23, CFL=0.25, beta=1.5, " << res.steps
            << " steps\n";
  std::cout << "L1(rho) = " << res.l1_rho << "\n";
  std::cout << "L1(u)   = " << res.l1_u << "\n";
  std::cout << "L1(p)   = " << res.l1_p << "\n";
  if (!output_dir.empty()) {
    std::error_code ec;
    fs::create_directories(output_dir, ec);
    if (ec || !fs::is_directory(output_dir))
      throw IoError("cannot create output directory '" + output_dir + "'");
    const std::string path = (fs::path(output_dir) / "sod_profile.csv").string();
    io::write_euler_profile_csv(path, res.x, res.rho, res.u, res.p);
    if (!quiet) std::cout << "profile written to " << path << "\n";
  }
  return 0;
}

int cmd_lake_at_rest(const std::string& config_path, int steps, bool quiet) {
  io::SimConfig cfg = io::parse_config_file(config_path);
  const Grid2D grid = cfg.grid();
  const swe::Topography topo = io::load_topography(cfg.topography, grid, cfg.boundaries);
  const swe::SweParams params = cfg.swe_params();

  sim::SimulationState st = sim::initial_state(cfg);
  std::vector<double> surface0(grid.cells());
  for (std::size_t c = 0; c < grid.cells(); ++c) surface0[c] = st.water.h[c] + topo.z[c];

  for (int s = 0; s < steps; ++s) {
    const double speed = swe::max_signal_speed(st.water, st.dry, params);
    const double dt = compute_dt_cfl(speed, grid, cfg.cfl, cfg.dt_max);
    st.water = swe::swe_step(st.water, topo, st.dry, params, dt);
  }

  double dev_surface = 0.0, dev_hu = 0.0, dev_hv = 0.0;
  for (std::size_t c = 0; c < grid.cells(); ++c) {
    if (st.water.h[c] > params.wetdry.h_wet)
      dev_surface = std::fmax(dev_surface,
                              std::fabs(st.water.h[c] + topo.z[c] - surface0[c]));
    dev_hu = std::fmax(dev_hu, std::fabs(st.water.hu[c]));
    dev_hv = std::fmax(dev_hv, std::fabs(st.water.hv[c]));
  }
  std::cout << "lake-at-rest: " << steps << " steps on " << grid.nx << "x" << grid.ny << "\n";
  std::cout << "max |h+z - (h+z)_0| = " << dev_surface << "\n";
  std::cout << "max |hu| = " << dev_hu << "\n";
  std::cout << "max |hv| = " << dev_hv << "\n";
  if (!quiet && (dev_surface > 1e-10 || dev_hu > 1e-10))
    std::cout << "note: deviations above 1e-10; initial state may not be an equilibrium\n";
  return 0;
}

} // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"floodsim: finite-volume shallow water + debris transport simulator"};
  app.require_subcommand(1);
  app.footer("Environment: SIM_THREADS sets the worker-count hint for field updates.");

  bool quiet = false;
  app.add_flag("--quiet", quiet, "suppress progress output");

  std::string config_path, output_dir;
  int frames = -1;

  auto* validate = app.add_subcommand("validate", "parse and validate a configuration");
  validate->add_option("config", config_path, "configuration file")->required();

  auto* run = app.add_subcommand("run", "run a full simulation");
  run->add_option("config", config_path, "configuration file")->required();
  run->add_option("--output-dir", output_dir, "frame output directory (overrides config)");
  run->add_option("--frames", frames, "emit a frame every N steps (overrides config)");

  int sod_cells = 384;
  bool sod_first_order = false;
  auto* sod = app.add_subcommand("sod", "built-in shock tube validation with L1 errors");
  sod->add_option("--cells", sod_cells, "grid resolution")->check(CLI::PositiveNumber);
  sod->add_option("--output-dir", output_dir, "write the (x,rho,u,p) profile here");
  sod->add_flag("--first-order", sod_first_order, "disable the second-order reconstruction");

  int lar_steps = 1000;
  auto* lar = app.add_subcommand("lake-at-rest", "well-balancedness check on a configuration");
  lar->add_option("config", config_path, "configuration file")->required();
  lar->add_option("--steps", lar_steps, "number of steps")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (validate->parsed()) return cmd_validate(config_path, quiet);
    if (run->parsed()) return cmd_run(config_path, output_dir, frames, quiet);
    if (sod->parsed()) return cmd_sod(sod_cells, output_dir, sod_first_order, quiet);
    if (lar->parsed()) return cmd_lake_at_rest(config_path, lar_steps, quiet);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const NumericsError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 4;
  }
  return 1;
}

} // namespace floodsim
