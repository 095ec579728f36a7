#pragma once

#include <string>
#include <vector>

#include "floodsim/boundary.hpp"
#include "floodsim/debris.hpp"
#include "floodsim/grid.hpp"
#include "floodsim/limiter.hpp"
#include "floodsim/swe.hpp"

namespace floodsim::io {

enum class CouplingKind { one_way, two_way };
enum class OutputFormat { csv, vtk, both };
enum class ParticleIntegrator { euler, heun };
enum class TopoKind { analytic, file };
enum class FeatureKind { ramp, gaussian };

struct TopoFeature {
  FeatureKind kind = FeatureKind::ramp;
  // ramp: z += a + bx*x + by*y
  double a = 0.0, bx = 0.0, by = 0.0;
  // gaussian: z += amplitude * exp(-((x-cx)^2 + (y-cy)^2) / (2 width^2))
  double amplitude = 0.0, cx = 0.0, cy = 0.0, width = 1.0;

  bool operator==(const TopoFeature&) const = default;
};

struct TopographyInput {
  TopoKind kind = TopoKind::analytic;
  std::vector<TopoFeature> features;
  std::string file;

  bool operator==(const TopographyInput&) const = default;
};

struct BoxRegion {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
  double value = 0.0; // added elevation or debris density

  bool contains(double x, double y) const { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }
  bool operator==(const BoxRegion&) const = default;
};

struct SimConfig {
  // [grid]
  int nx = 100, ny = 100;
  double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;
  // [time]
  double t_end = 1.0;
  double cfl = 0.25;
  double dt_max = 1e-3;
  int frame_every = 0; // 0 = initial and final frames only
  // [physics]
  double gravity = 9.81;
  // [limiter]
  double limiter_beta = 1.5;
  // [boundary]
  BoundarySet boundaries;
  // [wetdry]
  double h_ref = 1.0;
  double h_wet_rel = 1e-6;
  double eps_blend = 1e-12;
  bool eps_kurganov = false;
  double mu_relax = 1e-4;
  double sigma_floor_rel = 1e-8;
  // [debris]
  bool debris_enabled = false;
  debris::DebrisParams debris;
  // [coupling]
  CouplingKind coupling_kind = CouplingKind::one_way;
  double mu_debris = 0.0;
  // [water]
  double water_level = 0.0;
  std::vector<BoxRegion> water_regions;  // add_elevation boxes
  std::vector<BoxRegion> debris_regions; // density boxes
  // [topography]
  TopographyInput topography;
  // [particles]
  int particle_count = 0;
  unsigned particle_seed = 12345;
  ParticleIntegrator particle_integrator = ParticleIntegrator::heun;
  // [output]
  std::string output_directory = "out";
  OutputFormat output_format = OutputFormat::csv;
  bool write_damage_vector = false;
  // [scenario]
  std::string scenario_name = "unnamed";

  Grid2D grid() const { return Grid2D::make(nx, ny, x0, y0, x1, y1); }
  swe::SweParams swe_params() const;
  double h_wet() const { return h_wet_rel * h_ref; }

  void validate() const; // range/consistency checks, names the offending key
  bool operator==(const SimConfig&) const = default;
};

// Parses the flat key-value document (docs/formats.md). Diagnostics carry the
// offending key, line number, and the violated constraint.
SimConfig parse_config(const std::string& text);
SimConfig parse_config_file(const std::string& path);

// Canonical text form; parse(serialize(c)) == c.
std::string serialize_config(const SimConfig& cfg);

} // namespace floodsim::io
