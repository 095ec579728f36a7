#include "floodsim/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace floodsim::io {

swe::SweParams SimConfig::swe_params() const {
  swe::SweParams p;
  p.gravity = gravity;
  p.h_ref = h_ref;
  p.sigma_floor_rel = sigma_floor_rel;
  p.eps_kurganov = eps_kurganov;
  p.wetdry.h_wet = h_wet();
  p.wetdry.eps_blend = eps_blend;
  p.wetdry.mu_relax = mu_relax;
  p.boundaries = boundaries;
  return p;
}

void SimConfig::validate() const {
  auto fail = [](const std::string& key, const std::string& constraint) {
    throw ValidationError("config: key '" + key + "' " + constraint);
  };
  if (nx < 1) fail("grid.nx", "must be >= 1");
  if (ny < 1) fail("grid.ny", "must be >= 1");
  if (!(x1 > x0)) fail("grid.x1", "must be > grid.x0");
  if (!(y1 > y0)) fail("grid.y1", "must be > grid.y0");
  if (!(t_end >= 0.0)) fail("time.t_end", "must be >= 0");
  if (!(cfl > 0.0 && cfl <= 1.0)) fail("time.cfl", "must lie in (0,1]");
  if (!(dt_max > 0.0)) fail("time.dt_max", "must be > 0");
  if (frame_every < 0) fail("time.frame_every", "must be >= 0");
  if (!(gravity > 0.0)) fail("physics.gravity", "must be > 0");
  if (!(limiter_beta >= 1.0 && limiter_beta <= 2.0)) fail("limiter.beta", "must lie in [1,2]");
  boundaries.validate();
  if (!(h_ref > 0.0)) fail("wetdry.h_ref", "must be > 0");
  if (!(h_wet_rel > 0.0)) fail("wetdry.h_wet_rel", "must be > 0");
  if (!(eps_blend > 0.0)) fail("wetdry.eps_blend", "must be > 0");
  if (!(mu_relax > 0.0)) fail("wetdry.mu_relax", "must be > 0");
  if (!(sigma_floor_rel > 0.0)) fail("wetdry.sigma_floor_rel", "must be > 0");
  debris.validate();
  if (debris_enabled && debris.lambda != 1.0)
    fail("debris.lambda", "must be 1.0 for the coupled simulation path");
  if (!(mu_debris >= 0.0)) fail("coupling.mu_debris", "must be >= 0");
  for (const auto& r : water_regions)
    if (!(r.x1 >= r.x0 && r.y1 >= r.y0)) fail("water.region.box", "must have x0<=x1 and y0<=y1");
  for (const auto& r : debris_regions) {
    if (!(r.x1 >= r.x0 && r.y1 >= r.y0)) fail("debris.region.box", "must have x0<=x1 and y0<=y1");
    if (!(r.value >= 0.0)) fail("debris.region.density", "must be >= 0");
  }
  if (topography.kind == TopoKind::file && topography.file.empty())
    fail("topography.file", "must be set when topography.kind = file");
  for (const auto& f : topography.features)
    if (f.kind == FeatureKind::gaussian && !(f.width > 0.0))
      fail("topography.feature.width", "must be > 0");
  if (particle_count < 0) fail("particles.count", "must be >= 0");
  if (output_directory.empty()) fail("output.directory", "must not be empty");
}

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

struct Document {
  std::map<std::string, Entry> entries; // "section.key" -> value
};

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

Document lex_document(const std::string& text) {
  Document doc;
  std::istringstream in(text);
  std::string raw, section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string s = trim(raw);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']')
        throw ParseError("config line " + std::to_string(line) + ": unterminated section header");
      section = trim(s.substr(1, s.size() - 2));
      if (section.empty())
        throw ParseError("config line " + std::to_string(line) + ": empty section name");
      continue;
    }
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw ParseError("config line " + std::to_string(line) + ": expected 'key = value'");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty())
      throw ParseError("config line " + std::to_string(line) + ": empty key");
    if (section.empty())
      throw ParseError("config line " + std::to_string(line) + ": key '" + key +
                       "' outside of any section");
    const std::string full = section + "." + key;
    if (doc.entries.count(full))
      throw ParseError("config line " + std::to_string(line) + ": duplicate key '" + full + "'");
    doc.entries[full] = {value, line};
  }
  return doc;
}

[[noreturn]] void bad_value(const std::string& key, const Entry& e, const std::string& expect) {
  throw ValidationError("config line " + std::to_string(e.line) + ": key '" + key + "' " +
                        expect + " (got '" + e.value + "')");
}

double to_double(const std::string& key, const Entry& e) {
  const std::string& s = e.value;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || s.empty()) bad_value(key, e, "expects a number");
  if (!std::isfinite(v))
    throw NonFiniteValue("config line " + std::to_string(e.line) + ": key '" + key +
                         "' must be finite");
  return v;
}

int to_int(const std::string& key, const Entry& e) {
  int v = 0;
  const auto res = std::from_chars(e.value.data(), e.value.data() + e.value.size(), v);
  if (res.ec != std::errc() || res.ptr != e.value.data() + e.value.size())
    bad_value(key, e, "expects an integer");
  return v;
}

bool to_bool(const std::string& key, const Entry& e) {
  if (e.value == "true") return true;
  if (e.value == "false") return false;
  bad_value(key, e, "expects true or false");
}

std::array<double, 4> to_box(const std::string& key, const Entry& e) {
  std::istringstream in(e.value);
  std::array<double, 4> b{};
  for (double& x : b)
    if (!(in >> x)) bad_value(key, e, "expects four numbers 'x0 y0 x1 y1'");
  std::string rest;
  if (in >> rest) bad_value(key, e, "expects exactly four numbers");
  return b;
}

// Splits "water.region.3.box" style keys: returns true and fills index/field.
bool numbered_key(const std::string& full, const std::string& prefix, int& index,
                  std::string& field) {
  if (full.rfind(prefix + ".", 0) != 0) return false;
  const std::string rest = full.substr(prefix.size() + 1);
  const std::size_t dot = rest.find('.');
  if (dot == std::string::npos) return false;
  const std::string num = rest.substr(0, dot);
  if (num.empty()) return false;
  for (char c : num)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  index = std::atoi(num.c_str());
  field = rest.substr(dot + 1);
  return true;
}

} // namespace

SimConfig parse_config(const std::string& text) {
  const Document doc = lex_document(text);
  SimConfig cfg;

  std::map<int, BoxRegion> water_regions, debris_regions;
  std::map<int, TopoFeature> features;

  for (const auto& [full, entry] : doc.entries) {
    int index = 0;
    std::string field;

    if (numbered_key(full, "water.region", index, field)) {
      BoxRegion& r = water_regions[index];
      if (field == "box") {
        const auto b = to_box(full, entry);
        r.x0 = b[0];
        r.y0 = b[1];
        r.x1 = b[2];
        r.y1 = b[3];
      } else if (field == "add_elevation") {
        r.value = to_double(full, entry);
      } else {
        throw UnknownKey("config line " + std::to_string(entry.line) + ": unknown key '" + full +
                         "'");
      }
      continue;
    }
    if (numbered_key(full, "debris.region", index, field)) {
      BoxRegion& r = debris_regions[index];
      if (field == "box") {
        const auto b = to_box(full, entry);
        r.x0 = b[0];
        r.y0 = b[1];
        r.x1 = b[2];
        r.y1 = b[3];
      } else if (field == "density") {
        r.value = to_double(full, entry);
      } else {
        throw UnknownKey("config line " + std::to_string(entry.line) + ": unknown key '" + full +
                         "'");
      }
      continue;
    }
    if (numbered_key(full, "topography.feature", index, field)) {
      TopoFeature& f = features[index];
      if (field == "kind") {
        if (entry.value == "ramp") f.kind = FeatureKind::ramp;
        else if (entry.value == "gaussian") f.kind = FeatureKind::gaussian;
        else bad_value(full, entry, "expects ramp or gaussian");
      } else if (field == "a") f.a = to_double(full, entry);
      else if (field == "bx") f.bx = to_double(full, entry);
      else if (field == "by") f.by = to_double(full, entry);
      else if (field == "amplitude") f.amplitude = to_double(full, entry);
      else if (field == "cx") f.cx = to_double(full, entry);
      else if (field == "cy") f.cy = to_double(full, entry);
      else if (field == "width") f.width = to_double(full, entry);
      else
        throw UnknownKey("config line " + std::to_string(entry.line) + ": unknown key '" + full +
                         "'");
      continue;
    }

    if (full == "grid.nx") cfg.nx = to_int(full, entry);
    else if (full == "grid.ny") cfg.ny = to_int(full, entry);
    else if (full == "grid.x0") cfg.x0 = to_double(full, entry);
    else if (full == "grid.y0") cfg.y0 = to_double(full, entry);
    else if (full == "grid.x1") cfg.x1 = to_double(full, entry);
    else if (full == "grid.y1") cfg.y1 = to_double(full, entry);
    else if (full == "time.t_end") cfg.t_end = to_double(full, entry);
    else if (full == "time.cfl") cfg.cfl = to_double(full, entry);
    else if (full == "time.dt_max") cfg.dt_max = to_double(full, entry);
    else if (full == "time.frame_every") cfg.frame_every = to_int(full, entry);
    else if (full == "physics.gravity") cfg.gravity = to_double(full, entry);
    else if (full == "limiter.beta") cfg.limiter_beta = to_double(full, entry);
    else if (full == "boundary.left") cfg.boundaries.left = boundary_kind_from_name(entry.value);
    else if (full == "boundary.right") cfg.boundaries.right = boundary_kind_from_name(entry.value);
    else if (full == "boundary.bottom")
      cfg.boundaries.bottom = boundary_kind_from_name(entry.value);
    else if (full == "boundary.top") cfg.boundaries.top = boundary_kind_from_name(entry.value);
    else if (full == "wetdry.h_ref") cfg.h_ref = to_double(full, entry);
    else if (full == "wetdry.h_wet_rel") cfg.h_wet_rel = to_double(full, entry);
    else if (full == "wetdry.eps_blend") cfg.eps_blend = to_double(full, entry);
    else if (full == "wetdry.eps_kurganov") cfg.eps_kurganov = to_bool(full, entry);
    else if (full == "wetdry.mu_relax") cfg.mu_relax = to_double(full, entry);
    else if (full == "wetdry.sigma_floor_rel") cfg.sigma_floor_rel = to_double(full, entry);
    else if (full == "debris.enabled") cfg.debris_enabled = to_bool(full, entry);
    else if (full == "debris.lambda") cfg.debris.lambda = to_double(full, entry);
    else if (full == "debris.tau_drag") cfg.debris.tau_drag = to_double(full, entry);
    else if (full == "debris.tau_friction") cfg.debris.tau_friction = to_double(full, entry);
    else if (full == "debris.plunge_depth") cfg.debris.plunge_depth = to_double(full, entry);
    else if (full == "debris.friction_exponent")
      cfg.debris.friction_exponent = to_double(full, entry);
    else if (full == "debris.rho_max") cfg.debris.rho_max = to_double(full, entry);
    else if (full == "debris.piece_length") cfg.debris.piece_length = to_double(full, entry);
    else if (full == "coupling.kind") {
      if (entry.value == "one_way") cfg.coupling_kind = CouplingKind::one_way;
      else if (entry.value == "two_way") cfg.coupling_kind = CouplingKind::two_way;
      else bad_value(full, entry, "expects one_way or two_way");
    } else if (full == "coupling.mu_debris") cfg.mu_debris = to_double(full, entry);
    else if (full == "water.level") cfg.water_level = to_double(full, entry);
    else if (full == "topography.kind") {
      if (entry.value == "analytic") cfg.topography.kind = TopoKind::analytic;
      else if (entry.value == "file") cfg.topography.kind = TopoKind::file;
      else bad_value(full, entry, "expects analytic or file");
    } else if (full == "topography.file") cfg.topography.file = entry.value;
    else if (full == "particles.count") cfg.particle_count = to_int(full, entry);
    else if (full == "particles.seed") cfg.particle_seed = static_cast<unsigned>(to_int(full, entry));
    else if (full == "particles.integrator") {
      if (entry.value == "euler") cfg.particle_integrator = ParticleIntegrator::euler;
      else if (entry.value == "heun") cfg.particle_integrator = ParticleIntegrator::heun;
      else bad_value(full, entry, "expects euler or heun");
    } else if (full == "output.directory") cfg.output_directory = entry.value;
    else if (full == "output.format") {
      if (entry.value == "csv") cfg.output_format = OutputFormat::csv;
      else if (entry.value == "vtk") cfg.output_format = OutputFormat::vtk;
      else if (entry.value == "both") cfg.output_format = OutputFormat::both;
      else bad_value(full, entry, "expects csv, vtk or both");
    } else if (full == "output.write_damage_vector")
      cfg.write_damage_vector = to_bool(full, entry);
    else if (full == "scenario.name") cfg.scenario_name = entry.value;
    else
      throw UnknownKey("config line " + std::to_string(entry.line) + ": unknown key '" + full +
                       "'");
  }

  for (const auto& [idx, r] : water_regions) cfg.water_regions.push_back(r);
  for (const auto& [idx, r] : debris_regions) cfg.debris_regions.push_back(r);
  for (const auto& [idx, f] : features) cfg.topography.features.push_back(f);

  cfg.validate();
  return cfg;
}

SimConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

} // namespace

std::string serialize_config(const SimConfig& cfg) {
  std::ostringstream out;
  out << "[grid]\n";
  out << "nx = " << cfg.nx << "\nny = " << cfg.ny << "\n";
  out << "x0 = " << num(cfg.x0) << "\ny0 = " << num(cfg.y0) << "\n";
  out << "x1 = " << num(cfg.x1) << "\ny1 = " << num(cfg.y1) << "\n\n";

  out << "[time]\n";
  out << "t_end = " << num(cfg.t_end) << "\ncfl = " << num(cfg.cfl) << "\n";
  out << "dt_max = " << num(cfg.dt_max) << "\nframe_every = " << cfg.frame_every << "\n\n";

  out << "[physics]\ngravity = " << num(cfg.gravity) << "\n\n";
  out << "[limiter]\nbeta = " << num(cfg.limiter_beta) << "\n\n";

  out << "[boundary]\n";
  out << "left = " << boundary_kind_name(cfg.boundaries.left) << "\n";
  out << "right = " << boundary_kind_name(cfg.boundaries.right) << "\n";
  out << "bottom = " << boundary_kind_name(cfg.boundaries.bottom) << "\n";
  out << "top = " << boundary_kind_name(cfg.boundaries.top) << "\n\n";

  out << "[wetdry]\n";
  out << "h_ref = " << num(cfg.h_ref) << "\nh_wet_rel = " << num(cfg.h_wet_rel) << "\n";
  out << "eps_blend = " << num(cfg.eps_blend) << "\n";
  out << "eps_kurganov = " << (cfg.eps_kurganov ? "true" : "false") << "\n";
  out << "mu_relax = " << num(cfg.mu_relax) << "\n";
  out << "sigma_floor_rel = " << num(cfg.sigma_floor_rel) << "\n\n";

  out << "[debris]\n";
  out << "enabled = " << (cfg.debris_enabled ? "true" : "false") << "\n";
  out << "lambda = " << num(cfg.debris.lambda) << "\n";
  out << "tau_drag = " << num(cfg.debris.tau_drag) << "\n";
  out << "tau_friction = " << num(cfg.debris.tau_friction) << "\n";
  out << "plunge_depth = " << num(cfg.debris.plunge_depth) << "\n";
  out << "friction_exponent = " << num(cfg.debris.friction_exponent) << "\n";
  out << "rho_max = " << num(cfg.debris.rho_max) << "\n";
  out << "piece_length = " << num(cfg.debris.piece_length) << "\n\n";

  out << "[coupling]\n";
  out << "kind = " << (cfg.coupling_kind == CouplingKind::two_way ? "two_way" : "one_way") << "\n";
  out << "mu_debris = " << num(cfg.mu_debris) << "\n\n";

  out << "[water]\nlevel = " << num(cfg.water_level) << "\n\n";
  for (std::size_t i = 0; i < cfg.water_regions.size(); ++i) {
    const BoxRegion& r = cfg.water_regions[i];
    out << "[water.region." << i + 1 << "]\n";
    out << "box = " << num(r.x0) << " " << num(r.y0) << " " << num(r.x1) << " " << num(r.y1)
        << "\n";
    out << "add_elevation = " << num(r.value) << "\n\n";
  }
  for (std::size_t i = 0; i < cfg.debris_regions.size(); ++i) {
    const BoxRegion& r = cfg.debris_regions[i];
    out << "[debris.region." << i + 1 << "]\n";
    out << "box = " << num(r.x0) << " " << num(r.y0) << " " << num(r.x1) << " " << num(r.y1)
        << "\n";
    out << "density = " << num(r.value) << "\n\n";
  }

  out << "[topography]\n";
  out << "kind = " << (cfg.topography.kind == TopoKind::file ? "file" : "analytic") << "\n";
  if (!cfg.topography.file.empty()) out << "file = " << cfg.topography.file << "\n";
  out << "\n";
  for (std::size_t i = 0; i < cfg.topography.features.size(); ++i) {
    const TopoFeature& f = cfg.topography.features[i];
    out << "[topography.feature." << i + 1 << "]\n";
    if (f.kind == FeatureKind::ramp) {
      out << "kind = ramp\n";
      out << "a = " << num(f.a) << "\nbx = " << num(f.bx) << "\nby = " << num(f.by) << "\n\n";
    } else {
      out << "kind = gaussian\n";
      out << "amplitude = " << num(f.amplitude) << "\ncx = " << num(f.cx) << "\ncy = " << num(f.cy)
          << "\nwidth = " << num(f.width) << "\n\n";
    }
  }

  out << "[particles]\n";
  out << "count = " << cfg.particle_count << "\nseed = " << cfg.particle_seed << "\n";
  out << "integrator = "
      << (cfg.particle_integrator == ParticleIntegrator::euler ? "euler" : "heun") << "\n\n";

  out << "[output]\n";
  out << "directory = " << cfg.output_directory << "\n";
  out << "format = "
      << (cfg.output_format == OutputFormat::csv
              ? "csv"
              : cfg.output_format == OutputFormat::vtk ? "vtk" : "both")
      << "\n";
  out << "write_damage_vector = " << (cfg.write_damage_vector ? "true" : "false") << "\n\n";

  out << "[scenario]\nname = " << cfg.scenario_name << "\n";
  return out.str();
}

} // namespace floodsim::io
