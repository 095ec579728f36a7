#include "floodsim/boundary.hpp"

namespace floodsim {

const char* boundary_kind_name(BoundaryKind k) {
  switch (k) {
    case BoundaryKind::wall: return "wall";
    case BoundaryKind::outflow: return "outflow";
    case BoundaryKind::periodic: return "periodic";
  }
  return "?";
}

BoundaryKind boundary_kind_from_name(const std::string& name) {
  if (name == "wall") return BoundaryKind::wall;
  if (name == "outflow") return BoundaryKind::outflow;
  if (name == "periodic") return BoundaryKind::periodic;
  throw ValidationError("boundary kind must be wall, outflow or periodic (got '" + name + "')");
}

} // namespace floodsim
