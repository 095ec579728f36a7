#pragma once

#include <string>

#include "floodsim/errors.hpp"

namespace floodsim {

enum class BoundaryKind { wall, outflow, periodic };

const char* boundary_kind_name(BoundaryKind k);
BoundaryKind boundary_kind_from_name(const std::string& name);

// One ghost layer per domain edge.
struct BoundarySet {
  BoundaryKind left = BoundaryKind::outflow;
  BoundaryKind right = BoundaryKind::outflow;
  BoundaryKind bottom = BoundaryKind::wall;
  BoundaryKind top = BoundaryKind::wall;

  // Periodic edges must come in opposing pairs.
  void validate() const {
    const bool px = (left == BoundaryKind::periodic) || (right == BoundaryKind::periodic);
    const bool py = (bottom == BoundaryKind::periodic) || (top == BoundaryKind::periodic);
    if (px && left != right)
      throw ValidationError("boundary: periodic left/right edges must be paired");
    if (py && bottom != top)
      throw ValidationError("boundary: periodic bottom/top edges must be paired");
  }

  bool operator==(const BoundarySet&) const = default;
};

} // namespace floodsim
