#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wirs/alias.hpp"
#include "wirs/dataset.hpp"
#include "wirs/geom3d.hpp"

namespace wirs {

enum class CellSide : std::uint8_t { Inside, Outside, Straddling };

// Balanced kd partition (median splits cycling x, y, z) of a point subset
// into ~r cells with per-cell bounding boxes, weight totals, and alias tables.
class KdPartition {
 public:
  struct Cell {
    std::vector<std::uint32_t> ids;  // dataset point ids
    Vec3 lo, hi;                     // tight axis-aligned bounding box
    double total = 0.0;
    AliasTable alias;  // over member weights
  };

  // `points` carry dataset ids; splits stop once a cell holds at most
  // max(1, ceil(2*|points|/r)) members.
  static KdPartition build(std::span<const WeightedPoint> points, std::size_t r);

  std::size_t cell_count() const { return cells_.size(); }
  const std::vector<Cell>& cells() const { return cells_; }

  // Conservative box test: boundary-touching cells count as straddling.
  static CellSide classify(const Cell& cell, const HalfspaceQuery& h);

  // Number of cells the boundary plane of h crosses.
  std::size_t straddling_count(const HalfspaceQuery& h) const;

 private:
  std::vector<Cell> cells_;
};

}  // namespace wirs
