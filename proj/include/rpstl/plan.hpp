#pragma once

#include <optional>
#include <vector>

#include "rpstl/world.hpp"

namespace rpstl {

struct NoPathError : Error {
    using Error::Error;
};
struct DegenerateGoalError : Error {
    using Error::Error;
};

struct Cell {
    int x = 0;
    int y = 0;
    bool operator==(const Cell& o) const { return x == o.x && y == o.y; }
};

/// Free/blocked view of the grid after inflating obstacles by a disc radius:
/// a cell is blocked when an occupied cell's square lies strictly closer than
/// `radius` to the cell center.
class InflatedGrid {
  public:
    InflatedGrid(const Workspace& ws, double radius);
    bool free(int cx, int cy) const;
    const Workspace& workspace() const { return ws_; }

  private:
    const Workspace& ws_;
    std::vector<char> blocked_;
};

/// Weighted A* on the 8-connected inflated grid. Diagonal moves are barred
/// when either adjacent orthogonal cell is blocked. `cost_multiplier`, when
/// given, scales the traversal cost of individual cells (>= 1 each).
/// Returns the cell sequence from start to goal.
std::vector<Cell> grid_search(const InflatedGrid& grid, Cell start, Cell goal,
                              double heuristic_weight,
                              const std::vector<double>* cost_multiplier = nullptr);

/// Polyline through the exact start/goal points via the cell centers.
ReferencePath cells_to_path(const Workspace& ws, const std::vector<Cell>& cells,
                            const Vec2& start_point, const Vec2& goal_point);

ReferencePath plan_path(const Workspace& ws, double footprint_radius, Cell start, Cell goal,
                        double heuristic_weight);

/// Up to `count` distinct paths; after each one, the traversal cost of its
/// cells is multiplied by (1 + penalty) before replanning. Duplicate cell
/// sequences are dropped.
std::vector<ReferencePath> plan_alternatives(const Workspace& ws, double footprint_radius,
                                             Cell start, Cell goal, int count, double penalty);

}  // namespace rpstl
