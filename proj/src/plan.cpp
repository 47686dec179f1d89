#include "rpstl/plan.hpp"

#include <cmath>
#include <queue>
#include <set>

namespace rpstl {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

double octile(Cell a, Cell b) {
    double dx = std::abs(a.x - b.x);
    double dy = std::abs(a.y - b.y);
    return std::max(dx, dy) + (kSqrt2 - 1.0) * std::min(dx, dy);
}

}  // namespace

InflatedGrid::InflatedGrid(const Workspace& ws, double radius) : ws_(ws) {
    if (radius <= 0.0) throw Error("inflated grid: radius must be positive");
    const int w = ws.width(), h = ws.height();
    blocked_.assign(static_cast<size_t>(w) * h, 0);
    // Occupied squares within `radius` of a cell center block that cell.
    const int reach = static_cast<int>(std::ceil(radius / ws.cell_size())) + 1;
    for (int cy = 0; cy < h; ++cy) {
        for (int cx = 0; cx < w; ++cx) {
            if (!ws.occupied(cx, cy)) continue;
            Rect sq{cx * ws.cell_size(), (cx + 1) * ws.cell_size(),
                    cy * ws.cell_size(), (cy + 1) * ws.cell_size()};
            for (int ny = std::max(0, cy - reach); ny < std::min(h, cy + reach + 1); ++ny) {
                for (int nx = std::max(0, cx - reach); nx < std::min(w, cx + reach + 1); ++nx) {
                    if (blocked_[static_cast<size_t>(ny) * w + nx]) continue;
                    if (sq.distance_to(ws.cell_center(nx, ny)) < radius)
                        blocked_[static_cast<size_t>(ny) * w + nx] = 1;
                }
            }
        }
    }
}

bool InflatedGrid::free(int cx, int cy) const {
    return ws_.in_bounds(cx, cy) && !blocked_[static_cast<size_t>(cy) * ws_.width() + cx];
}

std::vector<Cell> grid_search(const InflatedGrid& grid, Cell start, Cell goal,
                              double heuristic_weight,
                              const std::vector<double>* cost_multiplier) {
    if (heuristic_weight < 1.0) throw Error("grid_search: heuristic_weight must be >= 1");
    const Workspace& ws = grid.workspace();
    const int w = ws.width(), h = ws.height();
    auto idx = [w](Cell c) { return static_cast<size_t>(c.y) * w + c.x; };
    if (!grid.free(start.x, start.y)) throw NoPathError("start cell blocked after inflation");
    if (!grid.free(goal.x, goal.y)) throw NoPathError("goal cell blocked after inflation");
    if (start == goal) throw DegenerateGoalError("start equals goal");

    auto mult = [&](Cell c) { return cost_multiplier ? (*cost_multiplier)[idx(c)] : 1.0; };

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> gcost(static_cast<size_t>(w) * h, inf);
    std::vector<int> parent(static_cast<size_t>(w) * h, -1);
    // (f, tie-break sequence, cell index)
    using Entry = std::tuple<double, long, size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
    long seq = 0;
    gcost[idx(start)] = 0.0;
    open.emplace(heuristic_weight * octile(start, goal), seq++, idx(start));

    static const int dx[8] = {1, -1, 0, 0, 1, 1, -1, -1};
    static const int dy[8] = {0, 0, 1, -1, 1, -1, 1, -1};

    while (!open.empty()) {
        auto [f, s, ui] = open.top();
        open.pop();
        Cell u{static_cast<int>(ui % w), static_cast<int>(ui / w)};
        double fu = gcost[ui] + heuristic_weight * octile(u, goal);
        if (f > fu + 1e-12) continue;  // stale entry
        if (u == goal) break;
        for (int k = 0; k < 8; ++k) {
            Cell v{u.x + dx[k], u.y + dy[k]};
            if (!grid.free(v.x, v.y)) continue;
            bool diagonal = dx[k] != 0 && dy[k] != 0;
            if (diagonal && (!grid.free(u.x + dx[k], u.y) || !grid.free(u.x, u.y + dy[k])))
                continue;  // no corner cutting
            double base = diagonal ? kSqrt2 : 1.0;
            double step = base * 0.5 * (mult(u) + mult(v));
            double cand = gcost[ui] + step;
            if (cand + 1e-12 < gcost[idx(v)]) {
                gcost[idx(v)] = cand;
                parent[idx(v)] = static_cast<int>(ui);
                open.emplace(cand + heuristic_weight * octile(v, goal), seq++, idx(v));
            }
        }
    }

    if (gcost[idx(goal)] == inf) throw NoPathError("goal unreachable");
    std::vector<Cell> cells;
    for (int at = static_cast<int>(idx(goal)); at != -1; at = parent[at])
        cells.push_back(Cell{at % w, at / w});
    std::reverse(cells.begin(), cells.end());
    return cells;
}

ReferencePath cells_to_path(const Workspace& ws, const std::vector<Cell>& cells,
                            const Vec2& start_point, const Vec2& goal_point) {
    std::vector<Vec2> pts;
    pts.push_back(start_point);
    for (const Cell& c : cells) {
        Vec2 p = ws.cell_center(c.x, c.y);
        if (distance(p, pts.back()) > 1e-12) pts.push_back(p);
    }
    if (distance(goal_point, pts.back()) > 1e-12) pts.push_back(goal_point);
    if (pts.size() < 2) throw DegenerateGoalError("degenerate path: zero total length");
    return ReferencePath(pts);
}

ReferencePath plan_path(const Workspace& ws, double footprint_radius, Cell start, Cell goal,
                        double heuristic_weight) {
    InflatedGrid grid(ws, footprint_radius);
    auto cells = grid_search(grid, start, goal, heuristic_weight);
    return cells_to_path(ws, cells, ws.cell_center(start.x, start.y),
                         ws.cell_center(goal.x, goal.y));
}

std::vector<ReferencePath> plan_alternatives(const Workspace& ws, double footprint_radius,
                                             Cell start, Cell goal, int count, double penalty) {
    if (count < 1) throw Error("plan_alternatives: count must be >= 1");
    if (penalty <= 0.0) throw Error("plan_alternatives: penalty must be positive");
    InflatedGrid grid(ws, footprint_radius);
    std::vector<double> mult(static_cast<size_t>(ws.width()) * ws.height(), 1.0);
    std::set<std::vector<std::pair<int, int>>> seen;
    std::vector<ReferencePath> out;
    for (int i = 0; i < count; ++i) {
        std::vector<Cell> cells;
        try {
            cells = grid_search(grid, start, goal, 1.0, &mult);
        } catch (const NoPathError&) {
            if (out.empty()) throw;
            break;
        }
        std::vector<std::pair<int, int>> key;
        key.reserve(cells.size());
        for (const Cell& c : cells) key.emplace_back(c.x, c.y);
        if (seen.insert(key).second)
            out.push_back(cells_to_path(ws, cells, ws.cell_center(start.x, start.y),
                                        ws.cell_center(goal.x, goal.y)));
        for (const Cell& c : cells)
            mult[static_cast<size_t>(c.y) * ws.width() + c.x] *= (1.0 + penalty);
    }
    return out;
}

}  // namespace rpstl
