#include "rpstl/world.hpp"

#include <cmath>
#include <limits>

namespace rpstl {

Workspace::Workspace(int width, int height, double cell_size)
    : width_(width), height_(height), cell_size_(cell_size) {
    if (width < 1 || height < 1) throw Error("workspace: grid must be at least 1x1");
    if (cell_size <= 0.0) throw Error("workspace: cell_size must be positive");
    occupancy_.assign(static_cast<size_t>(width) * height, 0);
}

Workspace Workspace::from_text(const std::vector<std::string>& rows, double cell_size) {
    if (rows.empty() || rows.front().empty()) throw Error("workspace: empty map");
    const int h = static_cast<int>(rows.size());
    const int w = static_cast<int>(rows.front().size());
    Workspace ws(w, h, cell_size);
    for (int cy = 0; cy < h; ++cy) {
        if (static_cast<int>(rows[cy].size()) != w)
            throw Error("workspace: ragged map row " + std::to_string(cy));
        for (int cx = 0; cx < w; ++cx) {
            char c = rows[cy][cx];
            if (c == '#')
                ws.set_occupied(cx, cy, true);
            else if (c != '.')
                throw Error(std::string("workspace: bad map character '") + c + "'");
        }
    }
    return ws;
}

std::pair<int, int> Workspace::cell_of(const Vec2& p) const {
    int cx = static_cast<int>(std::floor(p.x / cell_size_));
    int cy = static_cast<int>(std::floor(p.y / cell_size_));
    if (!in_bounds(cx, cy)) throw Error("workspace: point outside grid");
    return {cx, cy};
}

void Workspace::add_region(const std::string& name, const Rect& r) {
    if (r.x_min > r.x_max || r.y_min > r.y_max) throw Error("region " + name + ": inverted rectangle");
    if (r.x_min < 0 || r.y_min < 0 || r.x_max > total_width() || r.y_max > total_height())
        throw Error("region " + name + ": outside workspace bounds");
    regions_[name] = r;
}

const Rect& Workspace::region(const std::string& name) const {
    auto it = regions_.find(name);
    if (it == regions_.end()) throw Error("unknown region: " + name);
    return it->second;
}

double Workspace::obstacle_distance(const Vec2& p) const {
    double best = std::numeric_limits<double>::infinity();
    for (int cy = 0; cy < height_; ++cy) {
        for (int cx = 0; cx < width_; ++cx) {
            if (!occupied(cx, cy)) continue;
            Rect cell{cx * cell_size_, (cx + 1) * cell_size_, cy * cell_size_, (cy + 1) * cell_size_};
            best = std::min(best, cell.distance_to(p));
            if (best == 0.0) return 0.0;
        }
    }
    return best;
}

ReferencePath::ReferencePath(std::vector<Vec2> waypoints) : waypoints_(std::move(waypoints)) {
    if (waypoints_.size() < 2) throw Error("reference path: need at least two waypoints");
    cumulative_.resize(waypoints_.size());
    cumulative_[0] = 0.0;
    for (size_t i = 1; i < waypoints_.size(); ++i) {
        double step = distance(waypoints_[i - 1], waypoints_[i]);
        if (step <= 0.0) throw Error("reference path: duplicate consecutive waypoint");
        cumulative_[i] = cumulative_[i - 1] + step;
    }
    if (cumulative_.back() <= 0.0) throw Error("reference path: zero length");
}

Vec2 ReferencePath::configuration_at(double progress) const {
    const double g = cumulative_.back();
    const double tol = 1e-9 * std::max(1.0, g);
    if (progress < -tol || progress > g + tol)
        throw std::domain_error("configuration_at: progress out of [0, g]");
    progress = std::clamp(progress, 0.0, g);
    // first segment whose end is at or past `progress`
    auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), progress);
    size_t hi = static_cast<size_t>(it - cumulative_.begin());
    if (hi == 0) return waypoints_.front();
    size_t lo = hi - 1;
    double span = cumulative_[hi] - cumulative_[lo];
    double t = (progress - cumulative_[lo]) / span;
    return waypoints_[lo] + (waypoints_[hi] - waypoints_[lo]) * t;
}

void Robot::validate() const {
    if (footprint_radius <= 0.0) throw Error("robot: footprint_radius must be positive");
    if (v_max <= 0.0) throw Error("robot: v_max must be positive");
    if (paths.empty()) throw Error("robot: needs at least one reference path");
    for (const auto& p : paths) {
        if (distance(p.configuration_at(0.0), start) > 1e-9)
            throw Error("robot: path does not start at the robot start configuration");
    }
}

std::vector<int> SelectionVector::one_hot(int path_count) const {
    if (chosen < 0 || chosen >= path_count) throw Error("selection: chosen path out of range");
    std::vector<int> v(path_count, 0);
    v[chosen] = 1;
    return v;
}

bool footprints_overlap(const Vec2& a, double ra, const Vec2& b, double rb) {
    if (ra <= 0.0 || rb <= 0.0) throw Error("footprints_overlap: radii must be positive");
    return distance(a, b) < ra + rb;
}

std::vector<std::pair<double, double>> region_interval(const ReferencePath& path,
                                                       const Rect& region, double radius,
                                                       double resolution) {
    if (resolution <= 0.0) throw Error("region_interval: resolution must be positive");
    const double g = path.g();
    const int n = std::max(1, static_cast<int>(std::ceil(g / resolution)));
    const double step = g / n;

    auto hit = [&](double s) { return region.distance_to(path.configuration_at(s)) < radius; };

    // Bisect the hit boundary between a hitting and a non-hitting progress value.
    auto refine = [&](double inside, double outside) {
        for (int i = 0; i < 40 && std::abs(inside - outside) > resolution / 100.0; ++i) {
            double mid = 0.5 * (inside + outside);
            (hit(mid) ? inside : outside) = mid;
        }
        return 0.5 * (inside + outside);
    };

    std::vector<std::pair<double, double>> out;
    bool prev = false;
    double lo = 0.0;
    for (int i = 0; i <= n; ++i) {
        double s = std::min(i * step, g);
        bool h = hit(s);
        if (h && !prev) lo = (i == 0) ? 0.0 : refine(s, (i - 1) * step);
        if (!h && prev) out.emplace_back(lo, refine((i - 1) * step, s));
        prev = h;
    }
    if (prev) out.emplace_back(lo, g);
    return out;
}

}  // namespace rpstl
