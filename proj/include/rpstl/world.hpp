#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rpstl/geometry.hpp"

namespace rpstl {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Planar occupancy-grid workspace with named rectangular regions.
/// Cell (cx, cy) covers [cx*cell_size, (cx+1)*cell_size) x [cy*cell_size, ...).
/// Row 0 of a text map is the cy = 0 row.
class Workspace {
  public:
    Workspace(int width, int height, double cell_size);

    static Workspace from_text(const std::vector<std::string>& rows, double cell_size);

    int width() const { return width_; }
    int height() const { return height_; }
    double cell_size() const { return cell_size_; }

    bool in_bounds(int cx, int cy) const {
        return cx >= 0 && cx < width_ && cy >= 0 && cy < height_;
    }
    bool occupied(int cx, int cy) const { return occupancy_[index(cx, cy)]; }
    void set_occupied(int cx, int cy, bool value) { occupancy_[index(cx, cy)] = value; }

    Vec2 cell_center(int cx, int cy) const {
        return {(cx + 0.5) * cell_size_, (cy + 0.5) * cell_size_};
    }
    std::pair<int, int> cell_of(const Vec2& p) const;

    double total_width() const { return width_ * cell_size_; }
    double total_height() const { return height_ * cell_size_; }

    void add_region(const std::string& name, const Rect& r);
    const Rect& region(const std::string& name) const;
    const std::map<std::string, Rect>& regions() const { return regions_; }

    /// Distance from p to the nearest occupied cell (as a solid square);
    /// +inf when the grid has no obstacles.
    double obstacle_distance(const Vec2& p) const;

  private:
    size_t index(int cx, int cy) const {
        if (!in_bounds(cx, cy)) throw Error("workspace: cell out of bounds");
        return static_cast<size_t>(cy) * width_ + cx;
    }

    int width_;
    int height_;
    double cell_size_;
    std::vector<char> occupancy_;
    std::map<std::string, Rect> regions_;
};

/// Arc-length-parameterized polyline. Progress runs from 0 to g() in meters.
class ReferencePath {
  public:
    explicit ReferencePath(std::vector<Vec2> waypoints);

    const std::vector<Vec2>& waypoints() const { return waypoints_; }
    const std::vector<double>& cumulative_progress() const { return cumulative_; }
    double g() const { return cumulative_.back(); }

    /// Point at arc length `progress` along the polyline.
    Vec2 configuration_at(double progress) const;

  private:
    std::vector<Vec2> waypoints_;
    std::vector<double> cumulative_;
};

struct Robot {
    int id = 0;  // zero-based index
    Vec2 start;
    double footprint_radius = 0.0;
    double v_max = 0.0;
    std::vector<ReferencePath> paths;

    void validate() const;
};

/// One-hot path choice for a robot.
struct SelectionVector {
    int robot_id = 0;
    int chosen = 0;

    std::vector<int> one_hot(int path_count) const;
};

/// True iff open discs of radii ra, rb centered at a, b intersect.
/// Boundary contact (distance == ra + rb) counts as non-overlap.
bool footprints_overlap(const Vec2& a, double ra, const Vec2& b, double rb);

/// Maximal progress intervals on `path` where a disc of `radius` intersects
/// `region`, sampled at `resolution` and endpoint-refined by bisection to
/// resolution/100. Intervals are disjoint, sorted, within [0, g].
std::vector<std::pair<double, double>> region_interval(const ReferencePath& path,
                                                       const Rect& region, double radius,
                                                       double resolution);

}  // namespace rpstl
