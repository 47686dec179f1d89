#pragma once

#include <vector>

#include "rpstl/world.hpp"

namespace rpstl {

/// Piecewise-linear progress of one robot: breakpoints at strictly
/// increasing times, non-decreasing values, starting at (0, 0). The value is
/// held constant after the last breakpoint.
struct RobotProfile {
    std::vector<double> times;
    std::vector<double> values;

    double at(double t) const;
    void validate() const;
};

/// Joint temporal profile plus the path selection it runs on.
struct JointProfile {
    std::vector<RobotProfile> robots;
    std::vector<int> selection;  // chosen path index per robot

    void validate() const;
};

/// Time-stamped joint progress sequence: times t_0..t_K and progress targets
/// progress[k][i] for robot i at stamp k.
struct TsjpSequence {
    std::vector<double> times;
    std::vector<std::vector<double>> progress;

    int segments() const { return static_cast<int>(times.size()) - 1; }
    int robot_count() const { return progress.empty() ? 0 : static_cast<int>(progress[0].size()); }
    void validate() const;

    /// Exact piecewise-linear interpolation through the stamps.
    JointProfile interpolate(const std::vector<int>& selection) const;
};

}  // namespace rpstl
