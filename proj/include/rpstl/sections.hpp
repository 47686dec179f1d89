#pragma once

#include <vector>

#include "rpstl/world.hpp"

namespace rpstl {

/// A maximal pair of progress intervals on two paths within which the robot
/// footprints can overlap, plus the relaxed exit bounds of each side.
struct CriticalSection {
    int robot_a = -1;
    int path_a = -1;
    int robot_b = -1;
    int path_b = -1;
    double lower_a = 0.0, upper_a = 0.0;   // [l, u]
    double lower_b = 0.0, upper_b = 0.0;   // [l', u']
    double relaxed_a = 0.0, relaxed_b = 0.0;  // delta, delta'
};

/// Critical sections between two paths: connected components of the sampled
/// collision set, bounding-box projected, endpoints bisection-refined to
/// resolution/100. Relaxed bounds are filled in. Empty when the paths never
/// interfere.
std::vector<CriticalSection> find_critical_sections(const ReferencePath& path_a, double radius_a,
                                                    const ReferencePath& path_b, double radius_b,
                                                    double resolution);

/// Relaxed exit bounds (delta, delta') of a section: the smallest progress on
/// one path past which no later point overlaps the other path's entry point.
std::pair<double, double> relax_bounds(const CriticalSection& section,
                                       const ReferencePath& path_a, double radius_a,
                                       const ReferencePath& path_b, double radius_b,
                                       double resolution);

}  // namespace rpstl
