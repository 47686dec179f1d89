#pragma once

#include "rpstl/formula.hpp"
#include "rpstl/sections.hpp"

namespace rpstl {

/// Mutual-exclusion formula for one critical section: one robot stays below
/// its entry bound until the other has passed its exit bound, in either
/// order. Unselected paths make the whole formula vacuously true via the
/// +/-infinity sentinels. With `use_relaxed`, the exit bounds are the
/// section's relaxed bounds instead of the interval uppers.
FormulaPtr interference_formula(const CriticalSection& section, int paths_a, int paths_b,
                                double horizon, bool use_relaxed);

struct OccupancyInterval {
    int robot = 0;  // zero-based
    int path = 0;   // zero-based
    double lower = 0.0;
    double upper = 0.0;
};

/// At-most-`cap` occupancy of a shared region at all times in [0, horizon]:
/// the normal form of G !(at least cap+1 of the on-interval subformulas).
/// An unselected path is never counted as inside. Vacuously true when
/// cap >= number of intervals.
FormulaPtr occupancy_counting_formula(const std::vector<OccupancyInterval>& intervals,
                                      const std::vector<int>& path_counts, int cap,
                                      double horizon);

}  // namespace rpstl
