#pragma once

#include <cstdint>

#include "rpstl/milp.hpp"
#include "rpstl/simplex.hpp"

namespace rpstl {

enum class SolveStatus { Optimal, Infeasible, TimeLimit, Unbounded };

struct SolveStats {
    long nodes = 0;
    long lp_pivots = 0;
    double wall_seconds = 0.0;
};

struct Solution {
    SolveStatus status = SolveStatus::Infeasible;
    std::vector<double> x;  // structural assignment (empty unless an incumbent exists)
    double objective = 0.0;
    SolveStats stats;
};

struct SolveOptions {
    double time_limit = 300.0;  // seconds
    int workers = 1;
    bool dive = true;  // LP-guided rounding dive for an early incumbent
};

/// Best-first branch and bound over LP relaxations, branching on the most
/// fractional binary. Optimal solutions satisfy every row within 1e-6 with
/// binaries integral to 1e-6.
Solution solve(const MilpModel& model, const SolveOptions& opts = {});

}  // namespace rpstl
