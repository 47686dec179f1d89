#pragma once

#include <functional>

#include "rpstl/profile.hpp"
#include "rpstl/world.hpp"

namespace rpstl {

struct ControllerState {
    int robot_id = 0;
    double progress = 0.0;
    int segment = 0;
    double rate = 0.0;  // last applied rate
};

/// Disturbance factor in [0, 1] for (robot, time): 1 = nominal, 0 = stalled.
using Disturbance = std::function<double(int robot, double t)>;

/// Stall windows as emitted by the CLI --stall flag.
struct StallWindow {
    int robot = 0;
    double from = 0.0;
    double duration = 0.0;
};

Disturbance stalls_to_disturbance(const std::vector<StallWindow>& stalls);

/// One control step: proportional rate toward (t_next, target), clipped to
/// [0, v_max], scaled by the disturbance factor. Never exceeds
/// target + eps/2.
double step_controller(const ControllerState& state, double t_next, double target, double now,
                       double dt, double v_max, double disturbance_factor, double eps);

struct AnomalyEvent {
    int robot = 0;
    int stamp = 0;
    double deviation = 0.0;
};

struct ExecutionTrace {
    double dt = 0.0;
    std::vector<double> times;
    std::vector<double> stamp_times;            // echo of the tracked t_k
    std::vector<std::vector<double>> progress;  // [tick][robot]
    std::vector<std::vector<Vec2>> position;    // [tick][robot]
    std::vector<std::vector<int>> segment;      // [tick][robot]
    // deviation[k][i] = |sigma_i(t_k) - target_{i,k}|, recorded at each stamp
    std::vector<std::vector<double>> stamp_deviation;
    std::vector<AnomalyEvent> anomalies;
    bool halted = false;  // true when a deviation above eps stopped tracking

    JointProfile to_profile(const std::vector<int>& selection) const;
};

/// Track the TSJP stamps with per-robot local controllers, checking the
/// deviation at every stamp. A deviation above eps emits an anomaly and
/// halts tracking (analysis continues on the prefix).
ExecutionTrace execute(const TsjpSequence& tsjp, const std::vector<int>& selection,
                       const std::vector<Robot>& robots, double dt, double eps,
                       const Disturbance& disturbance = {});

}  // namespace rpstl
