#include "rpstl/simulate.hpp"

#include <cmath>

namespace rpstl {

Disturbance stalls_to_disturbance(const std::vector<StallWindow>& stalls) {
    return [stalls](int robot, double t) {
        for (const StallWindow& s : stalls)
            if (s.robot == robot && t >= s.from && t < s.from + s.duration) return 0.0;
        return 1.0;
    };
}

double step_controller(const ControllerState& state, double t_next, double target, double now,
                       double dt, double v_max, double disturbance_factor, double eps) {
    if (dt <= 0.0) throw Error("step_controller: dt must be positive");
    if (now >= t_next) throw Error("step_controller: step starts at or past the stamp");
    double remaining = target - state.progress;
    double rate = remaining <= 0.0 ? 0.0 : remaining / (t_next - now);
    rate = std::clamp(rate, 0.0, v_max) * std::clamp(disturbance_factor, 0.0, 1.0);
    double next = state.progress + rate * dt;
    return std::min(next, target + eps / 2.0);
}

JointProfile ExecutionTrace::to_profile(const std::vector<int>& selection) const {
    JointProfile prof;
    prof.selection = selection;
    const size_t n = progress.empty() ? 0 : progress.front().size();
    for (size_t i = 0; i < n; ++i) {
        RobotProfile rp;
        for (size_t k = 0; k < times.size(); ++k) {
            if (!rp.times.empty() && times[k] <= rp.times.back() + 1e-12) continue;
            rp.times.push_back(times[k]);
            rp.values.push_back(progress[k][i]);
        }
        prof.robots.push_back(std::move(rp));
    }
    return prof;
}

ExecutionTrace execute(const TsjpSequence& tsjp, const std::vector<int>& selection,
                       const std::vector<Robot>& robots, double dt, double eps,
                       const Disturbance& disturbance) {
    tsjp.validate();
    const int K = tsjp.segments();
    const int N = tsjp.robot_count();
    if (static_cast<int>(robots.size()) != N || static_cast<int>(selection.size()) != N)
        throw Error("execute: robot/selection count mismatch");
    double vmax_all = 0.0;
    for (const Robot& r : robots) vmax_all = std::max(vmax_all, r.v_max);
    if (dt > eps / (2.0 * vmax_all))
        throw Error("execute: dt must be at most eps / (2 * max v_max)");

    ExecutionTrace tr;
    tr.dt = dt;
    std::vector<ControllerState> ctl(N);
    for (int i = 0; i < N; ++i) ctl[i] = {i, 0.0, 0, 0.0};

    auto record = [&](double t) {
        tr.times.push_back(t);
        std::vector<double> prog(N);
        std::vector<Vec2> pos(N);
        std::vector<int> seg(N);
        for (int i = 0; i < N; ++i) {
            prog[i] = ctl[i].progress;
            const ReferencePath& path = robots[i].paths.at(selection[i]);
            pos[i] = path.configuration_at(std::min(ctl[i].progress, path.g()));
            seg[i] = ctl[i].segment;
        }
        tr.progress.push_back(std::move(prog));
        tr.position.push_back(std::move(pos));
        tr.segment.push_back(std::move(seg));
    };

    tr.stamp_deviation.assign(K + 1, std::vector<double>(N, 0.0));
    tr.stamp_times = tsjp.times;
    record(0.0);

    for (int k = 0; k < K && !tr.halted; ++k) {
        double t0 = std::max(tsjp.times[k], tr.times.back());
        double t1 = tsjp.times[k + 1];
        for (int i = 0; i < N; ++i) ctl[i].segment = k;
        double now = t0;
        while (t1 - now > 1e-12) {
            double step = std::min(dt, t1 - now);
            for (int i = 0; i < N; ++i) {
                double factor = disturbance ? disturbance(i, now) : 1.0;
                ctl[i].progress = step_controller(ctl[i], t1, tsjp.progress[k + 1][i], now, step,
                                                  robots[i].v_max, factor, eps);
            }
            now += step;
            record(now);
        }
        // stamp check: tracking deviation against the target joint progress
        for (int i = 0; i < N; ++i) {
            double dev = std::abs(ctl[i].progress - tsjp.progress[k + 1][i]);
            tr.stamp_deviation[k + 1][i] = dev;
            if (dev > eps) {
                tr.anomalies.push_back({i, k + 1, dev});
                tr.halted = true;
            }
        }
    }
    return tr;
}

}  // namespace rpstl
