#include "rpstl/profile.hpp"

#include <algorithm>
#include <cmath>

namespace rpstl {

double RobotProfile::at(double t) const {
    if (times.empty()) throw Error("profile: no breakpoints");
    if (t <= times.front()) return values.front();
    if (t >= times.back()) return values.back();
    auto it = std::upper_bound(times.begin(), times.end(), t);
    size_t hi = static_cast<size_t>(it - times.begin());
    size_t lo = hi - 1;
    double span = times[hi] - times[lo];
    double w = (t - times[lo]) / span;
    return values[lo] + w * (values[hi] - values[lo]);
}

void RobotProfile::validate() const {
    if (times.size() != values.size() || times.empty())
        throw Error("profile: breakpoint arrays mismatch");
    if (times.front() != 0.0 || values.front() != 0.0)
        throw Error("profile: must start at (0, 0)");
    for (size_t i = 1; i < times.size(); ++i) {
        if (times[i] <= times[i - 1]) throw Error("profile: times must strictly increase");
        if (values[i] < values[i - 1]) throw Error("profile: progress must be non-decreasing");
    }
}

void JointProfile::validate() const {
    if (robots.size() != selection.size()) throw Error("joint profile: selection size mismatch");
    for (const auto& r : robots) r.validate();
}

void TsjpSequence::validate() const {
    if (times.size() < 2 || times.size() != progress.size())
        throw Error("tsjp: need stamps t_0..t_K with matching progress rows");
    const double tol = 1e-6;
    if (std::abs(times.front()) > tol) throw Error("tsjp: t_0 must be 0");
    const size_t n = progress.front().size();
    for (size_t k = 0; k < times.size(); ++k) {
        if (progress[k].size() != n) throw Error("tsjp: ragged progress rows");
        if (k > 0 && times[k] < times[k - 1] - tol)
            throw Error("tsjp: time stamps must be non-decreasing");
        for (size_t i = 0; i < n; ++i) {
            if (k == 0 && std::abs(progress[0][i]) > tol) throw Error("tsjp: sigma_(0) must be 0");
            if (k > 0 && progress[k][i] < progress[k - 1][i] - tol)
                throw Error("tsjp: progress must be element-wise non-decreasing");
        }
    }
}

JointProfile TsjpSequence::interpolate(const std::vector<int>& sel) const {
    validate();
    JointProfile out;
    out.selection = sel;
    const int n = robot_count();
    for (int i = 0; i < n; ++i) {
        RobotProfile rp;
        for (size_t k = 0; k < times.size(); ++k) {
            double t = std::max(times[k], rp.times.empty() ? 0.0 : rp.times.back());
            double v = std::max(std::max(progress[k][i], 0.0),
                                rp.values.empty() ? 0.0 : rp.values.back());
            if (k == 0) {
                rp.times.push_back(0.0);
                rp.values.push_back(0.0);
            } else if (t > rp.times.back() + 1e-12) {
                rp.times.push_back(t);
                rp.values.push_back(v);
            } else {
                rp.values.back() = std::max(rp.values.back(), v);
            }
        }
        out.robots.push_back(std::move(rp));
    }
    return out;
}

}  // namespace rpstl
