#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rpstl/formula.hpp"
#include "rpstl/profile.hpp"

namespace rpstl {

/// One maximal interval of time, with explicit endpoint openness.
/// hi may be +infinity (then hi_closed is false).
struct TimeInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool lo_closed = true;
    bool hi_closed = true;
};

/// Normalized, sorted, disjoint, non-mergeable set of time intervals over
/// [0, +inf).
class IntervalSet {
  public:
    IntervalSet() = default;
    static IntervalSet empty() { return {}; }
    static IntervalSet all();
    static IntervalSet suffix(double from);         // [from, inf)
    static IntervalSet single(const TimeInterval& iv);

    bool contains(double t) const;
    bool is_empty() const { return parts_.empty(); }
    const std::vector<TimeInterval>& parts() const { return parts_; }
    std::vector<double> boundaries() const;

    static IntervalSet normalized(std::vector<TimeInterval> parts);
    IntervalSet unite(const IntervalSet& o) const;
    IntervalSet intersect(const IntervalSet& o) const;
    IntervalSet complement() const;  // within [0, inf)

    /// {t : [t+a, t+b] subset of this}
    IntervalSet erode(double a, double b) const;
    /// {t : [t+a, t+b] meets this}
    IntervalSet dilate(double a, double b) const;

  private:
    std::vector<TimeInterval> parts_;
};

/// Exact truth set of `formula` over the profile, continuous time.
IntervalSet truth_set(const JointProfile& profile, const FormulaPtr& formula);

/// Exact satisfaction at time t.
bool satisfies(const JointProfile& profile, const FormulaPtr& formula, double t);

struct Violation {
    std::string node_path;
    double time = 0.0;
};

/// When the formula fails at time t, a best-effort pointer to the first
/// violating node and instant.
std::optional<Violation> explain_violation(const JointProfile& profile, const FormulaPtr& formula,
                                           double t);

struct BallCheckOptions {
    int corner_budget = 64;
    int random_profiles = 100;
    std::uint64_t seed = 20240001;
    double knot_prob = 0.5;
};

struct BallCheckResult {
    bool ok = true;
    int profiles_checked = 0;
    int first_failure = -1;  // index of the failing sampled profile
};

/// Adversarial sampling check over the set of profiles passing within eps of
/// every stamp: corner profiles (signs of eps per robot and stamp, clamped to
/// monotone feasibility) up to the corner budget, plus random monotone
/// profiles threaded through the balls. A sound universal check over the
/// whole profile set is not computable by sampling; this is the acceptance
/// approximation.
BallCheckResult satisfies_ball(const TsjpSequence& tsjp, const std::vector<int>& selection,
                               const FormulaPtr& formula, double eps,
                               const BallCheckOptions& opts = {});

}  // namespace rpstl
