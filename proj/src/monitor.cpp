#include "rpstl/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace rpstl {

namespace {

constexpr double kPosInf = std::numeric_limits<double>::infinity();

bool valid_interval(const TimeInterval& iv) {
    if (std::isnan(iv.lo) || std::isnan(iv.hi)) return false;
    if (iv.lo < iv.hi) return true;
    return iv.lo == iv.hi && iv.lo_closed && iv.hi_closed && std::isfinite(iv.lo);
}

TimeInterval clipped(TimeInterval iv) {
    if (iv.lo < 0.0) {
        iv.lo = 0.0;
        iv.lo_closed = true;
    }
    if (iv.hi == kPosInf) iv.hi_closed = false;
    return iv;
}

// lower endpoint (value, openness) ordering: closed before open at same value
bool lo_before(const TimeInterval& a, const TimeInterval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.lo_closed && !b.lo_closed;
}

}  // namespace

IntervalSet IntervalSet::all() { return single({0.0, kPosInf, true, false}); }

IntervalSet IntervalSet::suffix(double from) {
    if (from < 0.0) from = 0.0;
    return single({from, kPosInf, true, false});
}

IntervalSet IntervalSet::single(const TimeInterval& iv) {
    return normalized(std::vector<TimeInterval>{iv});
}

IntervalSet IntervalSet::normalized(std::vector<TimeInterval> parts) {
    std::vector<TimeInterval> xs;
    for (TimeInterval iv : parts) {
        iv = clipped(iv);
        if (valid_interval(iv)) xs.push_back(iv);
    }
    std::sort(xs.begin(), xs.end(), lo_before);
    IntervalSet out;
    for (const TimeInterval& iv : xs) {
        if (!out.parts_.empty()) {
            TimeInterval& cur = out.parts_.back();
            bool connects = iv.lo < cur.hi || (iv.lo == cur.hi && (cur.hi_closed || iv.lo_closed));
            if (connects) {
                if (iv.hi > cur.hi || (iv.hi == cur.hi && iv.hi_closed)) {
                    cur.hi = iv.hi;
                    cur.hi_closed = iv.hi_closed;
                }
                continue;
            }
        }
        out.parts_.push_back(iv);
    }
    return out;
}

bool IntervalSet::contains(double t) const {
    for (const TimeInterval& iv : parts_) {
        if (t < iv.lo) return false;
        if (t == iv.lo) return iv.lo_closed;
        if (t < iv.hi) return true;
        if (t == iv.hi) return iv.hi_closed;
    }
    return false;
}

std::vector<double> IntervalSet::boundaries() const {
    std::vector<double> out;
    for (const TimeInterval& iv : parts_) {
        out.push_back(iv.lo);
        if (std::isfinite(iv.hi)) out.push_back(iv.hi);
    }
    return out;
}

IntervalSet IntervalSet::unite(const IntervalSet& o) const {
    std::vector<TimeInterval> xs = parts_;
    xs.insert(xs.end(), o.parts_.begin(), o.parts_.end());
    return normalized(std::move(xs));
}

IntervalSet IntervalSet::intersect(const IntervalSet& o) const {
    std::vector<TimeInterval> out;
    size_t i = 0, j = 0;
    while (i < parts_.size() && j < o.parts_.size()) {
        const TimeInterval& a = parts_[i];
        const TimeInterval& b = o.parts_[j];
        TimeInterval iv;
        if (a.lo > b.lo || (a.lo == b.lo && !a.lo_closed)) {
            iv.lo = a.lo;
            iv.lo_closed = a.lo_closed && (b.lo < a.lo || b.lo_closed);
        } else {
            iv.lo = b.lo;
            iv.lo_closed = b.lo_closed && (a.lo < b.lo || a.lo_closed);
        }
        if (a.hi < b.hi || (a.hi == b.hi && !a.hi_closed)) {
            iv.hi = a.hi;
            iv.hi_closed = a.hi_closed && (b.hi > a.hi || b.hi_closed);
        } else {
            iv.hi = b.hi;
            iv.hi_closed = b.hi_closed && (a.hi > b.hi || a.hi_closed);
        }
        if (valid_interval(iv)) out.push_back(iv);
        if (a.hi < b.hi || (a.hi == b.hi && !a.hi_closed))
            ++i;
        else
            ++j;
    }
    return normalized(std::move(out));
}

IntervalSet IntervalSet::complement() const {
    std::vector<TimeInterval> out;
    double at = 0.0;
    bool at_closed = true;
    for (const TimeInterval& iv : parts_) {
        TimeInterval gap{at, iv.lo, at_closed, !iv.lo_closed};
        if (valid_interval(gap)) out.push_back(gap);
        if (iv.hi == kPosInf) return normalized(std::move(out));
        at = iv.hi;
        at_closed = !iv.hi_closed;
    }
    out.push_back({at, kPosInf, at_closed, false});
    return normalized(std::move(out));
}

IntervalSet IntervalSet::erode(double a, double b) const {
    std::vector<TimeInterval> out;
    for (const TimeInterval& iv : parts_)
        out.push_back({iv.lo - a, iv.hi == kPosInf ? kPosInf : iv.hi - b, iv.lo_closed,
                       iv.hi_closed});
    return normalized(std::move(out));
}

IntervalSet IntervalSet::dilate(double a, double b) const {
    std::vector<TimeInterval> out;
    for (const TimeInterval& iv : parts_)
        out.push_back({iv.lo - b, iv.hi == kPosInf ? kPosInf : iv.hi - a, iv.lo_closed,
                       iv.hi_closed});
    return normalized(std::move(out));
}

namespace {

// first time the (held) piecewise-linear profile reaches value c; nullopt if
// it never does
std::optional<double> first_crossing(const RobotProfile& p, double c) {
    if (p.values.front() >= c) return p.times.front();
    for (size_t j = 1; j < p.values.size(); ++j) {
        if (p.values[j] >= c) {
            double dv = p.values[j] - p.values[j - 1];
            double t = p.times[j - 1] +
                       (c - p.values[j - 1]) / dv * (p.times[j] - p.times[j - 1]);
            return t;
        }
    }
    return std::nullopt;
}

class Evaluator {
  public:
    explicit Evaluator(const JointProfile& prof) : prof_(prof) {}

    IntervalSet eval(const FormulaPtr& f) {
        auto it = memo_.find(f.get());
        if (it != memo_.end()) return it->second;
        IntervalSet s = compute(f);
        memo_.emplace(f.get(), s);
        return s;
    }

  private:
    IntervalSet eval_pred(const Formula& f) {
        if (f.robot < 0 || f.robot >= static_cast<int>(prof_.robots.size()))
            throw Error("monitor: predicate references unknown robot " +
                        std::to_string(f.robot + 1));
        int chosen = prof_.selection.at(f.robot);
        if (chosen < 0 || chosen >= static_cast<int>(f.coeffs.size()))
            throw Error("monitor: selection of robot " + std::to_string(f.robot + 1) +
                        " is outside the predicate coefficient vector");
        double c = f.coeffs[chosen];
        IntervalSet reach;  // {t : sigma(t) >= c}, a closed suffix
        if (c == -kInf) {
            reach = IntervalSet::all();
        } else if (c == kInf) {
            reach = IntervalSet::empty();
        } else {
            auto t = first_crossing(prof_.robots[f.robot], c);
            reach = t ? IntervalSet::suffix(*t) : IntervalSet::empty();
        }
        return f.kind == NodeKind::Pred ? reach : reach.complement();
    }

    IntervalSet compute(const FormulaPtr& f) {
        switch (f->kind) {
            case NodeKind::ConstTrue:
                return IntervalSet::all();
            case NodeKind::ConstFalse:
                return IntervalSet::empty();
            case NodeKind::Pred:
            case NodeKind::NegPred:
                return eval_pred(*f);
            case NodeKind::Not:
                return eval(f->children[0]).complement();
            case NodeKind::And: {
                IntervalSet s = IntervalSet::all();
                for (const auto& c : f->children) s = s.intersect(eval(c));
                return s;
            }
            case NodeKind::Or: {
                IntervalSet s = IntervalSet::empty();
                for (const auto& c : f->children) s = s.unite(eval(c));
                return s;
            }
            case NodeKind::Count: {
                std::vector<IntervalSet> sets;
                sets.reserve(f->children.size());
                for (const auto& c : f->children) sets.push_back(eval(c));
                return count_at_least(sets, f->min_true);
            }
            case NodeKind::Always:
                return eval(f->children[0]).erode(f->t_lo, f->t_hi);
            case NodeKind::Eventually:
                return eval(f->children[0]).dilate(f->t_lo, f->t_hi);
            case NodeKind::Until: {
                IntervalSet s1 = eval(f->children[0]);
                IntervalSet s2 = eval(f->children[1]);
                // the witness and the whole [t, t'] live inside one component
                // of the left operand's truth set
                std::vector<TimeInterval> acc;
                for (const TimeInterval& comp : s1.parts()) {
                    IntervalSet inside = s2.intersect(IntervalSet::single(comp));
                    IntervalSet reach = inside.dilate(f->t_lo, f->t_hi);
                    for (const TimeInterval& iv :
                         reach.intersect(IntervalSet::single(comp)).parts())
                        acc.push_back(iv);
                }
                return IntervalSet::normalized(std::move(acc));
            }
        }
        throw Error("monitor: unknown node kind");
    }

    static IntervalSet count_at_least(const std::vector<IntervalSet>& sets, int m) {
        std::vector<double> bounds{0.0};
        for (const IntervalSet& s : sets)
            for (double b : s.boundaries()) bounds.push_back(b);
        std::sort(bounds.begin(), bounds.end());
        bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

        auto count_at = [&](double t) {
            int n = 0;
            for (const IntervalSet& s : sets) n += s.contains(t) ? 1 : 0;
            return n;
        };

        std::vector<TimeInterval> acc;
        for (size_t i = 0; i < bounds.size(); ++i) {
            if (count_at(bounds[i]) >= m) acc.push_back({bounds[i], bounds[i], true, true});
            double next = i + 1 < bounds.size() ? bounds[i + 1] : kPosInf;
            if (next > bounds[i]) {
                double mid = std::isfinite(next) ? 0.5 * (bounds[i] + next) : bounds[i] + 1.0;
                if (count_at(mid) >= m) acc.push_back({bounds[i], next, false, false});
            }
        }
        return IntervalSet::normalized(std::move(acc));
    }

    const JointProfile& prof_;
    std::map<const Formula*, IntervalSet> memo_;
};

}  // namespace

IntervalSet truth_set(const JointProfile& profile, const FormulaPtr& formula) {
    return Evaluator(profile).eval(formula);
}

bool satisfies(const JointProfile& profile, const FormulaPtr& formula, double t) {
    if (t < 0.0) throw Error("satisfies: negative time");
    return truth_set(profile, formula).contains(t);
}

namespace {

std::string node_label(const Formula& f) {
    auto win = [&] {
        return "[" + std::to_string(f.t_lo) + "," + std::to_string(f.t_hi) + "]";
    };
    switch (f.kind) {
        case NodeKind::ConstTrue:
            return std::string("true");
        case NodeKind::ConstFalse:
            return std::string("false");
        case NodeKind::Pred:
            return "prog(" + std::to_string(f.robot + 1) + ")>=";
        case NodeKind::NegPred:
            return "prog(" + std::to_string(f.robot + 1) + ")<";
        case NodeKind::Not:
            return std::string("!");
        case NodeKind::And:
            return std::string("and");
        case NodeKind::Or:
            return std::string("or");
        case NodeKind::Count:
            return "count(" + std::to_string(f.min_true) + ")";
        case NodeKind::Always:
            return "G" + win();
        case NodeKind::Eventually:
            return "F" + win();
        case NodeKind::Until:
            return "U" + win();
    }
    return std::string("?");
}

std::optional<Violation> descend(Evaluator& ev, const JointProfile& prof, const FormulaPtr& f,
                                 double t, const std::string& path);

std::optional<Violation> descend_children(Evaluator& ev, const JointProfile& prof,
                                          const FormulaPtr& f, double t,
                                          const std::string& path) {
    for (size_t i = 0; i < f->children.size(); ++i) {
        auto v = descend(ev, prof, f->children[i], t,
                         path + "/" + node_label(*f) + "[" + std::to_string(i) + "]");
        if (v) return v;
    }
    return std::nullopt;
}

std::optional<Violation> descend(Evaluator& ev, const JointProfile& prof, const FormulaPtr& f,
                                 double t, const std::string& path) {
    IntervalSet s = truth_set(prof, f);
    if (s.contains(t)) return std::nullopt;
    std::string here = path + "/" + node_label(*f);
    if (f->kind == NodeKind::And) {
        auto v = descend_children(ev, prof, f, t, path);
        if (v) return v;
    }
    if (f->kind == NodeKind::Always) {
        // first instant of the window where the child fails
        IntervalSet win = IntervalSet::single({t + f->t_lo, t + f->t_hi, true, true});
        IntervalSet bad = truth_set(prof, f->children[0]).complement().intersect(win);
        if (!bad.is_empty()) {
            double tb = bad.parts().front().lo;
            auto v = descend(ev, prof, f->children[0], tb, here);
            if (v) return v;
            return Violation{here, tb};
        }
    }
    return Violation{here, t};
}

}  // namespace

std::optional<Violation> explain_violation(const JointProfile& profile, const FormulaPtr& formula,
                                           double t) {
    Evaluator ev(profile);
    return descend(ev, profile, formula, t, "");
}

namespace {

RobotProfile compress(std::vector<double> times, std::vector<double> values) {
    RobotProfile out;
    for (size_t i = 0; i < times.size(); ++i) {
        if (!out.times.empty() && times[i] <= out.times.back() + 1e-12) {
            out.values.back() = std::max(out.values.back(), values[i]);
        } else {
            out.times.push_back(times[i]);
            out.values.push_back(std::max(values[i], out.values.empty() ? 0.0 : out.values.back()));
        }
    }
    return out;
}

}  // namespace

BallCheckResult satisfies_ball(const TsjpSequence& tsjp, const std::vector<int>& selection,
                               const FormulaPtr& formula, double eps,
                               const BallCheckOptions& opts) {
    tsjp.validate();
    const int K = tsjp.segments();
    const int N = tsjp.robot_count();
    if (static_cast<int>(selection.size()) != N)
        throw Error("satisfies_ball: selection size mismatch");

    // a sign pattern gives per robot, per stamp 1..K, the eps displacement
    auto build = [&](const std::vector<int>& signs) {
        JointProfile prof;
        prof.selection = selection;
        for (int i = 0; i < N; ++i) {
            std::vector<double> ts, vs;
            for (int k = 0; k <= K; ++k) {
                double v = tsjp.progress[k][i];
                if (k > 0) v += signs[static_cast<size_t>(i) * K + (k - 1)] * eps;
                ts.push_back(tsjp.times[k]);
                vs.push_back(std::max(0.0, k == 0 ? 0.0 : v));
            }
            prof.robots.push_back(compress(std::move(ts), std::move(vs)));
        }
        return prof;
    };

    std::vector<std::vector<int>> patterns;
    patterns.emplace_back(static_cast<size_t>(N) * K, 0);  // the exact interpolation
    const int bits = N * K;
    if (eps > 0.0 && bits > 0) {
        if (bits <= 16 && (1 << bits) <= opts.corner_budget) {
            for (int mask = 0; mask < (1 << bits); ++mask) {
                std::vector<int> signs(bits);
                for (int b = 0; b < bits; ++b) signs[b] = (mask >> b) & 1 ? 1 : -1;
                patterns.push_back(std::move(signs));
            }
        } else {
            patterns.emplace_back(bits, 1);
            patterns.emplace_back(bits, -1);
            for (int i = 0; i < N; ++i) {
                std::vector<int> signs(bits, -1);
                for (int k = 0; k < K; ++k) signs[static_cast<size_t>(i) * K + k] = 1;
                patterns.push_back(signs);
                for (int& s : signs) s = -s;
                patterns.push_back(signs);
            }
            std::mt19937_64 rng(opts.seed);
            while (static_cast<int>(patterns.size()) < opts.corner_budget) {
                std::vector<int> signs(bits);
                for (int b = 0; b < bits; ++b) signs[b] = (rng() & 1) ? 1 : -1;
                patterns.push_back(std::move(signs));
            }
        }
    }

    BallCheckResult res;
    for (const auto& signs : patterns) {
        JointProfile prof = build(signs);
        ++res.profiles_checked;
        if (!satisfies(prof, formula, 0.0)) {
            res.ok = false;
            res.first_failure = res.profiles_checked - 1;
            return res;
        }
    }

    // random monotone profiles through the balls, with occasional extra knots
    std::mt19937_64 rng(opts.seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int r = 0; r < opts.random_profiles && eps > 0.0; ++r) {
        JointProfile prof;
        prof.selection = selection;
        for (int i = 0; i < N; ++i) {
            std::vector<double> ts, vs;
            for (int k = 0; k <= K; ++k) {
                double v = tsjp.progress[k][i];
                if (k > 0) v += (2.0 * unit(rng) - 1.0) * eps;
                v = std::max(0.0, k == 0 ? 0.0 : v);
                if (!vs.empty()) v = std::max(v, vs.back());
                if (k > 0 && unit(rng) < opts.knot_prob && tsjp.times[k] > tsjp.times[k - 1]) {
                    double tk = tsjp.times[k - 1] +
                                unit(rng) * (tsjp.times[k] - tsjp.times[k - 1]);
                    double vk = vs.back() + unit(rng) * (v - vs.back());
                    ts.push_back(tk);
                    vs.push_back(vk);
                }
                ts.push_back(tsjp.times[k]);
                vs.push_back(v);
            }
            prof.robots.push_back(compress(std::move(ts), std::move(vs)));
        }
        ++res.profiles_checked;
        if (!satisfies(prof, formula, 0.0)) {
            res.ok = false;
            res.first_failure = res.profiles_checked - 1;
            return res;
        }
    }
    return res;
}

}  // namespace rpstl
