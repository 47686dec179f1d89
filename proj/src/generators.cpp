#include "rpstl/generators.hpp"

namespace rpstl {

namespace {

std::vector<double> spiked(int len, int at, double value, double elsewhere) {
    std::vector<double> v(static_cast<size_t>(len), elsewhere);
    v[at] = value;
    return v;
}

}  // namespace

FormulaPtr interference_formula(const CriticalSection& section, int paths_a, int paths_b,
                                double horizon, bool use_relaxed) {
    if (section.robot_a < 0 || section.robot_b < 0)
        throw Error("interference_formula: section lacks robot indices");
    const double exit_a = use_relaxed ? section.relaxed_a : section.upper_a;
    const double exit_b = use_relaxed ? section.relaxed_b : section.upper_b;

    // b stays before its entry until a has passed its exit
    FormulaPtr b_waits = f_until(
        0.0, horizon,
        f_negpred(section.robot_b, spiked(paths_b, section.path_b, section.lower_b, kInf)),
        f_pred(section.robot_a, spiked(paths_a, section.path_a, exit_a, -kInf)));
    // a stays before its entry until b has passed its exit
    FormulaPtr a_waits = f_until(
        0.0, horizon,
        f_negpred(section.robot_a, spiked(paths_a, section.path_a, section.lower_a, kInf)),
        f_pred(section.robot_b, spiked(paths_b, section.path_b, exit_b, -kInf)));
    return f_or({b_waits, a_waits});
}

FormulaPtr occupancy_counting_formula(const std::vector<OccupancyInterval>& intervals,
                                      const std::vector<int>& path_counts, int cap,
                                      double horizon) {
    if (cap < 1) throw Error("occupancy_counting_formula: cap must be >= 1");
    const int L = static_cast<int>(intervals.size());
    if (cap >= L) return f_true();

    // NNF of !(at least cap+1 inside): at least L - cap of the outside
    // subformulas. An unselected path is outside by construction.
    std::vector<FormulaPtr> outside;
    outside.reserve(intervals.size());
    for (const auto& iv : intervals) {
        const int m = path_counts.at(iv.robot);
        FormulaPtr below_entry = f_negpred(iv.robot, spiked(m, iv.path, iv.lower, kInf));
        FormulaPtr past_exit = f_pred(iv.robot, spiked(m, iv.path, iv.upper, -kInf));
        outside.push_back(f_or({below_entry, past_exit}));
    }
    return f_always(0.0, horizon, f_count(std::move(outside), L - cap));
}

}  // namespace rpstl
