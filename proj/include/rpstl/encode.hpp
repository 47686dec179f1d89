#pragma once

#include <map>

#include "rpstl/formula.hpp"
#include "rpstl/lccf.hpp"
#include "rpstl/profile.hpp"

namespace rpstl {

struct EncodeError : Error {
    using Error::Error;
};

enum class ObjectiveKind { Makespan, SumTravelTime };

struct EncodeConfig {
    int segment_count = 2;         // K
    double horizon = 100.0;        // T, seconds
    double progress_margin = 0.1;  // eps
    double time_margin = 0.1;      // eps_t
    double big_m = 0.0;            // 0 = derive from the instance
    ObjectiveKind objective = ObjectiveKind::Makespan;
};

/// What the encoder needs to know about a robot: its alternative path
/// lengths and speed limit.
struct RobotDynamics {
    std::vector<double> path_lengths;  // g per path
    double v_max = 1.0;
};

struct TsjpLayout {
    std::vector<int> t;                      // stamp variables t_0..t_K
    std::vector<std::vector<int>> sigma;     // [robot][stamp]
    std::vector<std::vector<int>> z;         // [robot][path], binary
    std::vector<int> travel_time;            // [robot]; empty unless STT
};

/// Builds the LCCF over TSJP variables and selection binaries: structure
/// constraints, the formula recursion per segment, and the objective.
class Encoder {
  public:
    Encoder(std::vector<RobotDynamics> robots, EncodeConfig config,
            const FormulaPtr& formula_hint = nullptr);

    LccfPtr encode_structure();
    /// Segment-k encoding of an NNF formula. k == kTerminal encodes truth on
    /// the held profile after the last stamp.
    LccfPtr encode_formula(const FormulaPtr& formula, int k);
    std::pair<LinExpr, LccfPtr> encode_objective();
    /// structure AND formula at segment 0 AND objective auxiliaries.
    LccfPtr encode_all(const FormulaPtr& formula);

    const VarPool& pool() const { return pool_; }
    const TsjpLayout& layout() const { return layout_; }
    const EncodeConfig& config() const { return config_; }
    double big_m() const { return big_m_; }
    LinExpr objective() const;

    /// Read a TSJP back out of a solved variable assignment.
    TsjpSequence extract_tsjp(const std::vector<double>& x) const;
    std::vector<int> extract_selection(const std::vector<double>& x) const;

    static constexpr int kTerminal = -1;

  private:
    LccfPtr enc(const FormulaPtr& f, int k);
    LccfPtr enc_terminal(const FormulaPtr& f);
    LccfPtr prefix_chain(const FormulaPtr& f, int l);
    LinExpr pred_margin(const Formula& f, int sigma_var) const;  // sigma - b.z - eps
    LinExpr selected_goal(int robot) const;                      // sum_j g_ij z_ij

    std::vector<RobotDynamics> robots_;
    EncodeConfig config_;
    double big_m_ = 0.0;
    VarPool pool_;
    TsjpLayout layout_;
    std::map<std::pair<const Formula*, int>, LccfPtr> memo_;
    std::map<std::pair<const Formula*, int>, LccfPtr> chain_memo_;
};

}  // namespace rpstl
