#pragma once

#include <cstdint>
#include <vector>

#include "rpstl/linexpr.hpp"

namespace rpstl {

struct NumericalError : Error {
    using Error::Error;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterLimit };

struct LpRow {
    LinExpr expr;  // constant already folded into rhs by the caller
    char sense;    // '>', '<', '='
    double rhs;
};

/// Bounded-variable simplex over a dense tableau. Primal two-phase solve
/// from the all-slack basis; dual reoptimization after bound changes (the
/// branch-and-bound path). Dantzig pricing with a Bland's-rule fallback
/// after a run of degenerate pivots.
class SimplexEngine {
  public:
    SimplexEngine(int n_structural, const std::vector<double>& lb, const std::vector<double>& ub,
                  const std::vector<LpRow>& rows, const LinExpr& objective);

    LpStatus solve_primal();       // from the current basis (cold start ok)
    LpStatus reoptimize_dual();    // after set_bounds calls

    void set_bounds(int var, double lb, double ub);
    double lower_bound(int var) const { return lb_[var]; }
    double upper_bound(int var) const { return ub_[var]; }

    double objective_value() const;
    std::vector<double> solution() const;  // structural variables only
    long pivot_count() const { return pivots_; }

    /// Largest constraint violation of the current solution against the
    /// original rows (diagnostic).
    double max_row_violation() const;

    static constexpr double kFeasTol = 1e-6;
    static constexpr double kOptTol = 1e-7;
    static constexpr double kPivotTol = 1e-9;

  private:
    enum class St : std::uint8_t { Basic, AtLower, AtUpper };

    int cols() const { return n_ + m_; }
    double nb_value(int j) const;           // value of a nonbasic variable
    void compute_xb();
    void compute_reduced_costs(const std::vector<double>& costs);
    void pivot(int leave_row, int enter);
    double primal_value(int j) const;       // current value of any variable
    bool basic_infeasible(int r, double* viol) const;

    LpStatus primal_loop(bool phase_one);

    int n_ = 0;  // structural
    int m_ = 0;  // rows
    std::vector<double> lb_, ub_;            // per column (structural + slack)
    std::vector<double> tab_;                // m x (n + m + 1); last col = B^-1 b
    std::vector<double> d_;                  // reduced costs, n + m
    std::vector<double> xb_;                 // basic values
    std::vector<int> basic_;                 // row -> column
    std::vector<St> status_;                 // column -> state
    std::vector<double> cost_;               // phase-2 costs (structural only terms)
    std::vector<double> rhs0_;               // original rhs
    std::vector<LpRow> rows_;                // original rows (diagnostics)
    double obj_const_ = 0.0;
    long pivots_ = 0;
    int degenerate_run_ = 0;
    bool bland_ = false;

    double& at(int r, int c) { return tab_[static_cast<size_t>(r) * (cols() + 1) + c]; }
    const double& at(int r, int c) const {
        return tab_[static_cast<size_t>(r) * (cols() + 1) + c];
    }
};

}  // namespace rpstl
