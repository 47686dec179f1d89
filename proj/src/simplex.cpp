#include "rpstl/simplex.hpp"

#include <algorithm>
#include <cmath>

namespace rpstl {

namespace {
constexpr double kInfBound = std::numeric_limits<double>::infinity();
}

SimplexEngine::SimplexEngine(int n_structural, const std::vector<double>& lb,
                             const std::vector<double>& ub, const std::vector<LpRow>& rows,
                             const LinExpr& objective)
    : n_(n_structural), m_(static_cast<int>(rows.size())), rows_(rows) {
    lb_.assign(cols(), 0.0);
    ub_.assign(cols(), 0.0);
    for (int j = 0; j < n_; ++j) {
        lb_[j] = lb.at(j);
        ub_[j] = ub.at(j);
        if (!std::isfinite(lb_[j]) && !std::isfinite(ub_[j]))
            throw NumericalError("simplex: structural variables need at least one finite bound");
        if (lb_[j] > ub_[j]) throw NumericalError("simplex: variable with lb > ub");
    }
    tab_.assign(static_cast<size_t>(m_) * (cols() + 1), 0.0);
    rhs0_.resize(m_);
    for (int r = 0; r < m_; ++r) {
        LinExpr e = rows[r].expr;
        e.canonicalize();
        double rhs = rows[r].rhs - e.constant;
        for (auto [v, c] : e.terms) {
            if (v < 0 || v >= n_) throw NumericalError("simplex: row references unknown variable");
            at(r, v) += c;
        }
        int s = n_ + r;
        at(r, s) = 1.0;
        switch (rows[r].sense) {
            case '<':
                lb_[s] = 0.0;
                ub_[s] = kInfBound;
                break;
            case '>':
                lb_[s] = -kInfBound;
                ub_[s] = 0.0;
                break;
            case '=':
                lb_[s] = 0.0;
                ub_[s] = 0.0;
                break;
            default:
                throw NumericalError("simplex: bad row sense");
        }
        at(r, cols()) = rhs;
        rhs0_[r] = rhs;
    }
    cost_.assign(cols(), 0.0);
    {
        LinExpr e = objective;
        e.canonicalize();
        obj_const_ = e.constant;
        for (auto [v, c] : e.terms) cost_.at(v) = c;
    }
    basic_.resize(m_);
    status_.assign(cols(), St::AtLower);
    for (int j = 0; j < n_; ++j)
        status_[j] = std::isfinite(lb_[j]) ? St::AtLower : St::AtUpper;
    for (int r = 0; r < m_; ++r) {
        basic_[r] = n_ + r;
        status_[n_ + r] = St::Basic;
    }
    xb_.assign(m_, 0.0);
    d_ = cost_;  // exact reduced costs for the all-slack basis
    compute_xb();
}

double SimplexEngine::nb_value(int j) const {
    return status_[j] == St::AtUpper ? ub_[j] : lb_[j];
}

double SimplexEngine::primal_value(int j) const {
    if (status_[j] == St::Basic) {
        for (int r = 0; r < m_; ++r)
            if (basic_[r] == j) return xb_[r];
        throw NumericalError("simplex: basic column without row");
    }
    return nb_value(j);
}

void SimplexEngine::compute_xb() {
    for (int r = 0; r < m_; ++r) xb_[r] = at(r, cols());
    for (int j = 0; j < cols(); ++j) {
        if (status_[j] == St::Basic) continue;
        double v = nb_value(j);
        if (v == 0.0) continue;
        for (int r = 0; r < m_; ++r) {
            double a = at(r, j);
            if (a != 0.0) xb_[r] -= a * v;
        }
    }
}

void SimplexEngine::compute_reduced_costs(const std::vector<double>& costs) {
    d_ = costs;
    for (int r = 0; r < m_; ++r) {
        double cb = costs[basic_[r]];
        if (cb == 0.0) continue;
        const double* row = &tab_[static_cast<size_t>(r) * (cols() + 1)];
        for (int c = 0; c < cols(); ++c) d_[c] -= cb * row[c];
    }
    for (int r = 0; r < m_; ++r) d_[basic_[r]] = 0.0;
}

void SimplexEngine::pivot(int leave_row, int enter) {
    const size_t w = cols() + 1;
    double* prow = &tab_[static_cast<size_t>(leave_row) * w];
    double inv = 1.0 / prow[enter];
    for (size_t c = 0; c < w; ++c) prow[c] *= inv;
    prow[enter] = 1.0;
    for (int q = 0; q < m_; ++q) {
        if (q == leave_row) continue;
        double* row = &tab_[static_cast<size_t>(q) * w];
        double f = row[enter];
        if (f == 0.0) continue;
        for (size_t c = 0; c < w; ++c) row[c] -= f * prow[c];
        row[enter] = 0.0;
    }
    double f = d_[enter];
    if (f != 0.0) {
        for (int c = 0; c < cols(); ++c) d_[c] -= f * prow[c];
        d_[enter] = 0.0;
    }
    ++pivots_;
}

bool SimplexEngine::basic_infeasible(int r, double* viol) const {
    int j = basic_[r];
    if (xb_[r] < lb_[j] - kFeasTol) {
        if (viol) *viol = lb_[j] - xb_[r];
        return true;
    }
    if (xb_[r] > ub_[j] + kFeasTol) {
        if (viol) *viol = xb_[r] - ub_[j];
        return true;
    }
    return false;
}

LpStatus SimplexEngine::primal_loop(bool phase_one) {
    const long limit = 20000 + 200L * (m_ + cols());
    std::vector<double> d1;
    long local = 0;
    for (;;) {
        if (++local > limit) return LpStatus::IterLimit;

        const std::vector<double>* dp = &d_;
        if (phase_one) {
            // composite phase-1 pricing from the current infeasibilities
            bool any = false;
            d1.assign(cols(), 0.0);
            for (int r = 0; r < m_; ++r) {
                int bj = basic_[r];
                const double* row = &tab_[static_cast<size_t>(r) * (cols() + 1)];
                if (xb_[r] < lb_[bj] - kFeasTol) {
                    any = true;
                    for (int c = 0; c < cols(); ++c) d1[c] += row[c];
                } else if (xb_[r] > ub_[bj] + kFeasTol) {
                    any = true;
                    for (int c = 0; c < cols(); ++c) d1[c] -= row[c];
                }
            }
            if (!any) return LpStatus::Optimal;
            dp = &d1;
        }

        // entering column
        int enter = -1;
        double best = kOptTol;
        int dir = 0;
        for (int c = 0; c < cols(); ++c) {
            if (status_[c] == St::Basic || lb_[c] == ub_[c]) continue;
            double dc = (*dp)[c];
            double score;
            int dc_dir;
            if (status_[c] == St::AtLower && dc < -kOptTol && std::isfinite(lb_[c])) {
                score = -dc;
                dc_dir = 1;
            } else if (status_[c] == St::AtUpper && dc > kOptTol && std::isfinite(ub_[c])) {
                score = dc;
                dc_dir = -1;
            } else {
                continue;
            }
            if (bland_) {
                enter = c;
                dir = dc_dir;
                break;
            }
            if (score > best) {
                best = score;
                enter = c;
                dir = dc_dir;
            }
        }
        if (enter == -1) {
            if (!phase_one) return LpStatus::Optimal;
            return LpStatus::Infeasible;  // still infeasible, no descent left
        }

        // ratio test
        double flip = ub_[enter] - lb_[enter];  // may be +inf
        int block = -1;
        double step = flip;
        int leave_to = 0;  // +1 lower, -1 upper
        double block_pivot = 0.0;
        for (int r = 0; r < m_; ++r) {
            double a = at(r, enter);
            if (std::abs(a) < kPivotTol) continue;
            double rate = -a * dir;
            int bj = basic_[r];
            double cand;
            int to;
            if (phase_one && xb_[r] < lb_[bj] - kFeasTol) {
                if (rate <= 0.0) continue;  // moving further away handled by pricing
                cand = (lb_[bj] - xb_[r]) / rate;
                to = 1;
            } else if (phase_one && xb_[r] > ub_[bj] + kFeasTol) {
                if (rate >= 0.0) continue;
                cand = (ub_[bj] - xb_[r]) / rate;
                to = -1;
            } else if (rate > 0.0 && std::isfinite(ub_[bj])) {
                cand = (ub_[bj] - xb_[r]) / rate;
                to = -1;
            } else if (rate < 0.0 && std::isfinite(lb_[bj])) {
                cand = (lb_[bj] - xb_[r]) / rate;
                to = 1;
            } else {
                continue;
            }
            cand = std::max(cand, 0.0);
            bool better = cand < step - 1e-9;
            bool tie = !better && cand < step + 1e-9 && block != -1;
            if (better || (tie && (bland_ ? basic_[r] < basic_[block]
                                          : std::abs(a) > std::abs(block_pivot)))) {
                step = cand;
                block = r;
                leave_to = to;
                block_pivot = a;
            } else if (block == -1 && cand < step) {
                step = cand;
                block = r;
                leave_to = to;
                block_pivot = a;
            }
        }

        if (block == -1 && !std::isfinite(step)) {
            if (phase_one)
                throw NumericalError("simplex: unbounded phase-1 descent");
            return LpStatus::Unbounded;
        }

        if (std::abs(step) < 1e-11) {
            if (++degenerate_run_ > 10 * (m_ + cols())) bland_ = true;
        } else {
            degenerate_run_ = 0;
            bland_ = false;
        }

        double signed_step = dir * step;
        if (block == -1) {
            // bound flip
            for (int r = 0; r < m_; ++r) {
                double a = at(r, enter);
                if (a != 0.0) xb_[r] -= a * signed_step;
            }
            status_[enter] = status_[enter] == St::AtLower ? St::AtUpper : St::AtLower;
            continue;
        }

        double enter_value = nb_value(enter) + signed_step;
        for (int r = 0; r < m_; ++r) {
            double a = at(r, enter);
            if (a != 0.0 && r != block) xb_[r] -= a * signed_step;
        }
        int leaving = basic_[block];
        status_[leaving] = leave_to == 1 ? St::AtLower : St::AtUpper;
        pivot(block, enter);
        basic_[block] = enter;
        status_[enter] = St::Basic;
        xb_[block] = enter_value;
    }
}

LpStatus SimplexEngine::solve_primal() {
    compute_xb();
    bool feasible = true;
    for (int r = 0; r < m_; ++r)
        if (basic_infeasible(r, nullptr)) feasible = false;
    if (!feasible) {
        LpStatus s = primal_loop(true);
        if (s != LpStatus::Optimal) return s;
    }
    compute_reduced_costs(cost_);
    return primal_loop(false);
}

LpStatus SimplexEngine::reoptimize_dual() {
    const long limit = 20000 + 200L * (m_ + cols());
    long local = 0;
    for (;;) {
        if (++local > limit) return LpStatus::IterLimit;
        // leaving: the worst bound violation among basics
        int leave = -1;
        double worst = kFeasTol;
        for (int r = 0; r < m_; ++r) {
            double v;
            if (basic_infeasible(r, &v) && v > worst) {
                worst = v;
                leave = r;
            }
        }
        if (leave == -1) return LpStatus::Optimal;
        int bj = basic_[leave];
        bool below = xb_[leave] < lb_[bj] - kFeasTol;

        const double* row = &tab_[static_cast<size_t>(leave) * (cols() + 1)];
        int enter = -1;
        double best_ratio = 0.0;
        double best_w = 0.0;
        for (int c = 0; c < cols(); ++c) {
            if (status_[c] == St::Basic || lb_[c] == ub_[c]) continue;
            double w = row[c];
            if (std::abs(w) < kPivotTol) continue;
            bool at_lower = status_[c] == St::AtLower;
            bool eligible = below ? (at_lower ? w < 0.0 : w > 0.0)
                                  : (at_lower ? w > 0.0 : w < 0.0);
            if (!eligible) continue;
            double ratio = std::abs(d_[c] / w);
            if (enter == -1 || ratio < best_ratio - 1e-12 ||
                (ratio < best_ratio + 1e-12 && std::abs(w) > std::abs(best_w))) {
                enter = c;
                best_ratio = ratio;
                best_w = w;
            }
        }
        if (enter == -1) return LpStatus::Infeasible;

        double target = below ? lb_[bj] : ub_[bj];
        double w = row[enter];
        double signed_step = (xb_[leave] - target) / w;
        double enter_value = nb_value(enter) + signed_step;
        for (int r = 0; r < m_; ++r) {
            double a = at(r, enter);
            if (a != 0.0 && r != leave) xb_[r] -= a * signed_step;
        }
        status_[bj] = below ? St::AtLower : St::AtUpper;
        pivot(leave, enter);
        basic_[leave] = enter;
        status_[enter] = St::Basic;
        xb_[leave] = enter_value;
    }
}

void SimplexEngine::set_bounds(int var, double lb, double ub) {
    if (var < 0 || var >= n_) throw NumericalError("set_bounds: not a structural variable");
    if (lb > ub) throw NumericalError("set_bounds: lb > ub");
    if (status_[var] == St::Basic) {
        lb_[var] = lb;
        ub_[var] = ub;
        return;  // dual reoptimization repairs any violation
    }
    double old = nb_value(var);
    lb_[var] = lb;
    ub_[var] = ub;
    // keep the nonbasic at a bound consistent with its reduced-cost sign
    if (lb == ub)
        status_[var] = St::AtLower;
    else if (d_[var] >= 0.0 && std::isfinite(lb))
        status_[var] = St::AtLower;
    else if (std::isfinite(ub))
        status_[var] = St::AtUpper;
    else
        status_[var] = St::AtLower;
    double now = nb_value(var);
    double delta = now - old;
    if (delta != 0.0) {
        for (int r = 0; r < m_; ++r) {
            double a = at(r, var);
            if (a != 0.0) xb_[r] -= a * delta;
        }
    }
}

double SimplexEngine::objective_value() const {
    double v = obj_const_;
    for (int r = 0; r < m_; ++r) v += cost_[basic_[r]] * xb_[r];
    for (int c = 0; c < cols(); ++c)
        if (status_[c] != St::Basic && cost_[c] != 0.0) v += cost_[c] * nb_value(c);
    return v;
}

std::vector<double> SimplexEngine::solution() const {
    std::vector<double> x(cols(), 0.0);
    for (int c = 0; c < cols(); ++c)
        if (status_[c] != St::Basic) x[c] = nb_value(c);
    for (int r = 0; r < m_; ++r) x[basic_[r]] = xb_[r];
    x.resize(n_);
    return x;
}

double SimplexEngine::max_row_violation() const {
    std::vector<double> x(cols(), 0.0);
    for (int c = 0; c < cols(); ++c)
        if (status_[c] != St::Basic) x[c] = nb_value(c);
    for (int r = 0; r < m_; ++r) x[basic_[r]] = xb_[r];
    double worst = 0.0;
    for (int r = 0; r < m_; ++r) {
        double v = rows_[r].expr.constant;
        for (auto [var, c] : rows_[r].expr.terms) v += c * x[var];
        double gap = 0.0;
        if (rows_[r].sense == '>')
            gap = rows_[r].rhs - v;
        else if (rows_[r].sense == '<')
            gap = v - rows_[r].rhs;
        else
            gap = std::abs(v - rows_[r].rhs);
        worst = std::max(worst, gap);
    }
    return worst;
}

}  // namespace rpstl
