#include "rpstl/encode.hpp"

#include <algorithm>
#include <cmath>

namespace rpstl {

namespace {

double max_finite_coeff(const FormulaPtr& f) {
    if (!f) return 0.0;
    double m = 0.0;
    if (f->kind == NodeKind::Pred || f->kind == NodeKind::NegPred)
        for (double c : f->coeffs)
            if (std::isfinite(c)) m = std::max(m, std::abs(c));
    for (const auto& c : f->children) m = std::max(m, max_finite_coeff(c));
    return m;
}

}  // namespace

Encoder::Encoder(std::vector<RobotDynamics> robots, EncodeConfig config,
                 const FormulaPtr& formula_hint)
    : robots_(std::move(robots)), config_(config) {
    if (config_.segment_count < 1) throw EncodeError("encode: K must be >= 1");
    if (config_.horizon <= 0.0) throw EncodeError("encode: horizon must be positive");
    if (config_.progress_margin <= 0.0) throw EncodeError("encode: eps must be positive");
    if (config_.time_margin <= 0.0) throw EncodeError("encode: eps_t must be positive");
    double scale = std::max(config_.horizon, 1.0);
    for (const auto& r : robots_) {
        if (r.path_lengths.empty()) throw EncodeError("encode: robot without paths");
        if (r.v_max <= 0.0) throw EncodeError("encode: v_max must be positive");
        for (double g : r.path_lengths) {
            if (g <= 0.0) throw EncodeError("encode: path length must be positive");
            scale = std::max(scale, g);
        }
    }
    scale = std::max(scale, max_finite_coeff(formula_hint));
    if (config_.big_m > 0.0) {
        if (config_.big_m <= 2.0 * scale)
            throw EncodeError("encode: bigM must exceed twice the largest bound/coefficient");
        big_m_ = config_.big_m;
    } else {
        big_m_ = 10.0 * scale;
    }

    const int K = config_.segment_count;
    const int N = static_cast<int>(robots_.size());
    layout_.t.resize(K + 1);
    for (int k = 0; k <= K; ++k)
        layout_.t[k] = pool_.add("t_" + std::to_string(k), VarKind::Continuous, 0.0,
                                 config_.horizon);
    layout_.sigma.resize(N);
    layout_.z.resize(N);
    for (int i = 0; i < N; ++i) {
        double gmax = *std::max_element(robots_[i].path_lengths.begin(),
                                        robots_[i].path_lengths.end());
        layout_.sigma[i].resize(K + 1);
        for (int k = 0; k <= K; ++k)
            layout_.sigma[i][k] = pool_.add(
                "s_" + std::to_string(i + 1) + "_" + std::to_string(k), VarKind::Continuous, 0.0,
                gmax);
        layout_.z[i].resize(robots_[i].path_lengths.size());
        for (size_t j = 0; j < robots_[i].path_lengths.size(); ++j)
            layout_.z[i][j] = pool_.add("z_" + std::to_string(i + 1) + "_" + std::to_string(j + 1),
                                        VarKind::Binary, 0.0, 1.0);
    }
    if (config_.objective == ObjectiveKind::SumTravelTime) {
        layout_.travel_time.resize(N);
        for (int i = 0; i < N; ++i)
            layout_.travel_time[i] = pool_.add("tt_" + std::to_string(i + 1),
                                               VarKind::Continuous, 0.0, config_.horizon);
    }
}

LinExpr Encoder::selected_goal(int robot) const {
    LinExpr e;
    for (size_t j = 0; j < robots_[robot].path_lengths.size(); ++j)
        e.add(layout_.z[robot][j], robots_[robot].path_lengths[j]);
    return e;
}

LccfPtr Encoder::encode_structure() {
    const int K = config_.segment_count;
    const int N = static_cast<int>(robots_.size());
    std::vector<LccfPtr> parts;

    auto diff = [](int hi, int lo) {
        LinExpr e;
        e.add(hi, 1.0);
        e.add(lo, -1.0);
        return e;
    };

    // exactly one path per robot
    for (int i = 0; i < N; ++i) {
        LinExpr sum;
        for (int v : layout_.z[i]) sum.add(v, 1.0);
        LinExpr ge = sum;
        ge.constant -= 1.0;
        parts.push_back(lccf_atom(ge));
        LinExpr le = sum * -1.0;
        le.constant += 1.0;
        parts.push_back(lccf_atom(le));
    }
    // stamp ordering and per-robot monotone progress + speed limits
    for (int k = 0; k < K; ++k) {
        parts.push_back(lccf_atom(diff(layout_.t[k + 1], layout_.t[k])));
        for (int i = 0; i < N; ++i) {
            parts.push_back(lccf_atom(diff(layout_.sigma[i][k + 1], layout_.sigma[i][k])));
            LinExpr speed = diff(layout_.t[k + 1], layout_.t[k]) * robots_[i].v_max;
            speed += diff(layout_.sigma[i][k + 1], layout_.sigma[i][k]) * -1.0;
            parts.push_back(lccf_atom(speed));
        }
    }
    // boundary: t_0 = 0, sigma_(0) = 0, sigma_(K) = selected goal, t_K <= T
    {
        LinExpr t0;
        t0.add(layout_.t[0], 1.0);
        parts.push_back(lccf_atom(t0));
        parts.push_back(lccf_atom(t0 * -1.0));
        for (int i = 0; i < N; ++i) {
            LinExpr s0;
            s0.add(layout_.sigma[i][0], 1.0);
            parts.push_back(lccf_atom(s0));
            parts.push_back(lccf_atom(s0 * -1.0));
            LinExpr end;
            end.add(layout_.sigma[i][K], 1.0);
            end += selected_goal(i) * -1.0;
            parts.push_back(lccf_atom(end));
            parts.push_back(lccf_atom(end * -1.0));
        }
        LinExpr cap;
        cap.add(layout_.t[K], -1.0);
        cap.constant = config_.horizon;
        parts.push_back(lccf_atom(cap));
    }
    return lccf_and(std::move(parts));
}

LinExpr Encoder::pred_margin(const Formula& f, int sigma_var) const {
    LinExpr e;
    e.add(sigma_var, 1.0);
    for (size_t j = 0; j < f.coeffs.size(); ++j) {
        double b = f.coeffs[j];
        if (b == kInf)
            b = big_m_;
        else if (b == -kInf)
            b = -big_m_;
        e.add(layout_.z[f.robot][j], -b);
    }
    e.constant -= config_.progress_margin;
    return e;
}

LccfPtr Encoder::encode_formula(const FormulaPtr& formula, int k) {
    if (k == kTerminal) return enc_terminal(formula);
    if (k < 0 || k >= config_.segment_count)
        throw EncodeError("encode_formula: segment index out of range");
    return enc(formula, k);
}

LccfPtr Encoder::enc(const FormulaPtr& f, int k) {
    auto key = std::make_pair(f.get(), k);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const int K = config_.segment_count;
    const double eps_t = config_.time_margin;
    const auto& t = layout_.t;

    auto time_atom = [&](int var_pos, int var_neg, double constant) {
        LinExpr e;
        e.add(var_pos, 1.0);
        e.add(var_neg, -1.0);
        e.constant = constant;
        return lccf_atom(e);
    };

    LccfPtr out;
    switch (f->kind) {
        case NodeKind::ConstTrue:
            out = lccf_true();
            break;
        case NodeKind::ConstFalse:
            out = lccf_false();
            break;
        case NodeKind::Not:
            throw EncodeError("encode_formula: input must be in negation normal form");
        case NodeKind::Pred: {
            if (f->robot >= static_cast<int>(robots_.size()))
                throw EncodeError("encode: predicate references unknown robot");
            out = lccf_and({lccf_atom(pred_margin(*f, layout_.sigma[f->robot][k])),
                            lccf_atom(pred_margin(*f, layout_.sigma[f->robot][k + 1]))});
            break;
        }
        case NodeKind::NegPred: {
            if (f->robot >= static_cast<int>(robots_.size()))
                throw EncodeError("encode: predicate references unknown robot");
            auto below = [&](int var) {
                // b.z - sigma - eps >= 0
                LinExpr e = pred_margin(*f, var) * -1.0;
                e.constant -= 2.0 * config_.progress_margin;
                return lccf_atom(e);
            };
            out = lccf_and({below(layout_.sigma[f->robot][k]),
                            below(layout_.sigma[f->robot][k + 1])});
            break;
        }
        case NodeKind::And: {
            std::vector<LccfPtr> cs;
            for (const auto& c : f->children) cs.push_back(enc(c, k));
            out = lccf_and(std::move(cs));
            break;
        }
        case NodeKind::Or: {
            std::vector<LccfPtr> cs;
            for (const auto& c : f->children) cs.push_back(enc(c, k));
            out = lccf_or(std::move(cs));
            break;
        }
        case NodeKind::Count: {
            std::vector<LccfPtr> cs;
            for (const auto& c : f->children) cs.push_back(enc(c, k));
            out = lccf_count(std::move(cs), f->min_true);
            break;
        }
        case NodeKind::Always: {
            // every segment meeting [t_k + a - eps_t, t_{k+1} + b] satisfies
            // the child; the part of the window past t_K holds on the held
            // tail
            std::vector<LccfPtr> parts;
            for (int l = 0; l < K; ++l) {
                std::vector<LccfPtr> alts;
                alts.push_back(time_atom(t[k], t[l + 1], f->t_lo - eps_t));   // t_{l+1} <= t_k+a-eps_t
                alts.push_back(time_atom(t[l], t[k + 1], -f->t_hi));          // t_l >= t_{k+1}+b
                alts.push_back(enc(f->children[0], l));
                parts.push_back(lccf_or(std::move(alts)));
            }
            parts.push_back(lccf_or({time_atom(t[K], t[k + 1], -f->t_hi),    // t_K >= t_{k+1}+b
                                     enc_terminal(f->children[0])}));
            out = lccf_and(std::move(parts));
            break;
        }
        case NodeKind::Eventually: {
            // some segment inside [t_{k+1} + a, t_k + b - eps_t] satisfies
            // the child; the window must be non-empty
            std::vector<LccfPtr> lead{time_atom(t[k], t[k + 1], f->t_hi - f->t_lo - eps_t)};
            std::vector<LccfPtr> alts;
            for (int l = 0; l < K; ++l) {
                alts.push_back(lccf_and({time_atom(t[l + 1], t[k + 1], -f->t_lo),
                                         time_atom(t[k], t[l], f->t_hi - eps_t),
                                         enc(f->children[0], l)}));
            }
            alts.push_back(lccf_and({time_atom(t[k], t[K], f->t_hi - eps_t),  // t_K <= t_k+b-eps_t
                                     enc_terminal(f->children[0])}));
            lead.push_back(lccf_or(std::move(alts)));
            out = lccf_and(std::move(lead));
            break;
        }
        case NodeKind::Until: {
            // eventually-style witness for the right side; the left side
            // holds on every segment up to the witness
            std::vector<LccfPtr> lead{time_atom(t[k], t[k + 1], f->t_hi - f->t_lo - eps_t)};
            std::vector<LccfPtr> alts;
            for (int l = 0; l < K; ++l) {
                alts.push_back(lccf_and({time_atom(t[l + 1], t[k + 1], -f->t_lo),
                                         time_atom(t[k], t[l], f->t_hi - eps_t),
                                         enc(f->children[1], l), prefix_chain(f->children[0], l)}));
            }
            alts.push_back(lccf_and({time_atom(t[k], t[K], f->t_hi - eps_t),
                                     enc_terminal(f->children[1]),
                                     prefix_chain(f->children[0], K - 1),
                                     enc_terminal(f->children[0])}));
            lead.push_back(lccf_or(std::move(alts)));
            out = lccf_and(std::move(lead));
            break;
        }
    }
    memo_.emplace(key, out);
    return out;
}

LccfPtr Encoder::prefix_chain(const FormulaPtr& f, int l) {
    if (l < 0) return lccf_true();
    auto key = std::make_pair(f.get(), l);
    if (auto it = chain_memo_.find(key); it != chain_memo_.end()) return it->second;
    LccfPtr out = l == 0 ? enc(f, 0) : lccf_and({enc(f, l), prefix_chain(f, l - 1)});
    chain_memo_.emplace(key, out);
    return out;
}

LccfPtr Encoder::enc_terminal(const FormulaPtr& f) {
    auto key = std::make_pair(f.get(), kTerminal);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const int K = config_.segment_count;
    LccfPtr out;
    switch (f->kind) {
        case NodeKind::ConstTrue:
            out = lccf_true();
            break;
        case NodeKind::ConstFalse:
            out = lccf_false();
            break;
        case NodeKind::Not:
            throw EncodeError("encode_formula: input must be in negation normal form");
        case NodeKind::Pred:
            out = lccf_atom(pred_margin(*f, layout_.sigma[f->robot][K]));
            break;
        case NodeKind::NegPred: {
            LinExpr e = pred_margin(*f, layout_.sigma[f->robot][K]) * -1.0;
            e.constant -= 2.0 * config_.progress_margin;
            out = lccf_atom(e);
            break;
        }
        case NodeKind::And: {
            std::vector<LccfPtr> cs;
            for (const auto& c : f->children) cs.push_back(enc_terminal(c));
            out = lccf_and(std::move(cs));
            break;
        }
        case NodeKind::Or: {
            std::vector<LccfPtr> cs;
            for (const auto& c : f->children) cs.push_back(enc_terminal(c));
            out = lccf_or(std::move(cs));
            break;
        }
        case NodeKind::Count: {
            std::vector<LccfPtr> cs;
            for (const auto& c : f->children) cs.push_back(enc_terminal(c));
            out = lccf_count(std::move(cs), f->min_true);
            break;
        }
        case NodeKind::Always:
        case NodeKind::Eventually:
            out = enc_terminal(f->children[0]);
            break;
        case NodeKind::Until:
            out = lccf_and({enc_terminal(f->children[0]), enc_terminal(f->children[1])});
            break;
    }
    memo_.emplace(key, out);
    return out;
}

std::pair<LinExpr, LccfPtr> Encoder::encode_objective() {
    const int K = config_.segment_count;
    if (config_.objective == ObjectiveKind::Makespan) {
        LinExpr obj;
        obj.add(layout_.t[K], 1.0);
        return {obj, lccf_true()};
    }
    // sum of travel time: for every stamp, either the robot has not arrived
    // (within eta) and its travel time lies past the next stamp, or it has
    // arrived and the travel time lies at or before this stamp
    const double eta = config_.progress_margin / 10.0;
    LinExpr obj;
    std::vector<LccfPtr> aux;
    for (size_t i = 0; i < robots_.size(); ++i) {
        obj.add(layout_.travel_time[i], 1.0);
        for (int k = 0; k < K; ++k) {
            LinExpr not_arrived = selected_goal(static_cast<int>(i));
            not_arrived.add(layout_.sigma[i][k], -1.0);
            not_arrived.constant -= eta;  // goal - sigma >= eta

            LinExpr tt_after;
            tt_after.add(layout_.travel_time[i], 1.0);
            tt_after.add(layout_.t[k + 1], -1.0);

            LinExpr arrived = selected_goal(static_cast<int>(i)) * -1.0;
            arrived.add(layout_.sigma[i][k], 1.0);
            arrived.constant += eta;  // sigma >= goal - eta

            LinExpr tt_before;
            tt_before.add(layout_.travel_time[i], -1.0);
            tt_before.add(layout_.t[k], 1.0);

            aux.push_back(lccf_or({lccf_and({lccf_atom(not_arrived), lccf_atom(tt_after)}),
                                   lccf_and({lccf_atom(arrived), lccf_atom(tt_before)})}));
        }
    }
    return {obj, lccf_and(std::move(aux))};
}

LinExpr Encoder::objective() const {
    LinExpr obj;
    if (config_.objective == ObjectiveKind::Makespan) {
        obj.add(layout_.t[config_.segment_count], 1.0);
    } else {
        for (size_t i = 0; i < robots_.size(); ++i) obj.add(layout_.travel_time[i], 1.0);
    }
    return obj;
}

LccfPtr Encoder::encode_all(const FormulaPtr& formula) {
    if (contains_not(formula))
        throw EncodeError("encode_all: formula must be in negation normal form");
    auto [obj, aux] = encode_objective();
    (void)obj;
    return lccf_and({encode_structure(), enc(formula, 0), aux});
}

TsjpSequence Encoder::extract_tsjp(const std::vector<double>& x) const {
    TsjpSequence seq;
    const int K = config_.segment_count;
    for (int k = 0; k <= K; ++k) {
        seq.times.push_back(x.at(layout_.t[k]));
        std::vector<double> row;
        for (size_t i = 0; i < robots_.size(); ++i) row.push_back(x.at(layout_.sigma[i][k]));
        seq.progress.push_back(std::move(row));
    }
    return seq;
}

std::vector<int> Encoder::extract_selection(const std::vector<double>& x) const {
    std::vector<int> sel;
    for (size_t i = 0; i < robots_.size(); ++i) {
        int best = 0;
        for (size_t j = 1; j < layout_.z[i].size(); ++j)
            if (x.at(layout_.z[i][j]) > x.at(layout_.z[i][best])) best = static_cast<int>(j);
        sel.push_back(best);
    }
    return sel;
}

}  // namespace rpstl
