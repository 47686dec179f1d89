#include "rpstl/milp.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>

#include "rpstl/encode.hpp"

namespace rpstl {

int MilpModel::binary_count() const {
    int n = 0;
    for (const auto& v : vars.all()) n += v.kind == VarKind::Binary ? 1 : 0;
    return n;
}

void MilpModel::add_row(LinExpr expr, char sense, double rhs) {
    expr.canonicalize();
    rhs -= expr.constant;
    expr.constant = 0.0;
    rows.push_back({std::move(expr), sense, rhs});
}

namespace {

class Eliminator {
  public:
    Eliminator(double big_m, MilpModel& model, EliminateStats* stats)
        : big_m_(big_m), model_(model), stats_(stats) {}

    void run(const LccfPtr& root) {
        count_refs(root);
        int depth = std::max(local_depth(root.get()), 1);
        for (const auto& [node, n] : refs_)
            if (n > 1) depth = std::max(depth, 1 + local_depth(node));
        if (big_m_ * depth > 1e15)
            throw EncodeError(
                "eliminate: guard depth times bigM exceeds the safe numeric range; "
                "choose a smaller bigM");
        emit_ref(root, {});
    }

  private:
    void count_refs(const LccfPtr& node) {
        if (++refs_[node.get()] > 1) return;  // children counted once
        for (const auto& c : node->children) count_refs(c);
    }

    // guard-chain length accumulated below a node within one emission
    // context; shared children restart behind their proxy
    int local_depth(const Lccf* node) {
        if (auto it = depth_memo_.find(node); it != depth_memo_.end()) return it->second;
        int here = node->kind == LccfKind::Or || node->kind == LccfKind::Count ? 1 : 0;
        int deepest = 0;
        for (const auto& c : node->children)
            if (refs_[c.get()] <= 1) deepest = std::max(deepest, local_depth(c.get()));
        depth_memo_[node] = here + deepest;
        return here + deepest;
    }

    void bump(int EliminateStats::* field) {
        if (stats_) ++(stats_->*field);
    }

    // LE + bigM * sum(1 - beta) >= 0
    void emit_guarded_atom(LinExpr e, const std::vector<int>& guards, double relax,
                           int EliminateStats::* field) {
        for (int b : guards) {
            e.constant += relax;
            e.add(b, -relax);
        }
        model_.add_row(std::move(e), '>', 0.0);
        bump(field);
    }

    void emit_ref(const LccfPtr& node, const std::vector<int>& guards) {
        if (node->kind == LccfKind::ConstTrue) return;
        if (refs_[node.get()] > 1) {
            auto it = proxies_.find(node.get());
            int q;
            if (it == proxies_.end()) {
                q = model_.vars.add("q" + std::to_string(proxies_.size()), VarKind::Binary, 0.0,
                                    1.0);
                bump(&EliminateStats::binaries_added);
                proxies_.emplace(node.get(), q);
                emit(node, {q});
            } else {
                q = it->second;
            }
            LinExpr e;
            e.add(q, 1.0);
            e.constant -= 1.0;
            emit_guarded_atom(std::move(e), guards, 1.0, &EliminateStats::proxy_links);
            return;
        }
        emit(node, guards);
    }

    void emit(const LccfPtr& node, const std::vector<int>& guards) {
        switch (node->kind) {
            case LccfKind::ConstTrue:
                return;
            case LccfKind::ConstFalse: {
                if (guards.empty()) {
                    model_.trivially_infeasible = true;
                    return;
                }
                // at least one guard must be off
                LinExpr e;
                for (int b : guards) e.add(b, -1.0);
                e.constant = static_cast<double>(guards.size()) - 1.0;
                model_.add_row(std::move(e), '>', 0.0);
                bump(&EliminateStats::plain_atoms);
                return;
            }
            case LccfKind::Atom:
                emit_guarded_atom(node->expr, guards, big_m_, &EliminateStats::plain_atoms);
                return;
            case LccfKind::And:
                for (const auto& c : node->children) emit_ref(c, guards);
                return;
            case LccfKind::Or: {
                LinExpr sum;
                std::vector<int> betas;
                for (size_t i = 0; i < node->children.size(); ++i) {
                    int b = model_.vars.add("d" + std::to_string(model_.vars.size()),
                                            VarKind::Binary, 0.0, 1.0);
                    bump(&EliminateStats::binaries_added);
                    betas.push_back(b);
                    sum.add(b, 1.0);
                }
                sum.constant -= 1.0;
                emit_guarded_atom(std::move(sum), guards, 1.0, &EliminateStats::or_rows);
                for (size_t i = 0; i < node->children.size(); ++i) {
                    std::vector<int> g = guards;
                    g.push_back(betas[i]);
                    emit_ref(node->children[i], g);
                }
                return;
            }
            case LccfKind::Count: {
                LinExpr sum;
                std::vector<int> betas;
                for (size_t i = 0; i < node->children.size(); ++i) {
                    int b = model_.vars.add("d" + std::to_string(model_.vars.size()),
                                            VarKind::Binary, 0.0, 1.0);
                    bump(&EliminateStats::binaries_added);
                    betas.push_back(b);
                    sum.add(b, 1.0);
                }
                sum.constant -= node->min_true;
                emit_guarded_atom(std::move(sum), guards, static_cast<double>(node->min_true),
                                  &EliminateStats::count_rows);
                for (size_t i = 0; i < node->children.size(); ++i) {
                    std::vector<int> g = guards;
                    g.push_back(betas[i]);
                    emit_ref(node->children[i], g);
                }
                return;
            }
        }
    }

    double big_m_;
    MilpModel& model_;
    EliminateStats* stats_;
    std::map<const Lccf*, int> refs_;
    std::map<const Lccf*, int> proxies_;
    std::map<const Lccf*, int> depth_memo_;
};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_terms(std::ostream& os, const LinExpr& e, const VarPool& vars) {
    bool first = true;
    for (auto [v, c] : e.terms) {
        if (c == 0.0) continue;
        if (first) {
            if (c < 0.0) os << "- ";
            first = false;
        } else {
            os << (c < 0.0 ? " - " : " + ");
        }
        os << num(std::abs(c)) << " " << vars[v].name;
    }
    if (e.constant != 0.0) {
        if (first)
            os << num(e.constant);
        else
            os << (e.constant < 0.0 ? " - " : " + ") << num(std::abs(e.constant));
    }
}

}  // namespace

void eliminate(const LccfPtr& root, double big_m, MilpModel& model, EliminateStats* stats) {
    Eliminator(big_m, model, stats).run(root);
}

void export_lp(const MilpModel& model, std::ostream& os) {
    os << "\\ " << model.name << "\n";
    os << "Minimize\n obj: ";
    write_terms(os, model.objective, model.vars);
    os << "\nSubject To\n";
    for (size_t r = 0; r < model.rows.size(); ++r) {
        const Constraint& c = model.rows[r];
        os << " c" << r << ": ";
        write_terms(os, c.expr, model.vars);
        os << (c.sense == '>' ? " >= " : c.sense == '<' ? " <= " : " = ") << num(c.rhs) << "\n";
    }
    os << "Bounds\n";
    for (const auto& v : model.vars.all()) {
        if (v.lb == v.ub)
            os << " " << v.name << " = " << num(v.lb) << "\n";
        else
            os << " " << num(v.lb) << " <= " << v.name << " <= " << num(v.ub) << "\n";
    }
    bool any_bin = false;
    for (const auto& v : model.vars.all()) {
        if (v.kind != VarKind::Binary) continue;
        if (!any_bin) {
            os << "Binaries\n";
            any_bin = true;
        }
        os << " " << v.name << "\n";
    }
    os << "End\n";
}

std::string export_lp_string(const MilpModel& model) {
    std::ostringstream os;
    export_lp(model, os);
    return os.str();
}

}  // namespace rpstl
