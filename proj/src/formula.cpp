#include "rpstl/formula.hpp"

#include <cmath>
#include <cstdio>

namespace rpstl {

namespace {

FormulaPtr make(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

void check_window(double a, double b) {
    if (a < 0.0 || a > b) throw Error("temporal window must satisfy 0 <= a <= b");
}

std::string coef_text(double c) {
    if (c == kInf) return "INF";
    if (c == -kInf) return "-INF";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", c);
    return buf;
}

std::string window_text(double a, double b) {
    return "[" + coef_text(a) + "," + coef_text(b) + "]";
}

}  // namespace

FormulaPtr f_true() { return make({.kind = NodeKind::ConstTrue}); }
FormulaPtr f_false() { return make({.kind = NodeKind::ConstFalse}); }

FormulaPtr f_pred(int robot, std::vector<double> coeffs) {
    if (robot < 0 || coeffs.empty()) throw Error("predicate: bad robot or empty coefficients");
    return make({.kind = NodeKind::Pred, .robot = robot, .coeffs = std::move(coeffs)});
}

FormulaPtr f_negpred(int robot, std::vector<double> coeffs) {
    if (robot < 0 || coeffs.empty()) throw Error("predicate: bad robot or empty coefficients");
    return make({.kind = NodeKind::NegPred, .robot = robot, .coeffs = std::move(coeffs)});
}

FormulaPtr f_not(FormulaPtr child) {
    return make({.kind = NodeKind::Not, .children = {std::move(child)}});
}

FormulaPtr f_and(std::vector<FormulaPtr> children) {
    if (children.empty()) throw Error("and: needs children");
    if (children.size() == 1) return children.front();
    return make({.kind = NodeKind::And, .children = std::move(children)});
}

FormulaPtr f_or(std::vector<FormulaPtr> children) {
    if (children.empty()) throw Error("or: needs children");
    if (children.size() == 1) return children.front();
    return make({.kind = NodeKind::Or, .children = std::move(children)});
}

FormulaPtr f_count(std::vector<FormulaPtr> children, int min_true) {
    if (min_true < 1 || min_true > static_cast<int>(children.size()))
        throw Error("count: need 1 <= m <= number of children");
    return make({.kind = NodeKind::Count, .min_true = min_true, .children = std::move(children)});
}

FormulaPtr f_always(double a, double b, FormulaPtr child) {
    check_window(a, b);
    return make({.kind = NodeKind::Always, .t_lo = a, .t_hi = b, .children = {std::move(child)}});
}

FormulaPtr f_eventually(double a, double b, FormulaPtr child) {
    check_window(a, b);
    return make(
        {.kind = NodeKind::Eventually, .t_lo = a, .t_hi = b, .children = {std::move(child)}});
}

FormulaPtr f_until(double a, double b, FormulaPtr left, FormulaPtr right) {
    check_window(a, b);
    return make({.kind = NodeKind::Until,
                 .t_lo = a,
                 .t_hi = b,
                 .children = {std::move(left), std::move(right)}});
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind || a->robot != b->robot || a->coeffs != b->coeffs ||
        a->t_lo != b->t_lo || a->t_hi != b->t_hi || a->min_true != b->min_true ||
        a->children.size() != b->children.size())
        return false;
    for (size_t i = 0; i < a->children.size(); ++i)
        if (!equal(a->children[i], b->children[i])) return false;
    return true;
}

namespace {

std::string print_node(const FormulaPtr& f);

std::string wrapped(const FormulaPtr& f, bool need) {
    std::string s = print_node(f);
    return need ? "(" + s + ")" : s;
}

bool looser_than_unary(const FormulaPtr& f) {
    return f->kind == NodeKind::And || f->kind == NodeKind::Or || f->kind == NodeKind::Until;
}

std::string print_pred(const Formula& f) {
    std::string s = "prog(" + std::to_string(f.robot + 1) + ")";
    s += f.kind == NodeKind::Pred ? " >= {" : " < {";
    for (size_t j = 0; j < f.coeffs.size(); ++j) {
        if (j) s += ", ";
        s += std::to_string(j + 1) + ": " + coef_text(f.coeffs[j]);
    }
    return s + "}";
}

std::string print_node(const FormulaPtr& f) {
    switch (f->kind) {
        case NodeKind::ConstTrue:
            return "true";
        case NodeKind::ConstFalse:
            return "false";
        case NodeKind::Pred:
        case NodeKind::NegPred:
            return print_pred(*f);
        case NodeKind::Not:
            return "!" + wrapped(f->children[0], looser_than_unary(f->children[0]));
        case NodeKind::And: {
            std::string s;
            for (size_t i = 0; i < f->children.size(); ++i) {
                if (i) s += " & ";
                const auto& c = f->children[i];
                s += wrapped(c, c->kind == NodeKind::And || c->kind == NodeKind::Or ||
                                    c->kind == NodeKind::Until);
            }
            return s;
        }
        case NodeKind::Or: {
            std::string s;
            for (size_t i = 0; i < f->children.size(); ++i) {
                if (i) s += " | ";
                const auto& c = f->children[i];
                s += wrapped(c, c->kind == NodeKind::Or || c->kind == NodeKind::Until);
            }
            return s;
        }
        case NodeKind::Count: {
            std::string s = "count(" + std::to_string(f->min_true) + ";";
            for (size_t i = 0; i < f->children.size(); ++i) {
                s += i ? ", " : " ";
                s += wrapped(f->children[i], f->children[i]->kind == NodeKind::Until);
            }
            return s + ")";
        }
        case NodeKind::Always:
            return "G" + window_text(f->t_lo, f->t_hi) + " " +
                   wrapped(f->children[0], looser_than_unary(f->children[0]));
        case NodeKind::Eventually:
            return "F" + window_text(f->t_lo, f->t_hi) + " " +
                   wrapped(f->children[0], looser_than_unary(f->children[0]));
        case NodeKind::Until: {
            std::string l = wrapped(f->children[0], f->children[0]->kind == NodeKind::Until);
            std::string r = wrapped(f->children[1], f->children[1]->kind == NodeKind::Until);
            return l + " U" + window_text(f->t_lo, f->t_hi) + " " + r;
        }
    }
    throw Error("print: unknown node kind");
}

FormulaPtr negate(const FormulaPtr& f);

FormulaPtr to_nnf(const FormulaPtr& f) {
    switch (f->kind) {
        case NodeKind::ConstTrue:
        case NodeKind::ConstFalse:
        case NodeKind::Pred:
        case NodeKind::NegPred:
            return f;
        case NodeKind::Not:
            return negate(f->children[0]);
        default: {
            Formula out = *f;
            out.children.clear();
            for (const auto& c : f->children) out.children.push_back(to_nnf(c));
            return std::make_shared<const Formula>(std::move(out));
        }
    }
}

FormulaPtr negate(const FormulaPtr& f) {
    switch (f->kind) {
        case NodeKind::ConstTrue:
            return f_false();
        case NodeKind::ConstFalse:
            return f_true();
        case NodeKind::Pred:
            return f_negpred(f->robot, f->coeffs);
        case NodeKind::NegPred:
            return f_pred(f->robot, f->coeffs);
        case NodeKind::Not:
            return to_nnf(f->children[0]);
        case NodeKind::And: {
            std::vector<FormulaPtr> cs;
            for (const auto& c : f->children) cs.push_back(negate(c));
            return f_or(std::move(cs));
        }
        case NodeKind::Or: {
            std::vector<FormulaPtr> cs;
            for (const auto& c : f->children) cs.push_back(negate(c));
            return f_and(std::move(cs));
        }
        case NodeKind::Count: {
            // not(at least m of L) == at least L - m + 1 of the negations
            std::vector<FormulaPtr> cs;
            for (const auto& c : f->children) cs.push_back(negate(c));
            int L = static_cast<int>(cs.size());
            return f_count(std::move(cs), L - f->min_true + 1);
        }
        case NodeKind::Always:
            return f_eventually(f->t_lo, f->t_hi, negate(f->children[0]));
        case NodeKind::Eventually:
            return f_always(f->t_lo, f->t_hi, negate(f->children[0]));
        case NodeKind::Until:
            throw UnsupportedNegationError("negated until is not expressible in the NNF syntax");
    }
    throw Error("negate: unknown node kind");
}

}  // namespace

std::string print(const FormulaPtr& f) { return print_node(f); }

FormulaPtr nnf(const FormulaPtr& f) { return to_nnf(f); }

bool contains_not(const FormulaPtr& f) {
    if (f->kind == NodeKind::Not) return true;
    for (const auto& c : f->children)
        if (contains_not(c)) return true;
    return false;
}

int operator_count(const FormulaPtr& f) {
    bool leaf = f->kind == NodeKind::ConstTrue || f->kind == NodeKind::ConstFalse ||
                f->kind == NodeKind::Pred || f->kind == NodeKind::NegPred;
    int n = leaf ? 0 : 1;
    for (const auto& c : f->children) n += operator_count(c);
    return n;
}

}  // namespace rpstl
