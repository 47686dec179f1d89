#pragma once

#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "rpstl/world.hpp"

namespace rpstl {

struct UnsupportedNegationError : Error {
    using Error::Error;
};

enum class NodeKind {
    ConstTrue,
    ConstFalse,
    Pred,     // sigma_i - b^T z_i >= 0
    NegPred,  // sigma_i - b^T z_i < 0
    Not,      // pre-NNF only
    And,
    Or,
    Count,  // at least min_true children hold
    Always,
    Eventually,
    Until,
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Immutable RP-STL AST node. Coefficient entries may be +/-infinity, the
/// sentinels resolved to the encoder's big-M constant at encode time.
struct Formula {
    NodeKind kind = NodeKind::ConstTrue;
    int robot = -1;               // Pred/NegPred: zero-based robot index
    std::vector<double> coeffs;   // Pred/NegPred: length M_i
    double t_lo = 0.0, t_hi = 0.0;  // temporal window [a, b]
    int min_true = 0;             // Count
    std::vector<FormulaPtr> children;

    bool is_temporal() const {
        return kind == NodeKind::Always || kind == NodeKind::Eventually || kind == NodeKind::Until;
    }
};

constexpr double kInf = std::numeric_limits<double>::infinity();

FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr f_pred(int robot, std::vector<double> coeffs);
FormulaPtr f_negpred(int robot, std::vector<double> coeffs);
FormulaPtr f_not(FormulaPtr child);
FormulaPtr f_and(std::vector<FormulaPtr> children);
FormulaPtr f_or(std::vector<FormulaPtr> children);
FormulaPtr f_count(std::vector<FormulaPtr> children, int min_true);
FormulaPtr f_always(double a, double b, FormulaPtr child);
FormulaPtr f_eventually(double a, double b, FormulaPtr child);
FormulaPtr f_until(double a, double b, FormulaPtr left, FormulaPtr right);

bool equal(const FormulaPtr& a, const FormulaPtr& b);

/// Concrete-grammar text; parse(print(f)) == f.
std::string print(const FormulaPtr& f);

/// Negation normal form: no Not nodes remain, negation appears only as
/// NegPred. Negated Until raises UnsupportedNegationError.
FormulaPtr nnf(const FormulaPtr& f);

bool contains_not(const FormulaPtr& f);

/// Number of operator nodes (everything except predicate/constant leaves).
int operator_count(const FormulaPtr& f);

}  // namespace rpstl
