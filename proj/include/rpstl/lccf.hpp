#pragma once

#include <memory>

#include "rpstl/linexpr.hpp"

namespace rpstl {

enum class LccfKind { ConstTrue, ConstFalse, Atom, And, Or, Count };

struct Lccf;
using LccfPtr = std::shared_ptr<const Lccf>;

/// Linear and counting constraints formula: atoms of the form
/// linear-expression >= 0 under conjunction, disjunction, and counting.
/// Shared subtrees (DAG nodes) are translated once by the eliminator.
struct Lccf {
    LccfKind kind = LccfKind::ConstTrue;
    LinExpr expr;       // Atom
    int min_true = 0;   // Count
    std::vector<LccfPtr> children;
};

LccfPtr lccf_true();
LccfPtr lccf_false();
LccfPtr lccf_atom(LinExpr expr);
// The combiners fold constants and collapse trivial arities.
LccfPtr lccf_and(std::vector<LccfPtr> children);
LccfPtr lccf_or(std::vector<LccfPtr> children);
LccfPtr lccf_count(std::vector<LccfPtr> children, int min_true);

/// Distinct atom nodes in the DAG.
int lccf_atom_count(const LccfPtr& root);

/// Direct recursive evaluation under an assignment (test oracle for the
/// big-M elimination).
bool lccf_eval(const LccfPtr& node, const std::vector<double>& x, double tol);

}  // namespace rpstl
