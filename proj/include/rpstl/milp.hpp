#pragma once

#include <iosfwd>

#include "rpstl/lccf.hpp"

namespace rpstl {

struct Constraint {
    LinExpr expr;  // terms only; constant folded into rhs
    char sense;    // '>', '<', '='
    double rhs;
};

struct MilpModel {
    std::string name = "rpstl";
    VarPool vars;
    std::vector<Constraint> rows;
    LinExpr objective;  // minimize
    bool trivially_infeasible = false;

    int binary_count() const;
    void add_row(LinExpr expr, char sense, double rhs);
};

struct EliminateStats {
    int plain_atoms = 0;     // atoms emitted (guarded or not)
    int or_rows = 0;         // one per Or node
    int count_rows = 0;      // one per Count node
    int proxy_links = 0;     // reference rows to shared-node proxies
    int binaries_added = 0;  // fresh binaries introduced by the elimination
    int total_rows() const { return plain_atoms + or_rows + count_rows + proxy_links; }
};

/// Big-M elimination of an LCCF into mixed-integer linear constraints.
/// Disjunction and counting nodes get fresh indicator binaries; an atom under
/// active guards Gamma is relaxed by bigM * sum(1 - beta). Shared nodes are
/// translated once behind a proxy binary. The result appends to `model`.
void eliminate(const LccfPtr& root, double big_m, MilpModel& model,
               EliminateStats* stats = nullptr);

/// LP-format text (Minimize / Subject To / Bounds / Binaries / End),
/// deterministic ordering, 17 significant digits.
void export_lp(const MilpModel& model, std::ostream& os);
std::string export_lp_string(const MilpModel& model);

}  // namespace rpstl
