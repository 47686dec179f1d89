#include "rpstl/lccf.hpp"

namespace rpstl {

namespace {
LccfPtr make(Lccf node) { return std::make_shared<const Lccf>(std::move(node)); }
}  // namespace

LccfPtr lccf_true() { return make({.kind = LccfKind::ConstTrue}); }
LccfPtr lccf_false() { return make({.kind = LccfKind::ConstFalse}); }

LccfPtr lccf_atom(LinExpr expr) {
    expr.canonicalize();
    return make({.kind = LccfKind::Atom, .expr = std::move(expr)});
}

LccfPtr lccf_and(std::vector<LccfPtr> children) {
    std::vector<LccfPtr> kept;
    for (auto& c : children) {
        if (c->kind == LccfKind::ConstTrue) continue;
        if (c->kind == LccfKind::ConstFalse) return lccf_false();
        kept.push_back(std::move(c));
    }
    if (kept.empty()) return lccf_true();
    if (kept.size() == 1) return kept.front();
    return make({.kind = LccfKind::And, .children = std::move(kept)});
}

LccfPtr lccf_or(std::vector<LccfPtr> children) {
    std::vector<LccfPtr> kept;
    for (auto& c : children) {
        if (c->kind == LccfKind::ConstFalse) continue;
        if (c->kind == LccfKind::ConstTrue) return lccf_true();
        kept.push_back(std::move(c));
    }
    if (kept.empty()) return lccf_false();
    if (kept.size() == 1) return kept.front();
    return make({.kind = LccfKind::Or, .children = std::move(kept)});
}

LccfPtr lccf_count(std::vector<LccfPtr> children, int min_true) {
    // constant children fold into the threshold
    std::vector<LccfPtr> kept;
    for (auto& c : children) {
        if (c->kind == LccfKind::ConstTrue) {
            --min_true;
            continue;
        }
        if (c->kind == LccfKind::ConstFalse) continue;
        kept.push_back(std::move(c));
    }
    if (min_true <= 0) return lccf_true();
    if (min_true > static_cast<int>(kept.size())) return lccf_false();
    if (min_true == static_cast<int>(kept.size())) return lccf_and(std::move(kept));
    if (min_true == 1) return lccf_or(std::move(kept));
    return make({.kind = LccfKind::Count, .min_true = min_true, .children = std::move(kept)});
}

int lccf_atom_count(const LccfPtr& root) {
    int n = 0;
    std::vector<const Lccf*> stack{root.get()};
    std::vector<const Lccf*> seen;
    while (!stack.empty()) {
        const Lccf* node = stack.back();
        stack.pop_back();
        if (std::find(seen.begin(), seen.end(), node) != seen.end()) continue;
        seen.push_back(node);
        if (node->kind == LccfKind::Atom) ++n;
        for (const auto& c : node->children) stack.push_back(c.get());
    }
    return n;
}

bool lccf_eval(const LccfPtr& node, const std::vector<double>& x, double tol) {
    switch (node->kind) {
        case LccfKind::ConstTrue:
            return true;
        case LccfKind::ConstFalse:
            return false;
        case LccfKind::Atom:
            return node->expr.value(x) >= -tol;
        case LccfKind::And:
            for (const auto& c : node->children)
                if (!lccf_eval(c, x, tol)) return false;
            return true;
        case LccfKind::Or:
            for (const auto& c : node->children)
                if (lccf_eval(c, x, tol)) return true;
            return false;
        case LccfKind::Count: {
            int n = 0;
            for (const auto& c : node->children) n += lccf_eval(c, x, tol) ? 1 : 0;
            return n >= node->min_true;
        }
    }
    throw Error("lccf_eval: unknown node kind");
}

}  // namespace rpstl
