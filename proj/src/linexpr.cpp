#include "rpstl/linexpr.hpp"

#include <algorithm>
#include <cmath>

namespace rpstl {

void LinExpr::add(int var, double coef) {
    if (coef == 0.0) return;
    terms.emplace_back(var, coef);
}

LinExpr& LinExpr::operator+=(const LinExpr& o) {
    terms.insert(terms.end(), o.terms.begin(), o.terms.end());
    constant += o.constant;
    return *this;
}

LinExpr LinExpr::operator*(double s) const {
    LinExpr out;
    out.constant = constant * s;
    out.terms.reserve(terms.size());
    for (auto [v, c] : terms) out.terms.emplace_back(v, c * s);
    return out;
}

void LinExpr::canonicalize() {
    std::sort(terms.begin(), terms.end());
    std::vector<std::pair<int, double>> out;
    for (auto [v, c] : terms) {
        if (!out.empty() && out.back().first == v)
            out.back().second += c;
        else
            out.emplace_back(v, c);
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](auto& t) { return t.second == 0.0; }),
              out.end());
    terms = std::move(out);
}

double LinExpr::value(const std::vector<double>& x) const {
    double v = constant;
    for (auto [var, c] : terms) v += c * x.at(var);
    return v;
}

int VarPool::add(const std::string& name, VarKind kind, double lb, double ub) {
    if (lb > ub) throw Error("variable " + name + ": lb > ub");
    vars_.push_back({name, kind, lb, ub});
    return static_cast<int>(vars_.size()) - 1;
}

const Variable& VarPool::operator[](int id) const { return vars_.at(id); }

}  // namespace rpstl
