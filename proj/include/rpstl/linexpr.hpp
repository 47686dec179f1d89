#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rpstl/world.hpp"

namespace rpstl {

/// Linear expression over pooled variables: sum of coef * var + constant.
struct LinExpr {
    std::vector<std::pair<int, double>> terms;
    double constant = 0.0;

    LinExpr() = default;
    explicit LinExpr(double c) : constant(c) {}

    void add(int var, double coef);
    LinExpr& operator+=(const LinExpr& o);
    LinExpr operator*(double s) const;

    /// Sort by variable, combine duplicates, drop zero coefficients.
    void canonicalize();
    double value(const std::vector<double>& x) const;
};

enum class VarKind { Continuous, Binary };

struct Variable {
    std::string name;
    VarKind kind = VarKind::Continuous;
    double lb = 0.0;
    double ub = 0.0;
};

class VarPool {
  public:
    int add(const std::string& name, VarKind kind, double lb, double ub);
    const Variable& operator[](int id) const;
    int size() const { return static_cast<int>(vars_.size()); }
    const std::vector<Variable>& all() const { return vars_; }

  private:
    std::vector<Variable> vars_;
};

}  // namespace rpstl
