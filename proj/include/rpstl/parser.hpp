#pragma once

#include "rpstl/formula.hpp"

namespace rpstl {

struct ParseError : Error {
    ParseError(int line, int col, const std::string& msg)
        : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
          line(line),
          col(col) {}
    int line;
    int col;
};

/// Parse RP-STL concrete syntax. `path_counts[i]` is M_i for (zero-based)
/// robot i; formulas refer to robots and paths with one-based indices.
FormulaPtr parse(const std::string& text, const std::vector<int>& path_counts);

}  // namespace rpstl
