#pragma once

// Floating-point evaluation of expressions.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "tensorcalc/expr.hpp"

namespace tc {

using FuncImpl = std::function<double(const std::vector<double>&)>;

// Derivatives of supplied functions are taken by central differences.
double eval_numeric(const Expr& e, const std::map<std::string, double>& bindings,
                    const std::map<std::string, FuncImpl>& funcs = {});

}  // namespace tc
