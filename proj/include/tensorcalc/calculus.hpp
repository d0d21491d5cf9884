#pragma once

// Differentiation, substitution and deferred-derivative activation.

#include <string>
#include <vector>

#include "tensorcalc/expr.hpp"
#include "tensorcalc/simplify.hpp"

namespace tc {

Expr diff(const Expr& e, const std::string& symbol);

// A rule either replaces an exact subexpression (usually a symbol) or, when
// `params` is set, replaces every application of the function `head` by
// `body` with the parameters bound to the call's arguments. An empty
// parameter list with a head rule gives a constant closure such as f -> 0.
struct SubstitutionRule {
    Expr target;
    Expr replacement;
    std::string head;
    std::vector<std::string> params;

    static SubstitutionRule replace(Expr target, Expr replacement) {
        return SubstitutionRule{std::move(target), std::move(replacement), {}, {}};
    }
    static SubstitutionRule function(std::string head, std::vector<std::string> params, Expr body) {
        return SubstitutionRule{Expr(), std::move(body), std::move(head), std::move(params)};
    }
    bool is_function_rule() const { return !head.empty(); }
};

// Single-pass simultaneous substitution; sums are rebuilt with like terms
// merged.
Expr substitute(const Expr& e, const std::vector<SubstitutionRule>& rules);

// Replaces every deferred derivative by the actual total derivative.
Expr activate_deferred(const Expr& e);
// activate_deferred followed by simplify.
Expr activate(const Expr& e, const Assumptions& a = {});

// Sum with identical terms merged by adding their numeric coefficients.
Expr collect_terms(const std::vector<Expr>& terms);

}  // namespace tc
