#pragma once

// Expression text: parsing, plain/LaTeX rendering, UTF-8 helpers.

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tensorcalc/expr.hpp"

namespace tc {

enum class Style { Plain, Latex };

struct DisplayOpts {
    // Functions printed without arguments; their derivatives use the
    // ∂-subscript shorthand.
    std::set<std::string> suppressArgs;
    // When non-empty, single-argument functions of this symbol print with
    // dot accents (ṫ, ẗ).
    std::string curveParameter;
};

Expr parse_expr(std::string_view text);

std::string format_expr(const Expr& e, Style style = Style::Plain, const DisplayOpts& opts = {});

// LaTeX spelling of a symbol name (Greek letters become commands).
std::string latex_name(std::string_view name);

// Splits UTF-8 text into code points, each returned as its own string.
std::vector<std::string> utf8_chars(std::string_view text);

std::string superscript_digits(long n);

}  // namespace tc
