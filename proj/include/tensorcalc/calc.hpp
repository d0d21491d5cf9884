#pragma once

// Tensor formula language: parsing and evaluation into registered tensors.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tensorcalc/registry.hpp"

namespace tc {

struct FormulaSum;

struct Operand {
    enum class Kind { Tensor, Partial, Covariant, Group };
    Kind kind = Kind::Tensor;
    std::string id;                    // Tensor
    std::vector<std::string> letters;  // Tensor: one per slot; Partial/Covariant: one
    std::shared_ptr<FormulaSum> group; // Group: parenthesized sub-formula
};

// coefficient × (operand . operand . ...); an empty chain is a pure scalar.
struct FormulaTerm {
    Expr coefficient = Expr(1L);
    std::vector<Operand> chain;
};

struct FormulaSum {
    std::vector<FormulaTerm> terms;
};

struct Formula {
    FormulaSum body;
    std::optional<std::string> targetId;
    std::optional<std::vector<std::string>> targetLetters;
    std::optional<std::string> symbol;
};

// Grammar, with optional leading target and trailing symbol:
//   [ "ID" [ "[" "letters" "]" ] "," ] formula [ "," "symbol" ]
// Operands: "ID"["letters"], PartialD["μ"], CovariantD["μ"], ( formula ).
// Dots contract, juxtaposition or * multiplies by scalars.
Formula parse_formula(std::string_view text);

// Evaluates and registers the result; returns its ID.
std::string evaluate(Registry& reg, const Formula& f);
std::string calc(Registry& reg, std::string_view text);

// Splits an index string into letters.
std::vector<std::string> index_letters(std::string_view s);

}  // namespace tc
