#pragma once

#include <string>
#include <vector>

#include "tensorcalc/expr.hpp"

namespace tc {

enum class Relation { Ge, Gt, Le, Lt, Eq };

struct Predicate {
    std::string symbol;
    Relation rel = Relation::Ge;
    Expr bound;

    friend bool operator==(const Predicate& a, const Predicate& b) {
        return a.symbol == b.symbol && a.rel == b.rel && a.bound == b.bound;
    }
};

struct Assumptions {
    bool assumeReal = true;
    std::vector<Predicate> predicates;

    // Appends unless already present.
    void add(const Predicate& p);
    std::string to_string() const;

    friend bool operator==(const Assumptions& a, const Assumptions& b) {
        return a.assumeReal == b.assumeReal && a.predicates == b.predicates;
    }
};

// Parses "r >= 0", "M>0", "x ≤ 1", "k == 1".
Predicate parse_predicate(std::string_view text);
std::string relation_text(Relation r);

// Sign oracle used by the simplifier: true only when provable from structure
// and assumptions.
bool provably_nonnegative(const Expr& e, const Assumptions& a);
bool provably_nonpositive(const Expr& e, const Assumptions& a);

Expr simplify(const Expr& e, const Assumptions& a = {});

// Canonical form is literally zero, or numeric evaluation vanishes at
// `samples` random admissible points.
bool is_zero(const Expr& e, const Assumptions& a = {}, int samples = 20);

}  // namespace tc
