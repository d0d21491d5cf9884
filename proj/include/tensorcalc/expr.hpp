#pragma once

// Immutable symbolic expression trees.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace tc {

using Rational = mpq_class;

enum class Kind : std::uint8_t {
    Symbol,
    Integer,
    Rational,
    Sum,
    Product,
    Power,
    FuncApp,
    Deriv,
    DeferredD,
    Abs,
};

class Expr;

struct Node {
    Kind kind;
    std::size_t hash = 0;
    Rational value;            // Integer, Rational
    std::string name;          // Symbol; FuncApp/Deriv head; DeferredD parameter
    std::vector<Expr> args;    // children
    std::vector<int> orders;   // Deriv: per-slot orders; DeferredD: {order}
};

class Expr {
public:
    Expr();  // integer 0
    Expr(long v);
    Expr(int v) : Expr(static_cast<long>(v)) {}
    Expr(const Rational& q);

    static Expr symbol(std::string name);
    static Expr func(std::string name, std::vector<Expr> args);
    static Expr deriv(std::string name, std::vector<int> orders, std::vector<Expr> args);
    static Expr deferred(Expr inner, std::string param, int order = 1);
    static Expr abs(Expr inner);
    // Light construction: flattens nested sums/products, folds numbers,
    // drops neutral elements. No further rewriting.
    static Expr sum(std::vector<Expr> terms);
    static Expr product(std::vector<Expr> factors);
    static Expr power(Expr base, Expr exponent);

    Kind kind() const { return node_->kind; }
    const Node& node() const { return *node_; }
    std::size_t hash() const { return node_->hash; }

    bool is_number() const { return kind() == Kind::Integer || kind() == Kind::Rational; }
    bool is_zero_literal() const { return is_number() && sgn(node_->value) == 0; }
    bool is_one_literal() const { return is_number() && node_->value == 1; }
    bool is_symbol() const { return kind() == Kind::Symbol; }
    bool is_symbol(std::string_view n) const { return is_symbol() && node_->name == n; }

    const Rational& value() const { return node_->value; }
    const std::string& name() const { return node_->name; }
    const std::vector<Expr>& args() const { return node_->args; }
    const std::vector<int>& orders() const { return node_->orders; }
    std::size_t size() const { return node_->args.size(); }
    const Expr& operator[](std::size_t i) const { return node_->args[i]; }

    friend bool operator==(const Expr& a, const Expr& b);
    friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

private:
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static Expr make(Node n);
    std::shared_ptr<const Node> node_;
};

// Total canonical order: symbols by name, then constants, then compound
// nodes by (kind, arity, children).
int compare(const Expr& a, const Expr& b);

struct ExprLess {
    bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};
struct ExprHash {
    std::size_t operator()(const Expr& e) const { return e.hash(); }
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr pow(const Expr& base, const Expr& exponent);
Expr sqrt(const Expr& e);
Expr rational(long num, long den);

// Free symbols, including those inside function arguments.
std::set<std::string> free_symbols(const Expr& e);
// Heads of abstract and builtin function applications (FuncApp and Deriv).
std::set<std::string> function_heads(const Expr& e);
bool contains(const Expr& e, const Expr& sub);
bool has_deferred(const Expr& e);
bool is_builtin_function(std::string_view name);

// Visit every node (pre-order); returning false prunes the subtree.
void walk(const Expr& e, const std::function<bool(const Expr&)>& fn);

}  // namespace tc
