#include "tensorcalc/calc.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "tensorcalc/calculus.hpp"
#include "tensorcalc/curvature.hpp"
#include "tensorcalc/error.hpp"
#include "tensorcalc/text.hpp"
#include "tensorcalc/transform.hpp"

namespace tc {

std::vector<std::string> index_letters(std::string_view s) {
    std::vector<std::string> out;
    for (auto& ch : utf8_chars(s))
        if (!(ch.size() == 1 && std::isspace(static_cast<unsigned char>(ch[0])))) out.push_back(ch);
    return out;
}

namespace {

[[noreturn]] void syntax(const std::string& msg) { throw Error(Errc::Syntax, "formula syntax error: " + msg); }

// ---- lexer

enum class Tok { Str, Ident, Num, Op, End };

struct Token {
    Tok kind;
    std::string text;
};

bool is_op(const std::string& ch) {
    static const std::set<std::string> ops{"+", "-", "−", "*", "·", "×", "/", "^", ".", ",",
                                           "(", ")", "[", "]"};
    return ops.count(ch) > 0;
}

bool is_ident_char(const std::string& ch) {
    if (ch.size() > 1) return !is_op(ch);
    unsigned char c = static_cast<unsigned char>(ch[0]);
    return std::isalnum(c) || c == '_';
}

std::vector<Token> lex(std::string_view text) {
    auto chars = utf8_chars(text);
    std::vector<Token> out;
    std::size_t i = 0;
    auto digit = [&](std::size_t k) {
        return k < chars.size() && chars[k].size() == 1 && std::isdigit(static_cast<unsigned char>(chars[k][0]));
    };
    while (i < chars.size()) {
        const std::string& ch = chars[i];
        if (ch.size() == 1 && std::isspace(static_cast<unsigned char>(ch[0]))) {
            ++i;
        } else if (ch == "\"" || ch == "“" || ch == "”") {
            std::string s;
            ++i;
            while (i < chars.size() && chars[i] != "\"" && chars[i] != "”" && chars[i] != "“") s += chars[i++];
            if (i == chars.size()) syntax("unterminated string");
            ++i;
            out.push_back({Tok::Str, s});
        } else if (digit(i)) {
            std::string s;
            while (digit(i)) s += chars[i++];
            if (i + 1 < chars.size() && chars[i] == "." && digit(i + 1))
                syntax("decimal literals are not supported; use exact rationals");
            out.push_back({Tok::Num, s});
        } else if (is_op(ch)) {
            out.push_back({Tok::Op, ch == "−" ? "-" : (ch == "·" || ch == "×") ? "*" : ch});
            ++i;
        } else if (is_ident_char(ch)) {
            std::string s;
            while (i < chars.size() && is_ident_char(chars[i])) s += chars[i++];
            out.push_back({Tok::Ident, s});
        } else {
            throw Error(Errc::UnknownCharacter, "unknown character '" + ch + "' in formula");
        }
    }
    out.push_back({Tok::End, ""});
    return out;
}

// ---- parser

const std::set<std::string> kPartialHeads{"PartialD", "TPartialD", "TPartial"};
const std::set<std::string> kCovariantHeads{"CovariantD", "TCovariantD"};

Expr scalar_of(const FormulaSum& s) {
    std::vector<Expr> terms;
    for (const auto& t : s.terms) terms.push_back(t.coefficient);
    return Expr::sum(std::move(terms));
}

bool is_scalar(const FormulaSum& s) {
    return std::all_of(s.terms.begin(), s.terms.end(), [](const FormulaTerm& t) { return t.chain.empty(); });
}

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(lex(text)) {}

    Formula parse() {
        Formula f;
        std::size_t save = pos_;
        if (peek().kind == Tok::Str) {
            std::string id = next().text;
            std::optional<std::vector<std::string>> letters;
            if (accept("[")) {
                if (peek().kind != Tok::Str) syntax("expected an index string");
                letters = index_letters(next().text);
                expect("]");
            }
            if (accept(",")) {
                f.targetId = id;
                f.targetLetters = letters;
            } else {
                pos_ = save;
            }
        }
        f.body = parse_sum();
        if (accept(",")) {
            if (peek().kind != Tok::Str && peek().kind != Tok::Ident) syntax("expected a result symbol");
            f.symbol = next().text;
        }
        if (peek().kind != Tok::End) syntax("unexpected '" + peek().text + "'");
        if (is_scalar(f.body)) syntax("the formula contains no tensors");
        return f;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;

    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    bool at_op(const char* s) const { return peek().kind == Tok::Op && peek().text == s; }
    bool accept(const char* s) {
        if (!at_op(s)) return false;
        ++pos_;
        return true;
    }
    void expect(const char* s) {
        if (!accept(s)) syntax(std::string("expected '") + s + "'");
    }

    FormulaSum parse_sum() {
        FormulaSum s;
        Expr sign(1L);
        if (accept("-")) sign = Expr(-1L);
        else accept("+");
        while (true) {
            FormulaTerm t = parse_term();
            t.coefficient = sign * t.coefficient;
            s.terms.push_back(std::move(t));
            if (accept("+")) sign = Expr(1L);
            else if (accept("-")) sign = Expr(-1L);
            else break;
        }
        return s;
    }

    bool starts_factor() const {
        const Token& t = peek();
        return t.kind == Tok::Str || t.kind == Tok::Ident || t.kind == Tok::Num || (t.kind == Tok::Op && t.text == "(");
    }

    static void combine(FormulaTerm& acc, FormulaTerm f) {
        acc.coefficient = acc.coefficient * f.coefficient;
        if (f.chain.empty()) return;
        if (!acc.chain.empty()) syntax("two tensor expressions multiplied; use '.' to contract");
        acc.chain = std::move(f.chain);
    }

    FormulaTerm parse_term() {
        FormulaTerm acc;
        combine(acc, parse_factor());
        while (true) {
            if (accept("*")) {
                combine(acc, parse_factor());
            } else if (accept("/")) {
                FormulaTerm d = parse_factor();
                if (!d.chain.empty()) syntax("cannot divide by a tensor");
                acc.coefficient = acc.coefficient / d.coefficient;
            } else if (starts_factor()) {
                combine(acc, parse_factor());
            } else {
                return acc;
            }
        }
    }

    Expr parse_scalar_unary() {
        if (accept("-")) return -parse_scalar_unary();
        accept("+");
        FormulaTerm f = parse_factor();
        if (!f.chain.empty()) syntax("tensor in a scalar position");
        return f.coefficient;
    }

    // A dot-chain of operands, or a scalar atom with an optional power.
    FormulaTerm parse_factor() {
        FormulaTerm t;
        std::optional<Operand> first = parse_operand(t.coefficient);
        if (!first) {
            if (accept("^")) t.coefficient = pow(t.coefficient, parse_scalar_unary());
            if (at_op(".")) syntax("a scalar cannot be contracted; use '*' or juxtaposition");
            return t;
        }
        t.chain.push_back(std::move(*first));
        while (accept(".")) {
            Expr dummy;
            std::optional<Operand> op = parse_operand(dummy);
            if (!op) syntax("expected a tensor after '.'");
            t.chain.push_back(std::move(*op));
        }
        if (at_op("^")) syntax("tensors cannot be raised to a power");
        return t;
    }

    std::vector<Expr> parse_args(const char* close) {
        std::vector<Expr> args;
        if (accept(close)) return args;
        while (true) {
            FormulaSum s = parse_sum();
            if (!is_scalar(s)) syntax("tensor inside a function argument");
            args.push_back(scalar_of(s));
            if (accept(close)) return args;
            expect(",");
        }
    }

    static Expr make_func(std::string name, std::vector<Expr> args) {
        static const std::map<std::string, std::string> capitals{
            {"Sqrt", "sqrt"}, {"Sin", "sin"}, {"Cos", "cos"}, {"Tan", "tan"}, {"Exp", "exp"},
            {"Log", "log"},   {"Abs", "abs"}, {"Cot", "cot"}, {"Sec", "sec"}, {"Csc", "csc"}};
        if (auto it = capitals.find(name); it != capitals.end()) name = it->second;
        if (name == "sqrt" || name == "abs") {
            if (args.size() != 1) syntax(name + " takes one argument");
            return name == "sqrt" ? sqrt(args[0]) : Expr::abs(args[0]);
        }
        return Expr::func(name, std::move(args));
    }

    // Returns an operand, or nullopt after storing a scalar atom in `scalar`.
    std::optional<Operand> parse_operand(Expr& scalar) {
        const Token& t = peek();
        if (t.kind == Tok::Str) {
            Operand op;
            op.id = next().text;
            expect("[");
            if (peek().kind != Tok::Str) syntax("expected an index string for " + op.id);
            op.letters = index_letters(next().text);
            expect("]");
            return op;
        }
        if (t.kind == Tok::Num) {
            scalar = Expr(Rational(mpz_class(next().text)));
            return std::nullopt;
        }
        if (t.kind == Tok::Ident) {
            std::string name = next().text;
            bool partial = kPartialHeads.count(name) > 0, covariant = kCovariantHeads.count(name) > 0;
            if (partial || covariant) {
                Operand op;
                op.kind = partial ? Operand::Kind::Partial : Operand::Kind::Covariant;
                expect("[");
                if (peek().kind != Tok::Str) syntax("expected an index string for " + name);
                op.letters = index_letters(next().text);
                if (op.letters.size() != 1) syntax(name + " takes exactly one index letter");
                expect("]");
                return op;
            }
            if (accept("[")) {
                scalar = make_func(name, parse_args("]"));
            } else if (accept("(")) {
                scalar = make_func(name, parse_args(")"));
            } else {
                scalar = Expr::symbol(name);
            }
            return std::nullopt;
        }
        if (accept("(")) {
            FormulaSum s = parse_sum();
            expect(")");
            if (is_scalar(s)) {
                scalar = scalar_of(s);
                return std::nullopt;
            }
            Operand op;
            op.kind = Operand::Kind::Group;
            op.group = std::make_shared<FormulaSum>(std::move(s));
            return op;
        }
        if (t.kind == Tok::End) syntax("unexpected end of formula");
        syntax("unexpected '" + t.text + "'");
    }
};

// ---- static checks

std::vector<std::string> free_letters(const FormulaSum& s);

std::map<std::string, int> term_letter_counts(const FormulaTerm& t) {
    std::map<std::string, int> counts;
    for (const auto& op : t.chain) {
        if (op.kind == Operand::Kind::Group) {
            for (const auto& l : free_letters(*op.group)) ++counts[l];
        } else {
            for (const auto& l : op.letters) ++counts[l];
        }
    }
    for (const auto& [l, c] : counts)
        if (c > 2) throw Error(Errc::TripleIndex, "the index " + l + " appears more than twice in one term");
    return counts;
}

std::vector<std::string> free_letters(const FormulaSum& s) {
    std::vector<std::string> first;
    for (std::size_t k = 0; k < s.terms.size(); ++k) {
        auto counts = term_letter_counts(s.terms[k]);
        std::vector<std::string> free;
        for (const auto& op : s.terms[k].chain) {
            std::vector<std::string> ls = op.kind == Operand::Kind::Group ? free_letters(*op.group) : op.letters;
            for (const auto& l : ls)
                if (counts[l] == 1) free.push_back(l);
        }
        if (k == 0) {
            first = free;
        } else if (std::set<std::string>(free.begin(), free.end()) !=
                   std::set<std::string>(first.begin(), first.end())) {
            throw Error(Errc::FreeIndexMismatch, "all terms must have the same free indices up to permutation");
        }
    }
    return first;
}

void collect_refs(const FormulaSum& s, std::vector<const Operand*>& out) {
    for (const auto& t : s.terms)
        for (const auto& op : t.chain) {
            if (op.kind == Operand::Kind::Tensor) out.push_back(&op);
            if (op.kind == Operand::Kind::Group) collect_refs(*op.group, out);
        }
}

void check_coordinate_addition(const Registry& reg, const FormulaSum& s) {
    for (const auto& t : s.terms)
        for (const auto& op : t.chain) {
            if (op.kind == Operand::Kind::Group) check_coordinate_addition(reg, *op.group);
            if (s.terms.size() > 1 && t.chain.size() == 1 && op.kind == Operand::Kind::Tensor &&
                reg.get(op.id).role == Role::Coordinates)
                throw Error(Errc::CoordinateAddition, "coordinates do not transform like tensors and cannot be added");
        }
}

// ---- evaluation

struct Value {
    Components c;
    std::vector<std::string> letters;
    IndexConfig pos;
    std::size_t rank() const { return letters.size(); }
};

class Evaluator {
public:
    Evaluator(Registry& reg, std::string coords, std::optional<std::string> metric)
        : reg_(reg), coords_(std::move(coords)), metric_(std::move(metric)) {
        xs_ = reg_.coords(coords_).coordSymbols;
        n_ = xs_.size();
    }

    Value sum(const FormulaSum& s) {
        Value first;
        for (std::size_t k = 0; k < s.terms.size(); ++k) {
            Value v = term(s.terms[k]);
            if (k == 0) {
                first = std::move(v);
                continue;
            }
            v = permute(std::move(v), first.letters);
            for (std::size_t i = 0; i < v.rank(); ++i)
                if (v.pos[i] != first.pos[i]) v = flip(std::move(v), i);
            for (std::size_t i = 0; i < first.c.size(); ++i) first.c[i] = first.c[i] + v.c[i];
        }
        reg_.simplify_all(first.c, false);
        return first;
    }

    Value permute(Value v, const std::vector<std::string>& order) {
        if (v.letters == order) return v;
        const std::size_t r = v.rank();
        std::vector<std::size_t> from(r);
        for (std::size_t i = 0; i < r; ++i) {
            auto it = std::find(v.letters.begin(), v.letters.end(), order[i]);
            if (it == v.letters.end())
                throw Error(Errc::FreeIndexMismatch, "all terms must have the same free indices up to permutation");
            from[i] = static_cast<std::size_t>(it - v.letters.begin());
        }
        Value out;
        out.letters = order;
        out.c.resize(v.c.size());
        for (std::size_t i = 0; i < r; ++i) out.pos.push_back(v.pos[from[i]]);
        for (std::size_t f = 0; f < v.c.size(); ++f) {
            auto idx = unflatten(f, n_, r);
            std::vector<std::size_t> old(r);
            for (std::size_t i = 0; i < r; ++i) old[from[i]] = idx[i];
            out.c[f] = v.c[flatten(old, n_)];
        }
        return out;
    }

private:
    Registry& reg_;
    std::string coords_;
    std::optional<std::string> metric_;
    std::vector<std::string> xs_;
    std::size_t n_ = 0;

    const std::string& metric() const {
        if (!metric_) throw Error(Errc::NoMetric, "raising or lowering an index needs a metric");
        return *metric_;
    }

    Value flip(Value v, std::size_t slot) {
        Components g = represent(reg_, metric(), v.pos[slot] > 0 ? IndexConfig{-1, -1} : IndexConfig{1, 1}, coords_);
        v.c = apply_to_slot(v.c, n_, v.rank(), slot, g);
        v.pos[slot] = -v.pos[slot];
        reg_.simplify_all(v.c, false);
        return v;
    }

    Value trace(Value v, std::size_t i, std::size_t j) {
        if (v.pos[i] == v.pos[j]) v = flip(std::move(v), j);
        const std::size_t r = v.rank();
        Value out;
        for (std::size_t k = 0; k < r; ++k)
            if (k != i && k != j) {
                out.letters.push_back(v.letters[k]);
                out.pos.push_back(v.pos[k]);
            }
        out.c.assign(ipow(n_, r - 2), Expr(0L));
        reg_.parallel_for(out.c.size(), [&](std::size_t f) {
            auto rest = unflatten(f, n_, r - 2);
            std::vector<Expr> terms;
            for (std::size_t a = 0; a < n_; ++a) {
                std::vector<std::size_t> idx;
                for (std::size_t k = 0, q = 0; k < r; ++k) idx.push_back(k == i || k == j ? a : rest[q++]);
                const Expr& e = v.c[flatten(idx, n_)];
                if (!e.is_zero_literal()) terms.push_back(e);
            }
            out.c[f] = Expr::sum(std::move(terms));
        });
        return out;
    }

    Value self_traces(Value v) {
        for (std::size_t i = 0; i < v.rank(); ++i)
            for (std::size_t j = i + 1; j < v.rank(); ++j)
                if (v.letters[i] == v.letters[j]) {
                    v = trace(std::move(v), i, j);
                    return self_traces(std::move(v));
                }
        return v;
    }

    Value load(const Operand& op) {
        const TensorObject& obj = reg_.get(op.id);
        if (op.letters.size() != obj.rank())
            throw Error(Errc::RankMismatch, "the index string for \"" + op.id + "\" has " +
                                                std::to_string(op.letters.size()) + " letters but the tensor has rank " +
                                                std::to_string(obj.rank()));
        Value v;
        v.letters = op.letters;
        v.pos = obj.defaultIndices;
        v.c = represent(reg_, op.id, obj.defaultIndices, coords_);
        return self_traces(std::move(v));
    }

    Value contract(Value a, Value b) {
        std::vector<std::pair<std::size_t, std::size_t>> shared;
        for (std::size_t i = 0; i < a.rank(); ++i)
            for (std::size_t j = 0; j < b.rank(); ++j)
                if (a.letters[i] == b.letters[j]) shared.emplace_back(i, j);
        for (auto [i, j] : shared)
            if (a.pos[i] == b.pos[j]) b = flip(std::move(b), j);
        std::vector<bool> sa(a.rank(), false), sb(b.rank(), false);
        for (auto [i, j] : shared) sa[i] = sb[j] = true;
        Value out;
        std::vector<std::size_t> fa, fb;
        for (std::size_t i = 0; i < a.rank(); ++i)
            if (!sa[i]) {
                fa.push_back(i);
                out.letters.push_back(a.letters[i]);
                out.pos.push_back(a.pos[i]);
            }
        for (std::size_t j = 0; j < b.rank(); ++j)
            if (!sb[j]) {
                fb.push_back(j);
                out.letters.push_back(b.letters[j]);
                out.pos.push_back(b.pos[j]);
            }
        const std::size_t r = out.rank(), ns = shared.size();
        out.c.assign(ipow(n_, r), Expr(0L));
        reg_.parallel_for(out.c.size(), [&](std::size_t f) {
            auto idx = unflatten(f, n_, r);
            std::vector<std::size_t> ia(a.rank()), ib(b.rank());
            for (std::size_t k = 0; k < fa.size(); ++k) ia[fa[k]] = idx[k];
            for (std::size_t k = 0; k < fb.size(); ++k) ib[fb[k]] = idx[fa.size() + k];
            std::vector<Expr> terms;
            for (std::size_t s = 0; s < ipow(n_, ns); ++s) {
                auto sv = unflatten(s, n_, ns);
                for (std::size_t k = 0; k < ns; ++k) ia[shared[k].first] = ib[shared[k].second] = sv[k];
                const Expr& x = a.c[flatten(ia, n_)];
                const Expr& y = b.c[flatten(ib, n_)];
                if (!x.is_zero_literal() && !y.is_zero_literal()) terms.push_back(x * y);
            }
            out.c[f] = Expr::sum(std::move(terms));
        });
        reg_.simplify_all(out.c, false);
        return out;
    }

    Value derivative(const std::string& letter, bool covariant, Value v) {
        auto it = std::find(v.letters.begin(), v.letters.end(), letter);
        std::optional<std::size_t> match;
        if (it != v.letters.end()) {
            match = static_cast<std::size_t>(it - v.letters.begin());
            if (v.pos[*match] < 0) v = flip(std::move(v), *match);
        }
        const std::size_t r = v.rank(), inner = v.c.size();
        Value d;
        d.letters.push_back(letter);
        d.pos.push_back(-1);
        d.letters.insert(d.letters.end(), v.letters.begin(), v.letters.end());
        d.pos.insert(d.pos.end(), v.pos.begin(), v.pos.end());
        d.c.resize(n_ * inner);
        Components gamma;
        if (covariant) gamma = represent(reg_, calc_christoffel(reg_, metric()), {1, -1, -1}, coords_);
        reg_.parallel_for(d.c.size(), [&](std::size_t f) {
            std::size_t m = f / inner, k = f % inner;
            std::vector<Expr> terms{diff(v.c[k], xs_[m])};
            if (covariant) {
                auto idx = unflatten(k, n_, r);
                for (std::size_t s = 0; s < r; ++s) {
                    std::size_t a = idx[s];
                    auto moved = idx;
                    for (std::size_t l = 0; l < n_; ++l) {
                        moved[s] = l;
                        const Expr& comp = v.c[flatten(moved, n_)];
                        if (comp.is_zero_literal()) continue;
                        const Expr& g = v.pos[s] > 0 ? gamma[(a * n_ + m) * n_ + l] : gamma[(l * n_ + m) * n_ + a];
                        if (g.is_zero_literal()) continue;
                        terms.push_back(v.pos[s] > 0 ? g * comp : -(g * comp));
                    }
                }
            }
            d.c[f] = Expr::sum(std::move(terms));
        });
        reg_.simplify_all(d.c, false);
        if (match) d = trace(std::move(d), 0, *match + 1);
        return d;
    }

    // A derivative binds to the single operand on its right.
    Value unit(const std::vector<Operand>& chain, std::size_t& i) {
        const Operand& op = chain[i++];
        switch (op.kind) {
            case Operand::Kind::Tensor:
                return load(op);
            case Operand::Kind::Group:
                return sum(*op.group);
            case Operand::Kind::Partial:
            case Operand::Kind::Covariant:
                if (i == chain.size())
                    throw Error(Errc::DanglingDerivative, "a derivative must be followed by a tensor");
                return derivative(op.letters[0], op.kind == Operand::Kind::Covariant, unit(chain, i));
        }
        return {};
    }

    Value term(const FormulaTerm& t) {
        Value v;
        if (t.chain.empty()) {
            v.c = {t.coefficient};
            return v;
        }
        std::size_t i = 0;
        v = unit(t.chain, i);
        while (i < t.chain.size()) v = contract(std::move(v), unit(t.chain, i));
        if (!t.coefficient.is_one_literal())
            for (auto& e : v.c) e = t.coefficient * e;
        return v;
    }
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

std::string evaluate(Registry& reg, const Formula& f) {
    std::vector<const Operand*> refs;
    collect_refs(f.body, refs);
    if (refs.empty()) syntax("the formula contains no tensors");
    std::optional<std::string> metric;
    for (const Operand* op : refs) {
        const TensorObject& obj = reg.get(op->id);
        if (op->letters.size() != obj.rank())
            throw Error(Errc::RankMismatch, "the index string for \"" + op->id + "\" has " +
                                                std::to_string(op->letters.size()) + " letters but the tensor has rank " +
                                                std::to_string(obj.rank()));
        std::string m = obj.role == Role::Metric ? obj.id : obj.metric;
        if (m.empty()) continue;
        if (metric && *metric != m)
            throw Error(Errc::MixedMetrics, "tensors associated with different metrics (\"" + *metric + "\" and \"" +
                                                m + "\") cannot be combined");
        metric = m;
    }
    const TensorObject& first = reg.get(refs.front()->id);
    std::string coords = first.role == Role::Coordinates ? first.id : first.defaultCoords;
    if (!metric)
        for (const auto& id : reg.ids()) {
            const TensorObject& o = reg.get(id);
            if (o.role == Role::Metric && o.defaultCoords == coords) {
                metric = id;
                break;
            }
        }
    std::vector<std::string> free = free_letters(f.body);
    check_coordinate_addition(reg, f.body);
    if (f.targetLetters) {
        auto sorted = [](std::vector<std::string> v) {
            std::sort(v.begin(), v.end());
            return v;
        };
        if (sorted(*f.targetLetters) != sorted(free))
            throw Error(Errc::FreeIndexMismatch, "the target indices must be a permutation of the free indices");
    }

    Evaluator ev(reg, coords, metric);
    Value v = ev.sum(f.body);
    if (f.targetLetters) v = ev.permute(std::move(v), *f.targetLetters);
    if (!metric) throw Error(Errc::NoMetric, "the result has no associated metric");

    std::string id = f.targetId.value_or("Result");
    reg.claim_id(id, id == "Result");
    reg.simplify_all(v.c);
    TensorObject obj;
    obj.id = id;
    obj.role = Role::Tensor;
    obj.symbol = f.symbol.value_or(kPlaceholderSymbol);
    obj.metric = *metric;
    obj.defaultIndices = v.pos;
    obj.defaultCoords = coords;
    obj.store(v.pos, coords, std::move(v.c));
    return reg.put(std::move(obj));
}

std::string calc(Registry& reg, std::string_view text) { return evaluate(reg, parse_formula(text)); }

}  // namespace tc
