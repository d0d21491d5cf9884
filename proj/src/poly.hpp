#pragma once

// Sparse multivariate polynomials with exact rational coefficients over
// integer-indexed variables ("kernels").

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace tc::detail {

using Coef = mpq_class;

// Sorted by variable index, exponents strictly positive.
struct Mono {
    std::vector<std::pair<std::uint32_t, std::int32_t>> f;

    bool empty() const { return f.empty(); }
    int degree_of(std::uint32_t v) const;
    friend bool operator==(const Mono& a, const Mono& b) { return a.f == b.f; }
};

// Lex order; lower variable index is more significant. Returns -1, 0, 1.
int mono_cmp(const Mono& a, const Mono& b);
Mono mono_mul(const Mono& a, const Mono& b);
bool mono_divides(const Mono& d, const Mono& m);
Mono mono_div(const Mono& m, const Mono& d);
Mono mono_gcd(const Mono& a, const Mono& b);
Mono mono_var(std::uint32_t v, int e = 1);

struct Term {
    Mono m;
    Coef c;
};

// Terms sorted in strictly decreasing mono_cmp order, no zero coefficients.
class Poly {
public:
    Poly() = default;
    static Poly constant(const Coef& c);
    static Poly var(std::uint32_t v, int e = 1);
    static Poly from_terms(std::vector<Term> terms);  // sorts and combines

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.empty()); }
    Coef constant_value() const { return terms_.empty() ? Coef(0) : terms_[0].c; }
    bool is_monomial() const { return terms_.size() == 1; }
    std::size_t size() const { return terms_.size(); }
    int degree_of(std::uint32_t v) const;
    int min_degree_of(std::uint32_t v) const;

    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly scaled(const Coef& c) const;
    Poly times_mono(const Mono& m, const Coef& c) const;
    Poly pow(unsigned n) const;

    // Exact division; nullopt when not divisible.
    std::optional<Poly> divide(const Poly& d) const;

    // Positive rational c with this/c having coprime integer coefficients.
    Coef content() const;
    Mono mono_content() const;

    std::vector<Term> terms_;
};

}  // namespace tc::detail
