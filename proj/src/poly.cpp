#include "poly.hpp"

#include <algorithm>

namespace tc::detail {

int Mono::degree_of(std::uint32_t v) const {
    for (const auto& [var, e] : f)
        if (var == v) return e;
    return 0;
}

int mono_cmp(const Mono& a, const Mono& b) {
    std::size_t n = std::min(a.f.size(), b.f.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a.f[i].first != b.f[i].first) return a.f[i].first < b.f[i].first ? 1 : -1;
        if (a.f[i].second != b.f[i].second) return a.f[i].second > b.f[i].second ? 1 : -1;
    }
    if (a.f.size() == b.f.size()) return 0;
    return a.f.size() > b.f.size() ? 1 : -1;
}

Mono mono_mul(const Mono& a, const Mono& b) {
    Mono r;
    r.f.reserve(a.f.size() + b.f.size());
    std::size_t i = 0, j = 0;
    while (i < a.f.size() || j < b.f.size()) {
        if (j == b.f.size() || (i < a.f.size() && a.f[i].first < b.f[j].first)) {
            r.f.push_back(a.f[i++]);
        } else if (i == a.f.size() || b.f[j].first < a.f[i].first) {
            r.f.push_back(b.f[j++]);
        } else {
            r.f.emplace_back(a.f[i].first, a.f[i].second + b.f[j].second);
            ++i;
            ++j;
        }
    }
    return r;
}

bool mono_divides(const Mono& d, const Mono& m) {
    std::size_t j = 0;
    for (const auto& [v, e] : d.f) {
        while (j < m.f.size() && m.f[j].first < v) ++j;
        if (j == m.f.size() || m.f[j].first != v || m.f[j].second < e) return false;
    }
    return true;
}

Mono mono_div(const Mono& m, const Mono& d) {
    Mono r;
    std::size_t j = 0;
    for (const auto& [v, e] : m.f) {
        int sub = 0;
        if (j < d.f.size() && d.f[j].first == v) sub = d.f[j++].second;
        if (e - sub > 0) r.f.emplace_back(v, e - sub);
    }
    return r;
}

Mono mono_gcd(const Mono& a, const Mono& b) {
    Mono r;
    std::size_t j = 0;
    for (const auto& [v, e] : a.f) {
        while (j < b.f.size() && b.f[j].first < v) ++j;
        if (j < b.f.size() && b.f[j].first == v) r.f.emplace_back(v, std::min(e, b.f[j].second));
    }
    return r;
}

Mono mono_var(std::uint32_t v, int e) {
    Mono m;
    if (e > 0) m.f.emplace_back(v, e);
    return m;
}

Poly Poly::constant(const Coef& c) {
    Poly p;
    if (sgn(c) != 0) p.terms_.push_back({Mono{}, c});
    return p;
}

Poly Poly::var(std::uint32_t v, int e) {
    Poly p;
    p.terms_.push_back({mono_var(v, e), Coef(1)});
    return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return mono_cmp(a.m, b.m) > 0; });
    Poly p;
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().m == t.m) {
            p.terms_.back().c += t.c;
        } else {
            if (!p.terms_.empty() && sgn(p.terms_.back().c) == 0) p.terms_.pop_back();
            p.terms_.push_back(std::move(t));
        }
    }
    if (!p.terms_.empty() && sgn(p.terms_.back().c) == 0) p.terms_.pop_back();
    return p;
}

int Poly::degree_of(std::uint32_t v) const {
    int d = 0;
    for (const auto& t : terms_) d = std::max(d, t.m.degree_of(v));
    return d;
}

int Poly::min_degree_of(std::uint32_t v) const {
    if (terms_.empty()) return 0;
    int d = terms_[0].m.degree_of(v);
    for (const auto& t : terms_) d = std::min(d, t.m.degree_of(v));
    return d;
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (!(a.terms_[i].m == b.terms_[i].m) || a.terms_[i].c != b.terms_[i].c) return false;
    return true;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r;
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        int c;
        if (i == terms_.size())
            c = -1;
        else if (j == o.terms_.size())
            c = 1;
        else
            c = mono_cmp(terms_[i].m, o.terms_[j].m);
        if (c > 0) {
            r.terms_.push_back(terms_[i++]);
        } else if (c < 0) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            Coef s = terms_[i].c + o.terms_[j].c;
            if (sgn(s) != 0) r.terms_.push_back({terms_[i].m, s});
            ++i;
            ++j;
        }
    }
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + o.scaled(Coef(-1)); }

Poly Poly::operator*(const Poly& o) const {
    if (terms_.empty() || o.terms_.empty()) return Poly{};
    if (o.is_constant()) return scaled(o.terms_[0].c);
    if (is_constant()) return o.scaled(terms_[0].c);
    std::vector<Term> out;
    out.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_)
        for (const auto& b : o.terms_) out.push_back({mono_mul(a.m, b.m), a.c * b.c});
    return from_terms(std::move(out));
}

Poly Poly::scaled(const Coef& c) const {
    if (sgn(c) == 0) return Poly{};
    Poly r = *this;
    for (auto& t : r.terms_) t.c *= c;
    return r;
}

Poly Poly::times_mono(const Mono& m, const Coef& c) const {
    Poly r;
    if (sgn(c) == 0) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({mono_mul(t.m, m), t.c * c});
    return r;  // multiplying by a monomial preserves the order
}

Poly Poly::pow(unsigned n) const {
    Poly result = constant(Coef(1));
    Poly base = *this;
    while (n) {
        if (n & 1u) result = result * base;
        n >>= 1u;
        if (n) base = base * base;
    }
    return result;
}

std::optional<Poly> Poly::divide(const Poly& d) const {
    if (d.is_zero()) return std::nullopt;
    if (is_zero()) return Poly{};
    if (d.is_constant()) return scaled(Coef(1) / d.terms_[0].c);
    // Cheap necessary conditions on per-variable degrees.
    for (const auto& [v, e] : d.terms_[0].m.f) {
        (void)e;
        if (degree_of(v) < d.degree_of(v)) return std::nullopt;
    }
    for (const auto& t : d.terms_)
        for (const auto& [v, e] : t.m.f)
            if (degree_of(v) < e) return std::nullopt;
    const Term& lead = d.terms_[0];
    if (d.is_monomial()) {
        Poly q;
        q.terms_.reserve(terms_.size());
        for (const auto& t : terms_) {
            if (!mono_divides(lead.m, t.m)) return std::nullopt;
            q.terms_.push_back({mono_div(t.m, lead.m), t.c / lead.c});
        }
        return q;
    }
    Poly r = *this;
    std::vector<Term> qterms;
    while (!r.is_zero()) {
        const Term& lt = r.terms_[0];
        if (!mono_divides(lead.m, lt.m)) return std::nullopt;
        Mono qm = mono_div(lt.m, lead.m);
        Coef qc = lt.c / lead.c;
        qterms.push_back({qm, qc});
        r = r - d.times_mono(qm, qc);
    }
    Poly q;
    q.terms_ = std::move(qterms);  // generated in decreasing order
    return q;
}

Coef Poly::content() const {
    if (terms_.empty()) return Coef(1);
    mpz_class g = 0, l = 1;
    for (const auto& t : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.c.get_den_mpz_t());
    }
    Coef c(g, l);
    c.canonicalize();
    return c;
}

Mono Poly::mono_content() const {
    if (terms_.empty()) return Mono{};
    Mono g = terms_[0].m;
    for (const auto& t : terms_) {
        g = mono_gcd(g, t.m);
        if (g.empty()) break;
    }
    return g;
}

}  // namespace tc::detail
