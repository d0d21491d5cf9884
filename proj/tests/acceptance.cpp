// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance                 run every criterion
//   acceptance --only 12       run the listed criteria
//   acceptance --skip 12       run all but the listed criteria
//
// Exit status is 0 when every selected criterion passes and 1 otherwise. When
// only the parallel timing criterion is selected and the machine has fewer
// cores than the workers it needs, a failure exits with kSkipStatus instead:
// the measurement is reported but cannot be meaningful there.

#include <algorithm>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "fixtures.hpp"
#include "tensorcalc/calc.hpp"
#include "tensorcalc/cli.hpp"
#include "tensorcalc/curvature.hpp"
#include "tensorcalc/geodesic.hpp"
#include "tensorcalc/session_io.hpp"
#include "tensorcalc/simplify.hpp"

using namespace tc;
using namespace tc::fixtures;

namespace {

// ---- pinned tolerances
constexpr int kZeroSamples = 20;          // random points per is_zero test
constexpr int kOracleTrials = 200;        // random tensor pairs for the einsum oracle
constexpr unsigned kMinWorkers = 4;       // workers for the parallel timing
constexpr int kBenchRepeats = 3;          // median of this many runs per setting
constexpr double kMaxParallelRatio = 0.7; // parallel time / single-worker time
constexpr int kSkipStatus = 77;

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

bool equal_value(const Expr& got, const Expr& want, const Assumptions& a = {}) {
    Expr d = simplify(got - want, a);
    return d.is_zero_literal() || is_zero(d, a, kZeroSamples);
}

void same(const Components& got, const std::vector<std::string>& want, const std::string& what,
          const Assumptions& a = {}) {
    check(got.size() == want.size(), what + ": size " + std::to_string(got.size()));
    for (std::size_t i = 0; i < got.size(); ++i)
        check(equal_value(got[i], parse_expr(want[i]), a),
              what + " entry " + std::to_string(i) + ": got " + format_expr(got[i]) + ", want " + want[i]);
}

void all_zero(const Components& c, const std::string& what) {
    for (std::size_t i = 0; i < c.size(); ++i)
        check(c[i].is_zero_literal() || is_zero(c[i], {}, kZeroSamples),
              what + " entry " + std::to_string(i) + " = " + format_expr(c[i]));
}

std::vector<std::string> diag_text(const std::vector<std::string>& d) {
    std::vector<std::string> out(d.size() * d.size(), "0");
    for (std::size_t i = 0; i < d.size(); ++i) out[i * d.size() + i] = d[i];
    return out;
}

Components comps(Registry& reg, const std::string& id, const IndexConfig& idx, const std::string& coords) {
    return represent(reg, id, idx, coords);
}

// Sparse rank-3 array with the lower pair symmetric: {"upper", "l1", "l2"} -> value.
Components christoffel_array(const std::vector<std::string>& coords,
                             const std::vector<std::tuple<std::string, std::string, std::string, std::string>>& entries) {
    std::size_t n = coords.size();
    auto pos = [&](const std::string& s) {
        return static_cast<std::size_t>(std::find(coords.begin(), coords.end(), s) - coords.begin());
    };
    Components out(n * n * n, Expr(0L));
    for (const auto& [u, a, b, v] : entries) {
        Expr e = parse_expr(v);
        out[(pos(u) * n + pos(a)) * n + pos(b)] = e;
        out[(pos(u) * n + pos(b)) * n + pos(a)] = e;
    }
    return out;
}

void same_array(const Components& got, const Components& want, const std::string& what) {
    check(got.size() == want.size(), what + ": size mismatch");
    for (std::size_t i = 0; i < got.size(); ++i) {
        if (want[i].is_zero_literal())
            check(got[i].is_zero_literal(), what + " entry " + std::to_string(i) + " should be zero");
        else
            check(equal_value(got[i], want[i]), what + " entry " + std::to_string(i) + ": got " +
                                                    format_expr(got[i]) + ", want " + format_expr(want[i]));
    }
}

// ---- criteria

std::string c1_schwarzschild_christoffel() {
    Registry reg;
    coordinates(reg);
    schwarzschild(reg);
    calc_christoffel(reg, "Schwarzschild");
    Components got = comps(reg, "SchwarzschildChristoffel", {1, -1, -1}, "Spherical");
    Components want = christoffel_array({"t", "r", "θ", "φ"}, {{"t", "t", "r", "M/(r*(r-2*M))"},
                                                               {"r", "t", "t", "M*(r-2*M)/r^3"},
                                                               {"r", "r", "r", "M/(2*M*r-r^2)"},
                                                               {"r", "θ", "θ", "2*M-r"},
                                                               {"r", "φ", "φ", "(2*M-r)*sin(θ)^2"},
                                                               {"θ", "r", "θ", "1/r"},
                                                               {"φ", "r", "φ", "1/r"},
                                                               {"θ", "φ", "φ", "-cos(θ)*sin(θ)"},
                                                               {"φ", "θ", "φ", "cot(θ)"}});
    same_array(got, want, "Γ");
    std::vector<Expr> unique;
    for (const auto& e : got) {
        if (e.is_zero_literal()) continue;
        bool seen = std::any_of(unique.begin(), unique.end(), [&](const Expr& u) { return equal_value(u, e); });
        if (!seen) unique.push_back(e);
    }
    check(unique.size() == 8, "expected 8 distinct values, found " + std::to_string(unique.size()));
    return "8 distinct values as listed, zero set matches";
}

std::string c2_vacuum() {
    Registry reg;
    coordinates(reg);
    schwarzschild(reg);
    calc_einstein(reg, "Schwarzschild");
    all_zero(comps(reg, "SchwarzschildRicciTensor", {-1, -1}, "Spherical"), "R_μν");
    all_zero(comps(reg, "SchwarzschildEinstein", {-1, -1}, "Spherical"), "G_μν");
    return "Ricci and Einstein vanish";
}

std::string c3_kretschmann() {
    Registry reg;
    coordinates(reg);
    schwarzschild(reg);
    calc_riemann(reg, "Schwarzschild");
    calc(reg, R"("Kretschmann", "SchwarzschildRiemann"["ρσμν"]."SchwarzschildRiemann"["ρσμν"], "K")");
    same(comps(reg, "Kretschmann", {}, "Spherical"), {"48*M^2/r^6"}, "K spherical");
    same(comps(reg, "Kretschmann", {}, "Cartesian"), {"48*M^2/(x^2+y^2+z^2)^3"}, "K cartesian");
    return "48M²/r⁶ and 48M²/(x²+y²+z²)³";
}

std::string c4_flrw() {
    Registry reg;
    coordinates(reg);
    flrw(reg);
    calc_christoffel(reg, "FLRW");
    Components want = christoffel_array({"t", "r", "θ", "φ"}, {{"t", "r", "r", "a(t)*a'(t)/(1-k*r^2)"},
                                                               {"t", "θ", "θ", "a(t)*r^2*a'(t)"},
                                                               {"t", "φ", "φ", "a(t)*r^2*sin(θ)^2*a'(t)"},
                                                               {"r", "t", "r", "a'(t)/a(t)"},
                                                               {"θ", "t", "θ", "a'(t)/a(t)"},
                                                               {"φ", "t", "φ", "a'(t)/a(t)"},
                                                               {"r", "r", "r", "k*r/(1-k*r^2)"},
                                                               {"r", "θ", "θ", "r*(-1+k*r^2)"},
                                                               {"r", "φ", "φ", "r*(-1+k*r^2)*sin(θ)^2"},
                                                               {"θ", "r", "θ", "1/r"},
                                                               {"φ", "r", "φ", "1/r"},
                                                               {"θ", "φ", "φ", "-cos(θ)*sin(θ)"},
                                                               {"φ", "θ", "φ", "cot(θ)"}});
    same_array(comps(reg, "FLRWChristoffel", {1, -1, -1}, "Spherical"), want, "Γ");
    calc_einstein(reg, "FLRW");
    const std::string s = "(2*(k+a'(t)^2)+a(t)*a''(t))";
    same(comps(reg, "FLRWRicciTensor", {-1, -1}, "Spherical"),
         diag_text({"-3*a''(t)/a(t)", s + "/(1-k*r^2)", "r^2*" + s, "r^2*sin(θ)^2*" + s}), "R_μν");
    same(comps(reg, "FLRWRicciScalar", {}, "Spherical"), {"6*(k+a'(t)^2+a(t)*a''(t))/a(t)^2"}, "R");
    const std::string g = "(k+a'(t)^2+2*a(t)*a''(t))";
    same(comps(reg, "FLRWEinstein", {-1, -1}, "Spherical"),
         diag_text({"3*(k+a'(t)^2)/a(t)^2", g + "/(-1+k*r^2)", "-r^2*" + g, "-r^2*sin(θ)^2*" + g}), "G_μν");
    return "Christoffel, Ricci tensor, Ricci scalar, Einstein";
}

std::string c5_compatibility_and_bianchi() {
    Registry reg;
    coordinates(reg);
    schwarzschild(reg);
    flrw(reg);
    for (const char* m : {"Schwarzschild", "FLRW"}) {
        std::string id = calc(reg, std::string(R"(TCovariantD["μ"].")") + m + R"("["αβ"])");
        all_zero(reg.get(id).reps.front().second, std::string("∇g for ") + m);
    }
    calc_einstein(reg, "FLRW");
    std::string bianchi = calc(reg, R"(TCovariantD["μ"]."FLRWEinstein"["μν"])");
    all_zero(reg.get(bianchi).reps.front().second, "∇_μ G^μν");
    reg.set_reserved_symbols({"ρ", "p"});
    reg.new_tensor("RestVelocity", "FLRW", "Spherical", {1}, Es({"1", "0", "0", "0"}), "u");
    calc(reg, R"("PerfectFluidFLRW", (ρ[t, r, θ, φ] + p[t, r, θ, φ]) "RestVelocity"["μ"]."RestVelocity"["ν"] +
                 p[t, r, θ, φ] "FLRW"["μν"], "T")");
    reg.change_default_indices("PerfectFluidFLRW", {1, 1});
    calc(reg, R"("FLRWConservation", TCovariantD["μ"]."PerfectFluidFLRW"["μν"])");
    Components c = comps(reg, "FLRWConservation", {1}, "Spherical");
    same({c[0], c[1]},
         {"3*(ρ(t,r,θ,φ)+p(t,r,θ,φ))*a'(t)/a(t) + ρ^(1,0,0,0)(t,r,θ,φ)", "(1-k*r^2)*p^(0,1,0,0)(t,r,θ,φ)/a(t)^2"},
         "∇_μ T^μν");
    return "∇g = 0 (2 metrics), ∇G = 0, conservation t and r components";
}

std::string c6_representations() {
    Registry reg;
    walkthrough(reg);
    same(comps(reg, "Minkowski", {-1, -1}, "Spherical"), diag_text({"-1", "1", "r^2", "r^2*sin(θ)^2"}), "η spherical");
    same(comps(reg, "Schwarzschild", {1, 1}, "Spherical"),
         diag_text({"r/(2*M-r)", "1-2*M/r", "1/r^2", "csc(θ)^2/r^2"}), "g^μν");
    same(comps(reg, "Schwarzschild", {1, -1}, "Spherical"), diag_text({"1", "1", "1", "1"}), "g^μ_ν");
    same(comps(reg, "4-Velocity", {-1}, "Cartesian"), {"-1/sqrt(1-v^2)", "v/sqrt(1-v^2)", "0", "0"}, "u_μ");
    std::string norm = calc(reg, R"("4-Velocity"["μ"]."4-Velocity"["μ"])");
    same(reg.get(norm).reps.front().second, {"-1"}, "u·u");
    std::string trace = calc(reg, R"("Trace", "Minkowski"["μμ"])");
    same(reg.get(trace).reps.front().second, {"4"}, "η^μ_μ");
    return "η, g⁻¹, δ, u_μ, u·u = -1, trace 4";
}

std::string c7_anomalous_transform() {
    Registry reg;
    coordinates(reg);
    reg.new_metric("SimpleMetric", "Cartesian", diag({"-x", "1", "1", "1"}));
    calc_christoffel(reg, "SimpleMetric");
    reg.new_tensor("SimpleMetricPlain", "SimpleMetric", "Cartesian", {1, -1, -1},
                   reg.get("SimpleMetricChristoffel").reps.front().second, "Γ");
    const std::vector<std::string> sph = {"t", "r", "θ", "φ"};
    std::vector<std::tuple<std::string, std::string, std::string, std::string>> common = {
        {"t", "t", "r", "1/(2*r)"},
        {"t", "t", "θ", "cot(θ)/2"},
        {"t", "t", "φ", "-tan(φ)/2"},
        {"r", "t", "t", "cos(φ)*sin(θ)/2"},
        {"θ", "t", "t", "cos(θ)*cos(φ)/(2*r)"},
        {"φ", "t", "t", "-csc(θ)*sin(φ)/(2*r)"}};
    auto full = common;
    full.insert(full.end(), {{"r", "θ", "θ", "-r"},
                             {"r", "φ", "φ", "-r*sin(θ)^2"},
                             {"θ", "r", "θ", "1/r"},
                             {"φ", "r", "φ", "1/r"},
                             {"θ", "φ", "φ", "-cos(θ)*sin(θ)"},
                             {"φ", "θ", "φ", "cot(θ)"}});
    Components anomalous = comps(reg, "SimpleMetricChristoffel", {1, -1, -1}, "Spherical");
    same_array(anomalous, christoffel_array(sph, full), "Christoffel role");
    same_array(comps(reg, "SimpleMetricPlain", {1, -1, -1}, "Spherical"), christoffel_array(sph, common),
               "plain tensor");
    std::size_t groupsFull = group_components(anomalous).size();
    std::size_t groupsPlain = group_components(comps(reg, "SimpleMetricPlain", {1, -1, -1}, "Spherical")).size();
    check(groupsFull == 11, "Christoffel role listing has " + std::to_string(groupsFull) + " groups");
    check(groupsPlain == 6, "plain listing has " + std::to_string(groupsPlain) + " groups");
    reg.change_default_coords("SimpleMetric", "Spherical");
    calc(reg, R"("SimpleMetricManualChristoffelSpherical", 1/2 "SimpleMetric"["λσ"].(TPartialD["μ"]."SimpleMetric"["νσ"] +
                 TPartialD["ν"]."SimpleMetric"["σμ"] - TPartialD["σ"]."SimpleMetric"["μν"]), "Γ")");
    reg.change_default_indices("SimpleMetricManualChristoffelSpherical", {1, -1, -1});
    same_array(comps(reg, "SimpleMetricManualChristoffelSpherical", {1, -1, -1}, "Spherical"), anomalous,
               "manual in spherical");
    return "11-group and 6-group listings, manual recomputation agrees";
}

std::string c8_geodesics() {
    Registry reg;
    coordinates(reg);
    minkowski(reg);
    alcubierre(reg);
    calc_lagrangian(reg, "Minkowski");
    same(reg.get("MinkowskiLagrangian").reps.front().second, {"-t'(λ)^2 + x'(λ)^2 + y'(λ)^2 + z'(λ)^2"}, "L");
    geodesic_from_lagrangian(reg, "Minkowski");
    Components deferred = reg.get("MinkowskiGeodesicFromLagrangian").reps.front().second;
    Components wantDeferred = Es({"-∂_λ(-t'(λ))", "-∂_λ(x'(λ))", "-∂_λ(y'(λ))", "-∂_λ(z'(λ))"});
    for (std::size_t i = 0; i < 4; ++i)
        check(deferred[i] == simplify(wantDeferred[i]), "deferred form entry " + std::to_string(i) + ": " +
                                                            format_expr(deferred[i]));
    Components active;
    for (const auto& e : deferred) active.push_back(activate(e));
    same(active, {"t''(λ)", "-x''(λ)", "-y''(λ)", "-z''(λ)"}, "activated Euler-Lagrange");
    geodesic_from_christoffel(reg, "Minkowski");
    same(reg.get("MinkowskiGeodesicFromChristoffel").reps.front().second, {"t''(λ)", "x''(λ)", "y''(λ)", "z''(λ)"},
         "Christoffel form");

    geodesic_from_lagrangian(reg, "Alcubierre");
    std::vector<SubstitutionRule> solution = {
        SubstitutionRule::replace(E("t'(λ)"), E("1")), SubstitutionRule::replace(E("x'(λ)"), E("0")),
        SubstitutionRule::replace(E("y'(λ)"), E("0")),
        SubstitutionRule::replace(E("z'(λ)"), E("v(t(λ))*f(t(λ),x(λ),y(λ),z(λ))"))};
    for (const auto& e : reg.get("AlcubierreGeodesicFromLagrangian").reps.front().second)
        check(activate(substitute(e, solution)).is_zero_literal(), "Alcubierre solution leaves " + format_expr(e));

    set_curve_parameter(reg, "τ");
    same(reg.get("MinkowskiLagrangian").reps.front().second, {"-t'(τ)^2 + x'(τ)^2 + y'(τ)^2 + z'(τ)^2"}, "L(τ)");
    same(reg.get("MinkowskiGeodesicFromLagrangian").reps.front().second,
         {"-∂_τ(-t'(τ))", "-∂_τ(x'(τ))", "-∂_τ(y'(τ))", "-∂_τ(z'(τ))"}, "geodesic(τ)");
    return "Lagrangian, deferred/activated and Christoffel forms, Alcubierre, τ rename";
}

std::string c9_assumptions() {
    Registry reg;
    walkthrough(reg);
    Components before = comps(reg, "SpatialDistance", {}, "Spherical");
    check(before[0] == E("abs(r)"), "with assumeReal only: " + format_expr(before[0]));
    reg.get_components("SpatialDistance", IndexConfig{}, std::string("Spherical"));
    reg.add_assumption(parse_predicate("r >= 0"));
    reg.simplify_tensor("SpatialDistance");
    Components after = comps(reg, "SpatialDistance", {}, "Spherical");
    check(after[0] == E("r"), "after r >= 0: " + format_expr(after[0]));
    return "|r| then r";
}

std::string c10_round_trip() {
    Registry reg;
    walkthrough(reg);
    reg.get_components("4-Velocity", IndexConfig{-1});
    Json v = export_tensor(reg, "4-Velocity")["4-Velocity"]["Components"];
    std::vector<std::string> keys;
    for (const auto& [k, val] : v.items()) keys.push_back(k);
    check(keys == std::vector<std::string>{"[[1],\"Cartesian\"]", "[[-1],\"Cartesian\"]"},
          "4-Velocity keys: " + v.dump());
    calc_christoffel(reg, "Schwarzschild");
    reg.get_components("PerfectFluid", IndexConfig{1, 1}, std::string("Spherical"));
    std::string path = (std::filesystem::temp_directory_path() / ("acceptance" + std::string(kSessionExtension))).string();
    export_all_to_file(reg, path);
    Registry back;
    import_all_from_file(back, path);
    std::filesystem::remove(path);
    check(back.ids() == reg.ids(), "IDs differ after import");
    check(back.options() == reg.options(), "options differ after import");
    for (const auto& id : reg.ids()) {
        const auto& a = reg.get(id);
        const auto& b = back.get(id);
        check(a.role == b.role && a.symbol == b.symbol && a.metric == b.metric &&
                  a.defaultIndices == b.defaultIndices && a.defaultCoords == b.defaultCoords,
              id + " metadata differs");
        check(a.reps.size() == b.reps.size(), id + " representation count differs");
        for (std::size_t i = 0; i < a.reps.size(); ++i)
            check(a.reps[i].first == b.reps[i].first && a.reps[i].second == b.reps[i].second,
                  id + " representation differs");
    }
    check(export_all(back) == export_all(reg), "re-export differs");
    return std::to_string(reg.ids().size()) + " objects; 4-Velocity has the two cached keys";
}

// Independent nested-loop oracle for contractions and traces.
struct Oracle {
    std::size_t n;
    Components g, gi;

    static Components inverse(const Components& m, std::size_t n) {
        // Adjugate over determinant, dimensions 2 and 3.
        auto at = [&](std::size_t i, std::size_t j) { return m[i * n + j]; };
        Components out(n * n);
        if (n == 2) {
            Expr det = at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
            out = {at(1, 1) / det, -at(0, 1) / det, -at(1, 0) / det, at(0, 0) / det};
        } else {
            Expr det(0L);
            for (std::size_t j = 0; j < 3; ++j)
                det = det + at(0, j) * (at(1, (j + 1) % 3) * at(2, (j + 2) % 3) - at(1, (j + 2) % 3) * at(2, (j + 1) % 3));
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j) {
                    Expr cof = at((j + 1) % 3, (i + 1) % 3) * at((j + 2) % 3, (i + 2) % 3) -
                               at((j + 1) % 3, (i + 2) % 3) * at((j + 2) % 3, (i + 1) % 3);
                    out[i * n + j] = cof / det;
                }
        }
        for (auto& e : out) e = simplify(e);
        return out;
    }

    std::vector<std::size_t> digits(std::size_t flat, std::size_t rank) const {
        std::vector<std::size_t> d(rank);
        for (std::size_t k = rank; k-- > 0;) {
            d[k] = flat % n;
            flat /= n;
        }
        return d;
    }
    std::size_t flat(const std::vector<std::size_t>& d) const {
        std::size_t f = 0;
        for (auto x : d) f = f * n + x;
        return f;
    }
    std::size_t size(std::size_t rank) const {
        std::size_t s = 1;
        for (std::size_t k = 0; k < rank; ++k) s *= n;
        return s;
    }

    // Moves slot `slot` from position `from` to `to` with g or g⁻¹.
    Components move(const Components& t, std::size_t rank, std::size_t slot, int from, int to) const {
        if (from == to) return t;
        const Components& m = to < 0 ? g : gi;
        Components out(t.size(), Expr(0L));
        for (std::size_t f = 0; f < t.size(); ++f) {
            auto d = digits(f, rank);
            Expr s(0L);
            for (std::size_t b = 0; b < n; ++b) {
                auto e = d;
                e[slot] = b;
                s = s + m[d[slot] * n + b] * t[flat(e)];
            }
            out[f] = simplify(s);
        }
        return out;
    }

    Components to_positions(Components t, const IndexConfig& from, const IndexConfig& to) const {
        for (std::size_t s = 0; s < from.size(); ++s) t = move(t, from.size(), s, from[s], to[s]);
        return t;
    }
};

std::string c11_einsum_oracle() {
    std::mt19937 rng(20240611);
    std::uniform_int_distribution<int> entry(-3, 3);
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    const std::vector<std::string> letters = {"a", "b", "c", "d", "e", "f"};
    std::size_t contractions = 0, traces = 0;
    for (int trial = 0; trial < kOracleTrials; ++trial) {
        std::size_t n = trial % 2 ? 3 : 2;
        Oracle o{n, {}, {}};
        do {
            o.g.assign(n * n, Expr(0L));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) o.g[i * n + j] = o.g[j * n + i] = Expr(static_cast<long>(entry(rng)));
        } while (simplify(n == 2 ? o.g[0] * o.g[3] - o.g[1] * o.g[2]
                                 : o.g[0] * (o.g[4] * o.g[8] - o.g[5] * o.g[7]) -
                                       o.g[1] * (o.g[3] * o.g[8] - o.g[5] * o.g[6]) +
                                       o.g[2] * (o.g[3] * o.g[7] - o.g[4] * o.g[6]))
                     .is_zero_literal());
        o.gi = Oracle::inverse(o.g, n);

        Registry reg;
        reg.new_coordinates("C", n == 2 ? std::vector<std::string>{"u", "w"} : std::vector<std::string>{"u", "w", "s"});
        reg.new_metric("G", "C", o.g);
        auto random_tensor = [&](const std::string& id, std::size_t rank, IndexConfig& cfg, Components& c) {
            cfg.clear();
            for (std::size_t k = 0; k < rank; ++k) cfg.push_back(pick(0, 1) ? 1 : -1);
            c.clear();
            for (std::size_t k = 0; k < o.size(rank); ++k) c.push_back(Expr(static_cast<long>(entry(rng))));
            reg.new_tensor(id, "G", "C", cfg, c);
        };

        // Pair contraction A·B with one or two shared letters.
        std::size_t ra = pick(1, 3), rb = pick(1, 3);
        IndexConfig ca, cb;
        Components A, B;
        random_tensor("A", ra, ca, A);
        random_tensor("B", rb, cb, B);
        std::size_t pairs = pick(1, static_cast<int>(std::min<std::size_t>({ra, rb, 2})));
        std::vector<std::size_t> sa(ra), sb(rb);
        for (std::size_t k = 0; k < ra; ++k) sa[k] = k;
        for (std::size_t k = 0; k < rb; ++k) sb[k] = k;
        std::shuffle(sa.begin(), sa.end(), rng);
        std::shuffle(sb.begin(), sb.end(), rng);
        std::vector<std::string> la(ra), lb(rb);
        std::size_t next = 0;
        for (std::size_t p = 0; p < pairs; ++p) la[sa[p]] = lb[sb[p]] = letters[next++];
        for (std::size_t k = 0; k < ra; ++k)
            if (la[k].empty()) la[k] = letters[next++];
        for (std::size_t k = 0; k < rb; ++k)
            if (lb[k].empty()) lb[k] = letters[next++];
        auto join = [](const std::vector<std::string>& v) {
            std::string s;
            for (const auto& x : v) s += x;
            return s;
        };
        std::string id = calc(reg, "\"A\"[\"" + join(la) + "\"].\"B\"[\"" + join(lb) + "\"]");
        const TensorObject& res = reg.get(id);

        // Oracle: A fully lower, B fully upper, sum over the shared letters,
        // then restore each free slot to its original position.
        Components Al = o.to_positions(A, ca, IndexConfig(ra, -1));
        Components Bu = o.to_positions(B, cb, IndexConfig(rb, 1));
        std::vector<std::size_t> freeA, freeB;
        for (std::size_t k = 0; k < ra; ++k)
            if (std::find(lb.begin(), lb.end(), la[k]) == lb.end()) freeA.push_back(k);
        for (std::size_t k = 0; k < rb; ++k)
            if (std::find(la.begin(), la.end(), lb[k]) == la.end()) freeB.push_back(k);
        std::size_t rr = freeA.size() + freeB.size();
        Components out(o.size(rr), Expr(0L));
        IndexConfig outCfg(freeA.size(), -1);
        outCfg.resize(rr, 1);
        for (std::size_t fr = 0; fr < out.size(); ++fr) {
            auto d = o.digits(fr, rr);
            Expr s(0L);
            for (std::size_t fs = 0; fs < o.size(pairs); ++fs) {
                auto sum = o.digits(fs, pairs);
                std::vector<std::size_t> ia(ra), ib(rb);
                for (std::size_t k = 0; k < freeA.size(); ++k) ia[freeA[k]] = d[k];
                for (std::size_t k = 0; k < freeB.size(); ++k) ib[freeB[k]] = d[freeA.size() + k];
                for (std::size_t p = 0; p < pairs; ++p) ia[sa[p]] = ib[sb[p]] = sum[p];
                s = s + Al[o.flat(ia)] * Bu[o.flat(ib)];
            }
            out[fr] = simplify(s);
        }
        IndexConfig orig;
        for (auto k : freeA) orig.push_back(ca[k]);
        for (auto k : freeB) orig.push_back(cb[k]);
        out = o.to_positions(out, outCfg, orig);
        check(res.defaultIndices == orig, "trial " + std::to_string(trial) + ": result positions " +
                                              index_config_text(res.defaultIndices) + " vs " + index_config_text(orig));
        const Components& got = res.reps.front().second;
        for (std::size_t k = 0; k < out.size(); ++k)
            check(got[k] == out[k], "contraction trial " + std::to_string(trial) + " entry " + std::to_string(k) +
                                        ": " + format_expr(got[k]) + " vs " + format_expr(out[k]));
        ++contractions;

        // Self-trace of a rank 2 or 3 tensor.
        std::size_t rt = pick(2, 3);
        IndexConfig ct;
        Components T;
        random_tensor("T", rt, ct, T);
        std::vector<std::size_t> st(rt);
        for (std::size_t k = 0; k < rt; ++k) st[k] = k;
        std::shuffle(st.begin(), st.end(), rng);
        std::size_t p = std::min(st[0], st[1]), q = std::max(st[0], st[1]);
        std::vector<std::string> lt(rt);
        lt[p] = lt[q] = "a";
        std::size_t fk = 0;
        for (std::size_t k = 0; k < rt; ++k)
            if (lt[k].empty()) lt[k] = letters[1 + fk++];
        std::string tid = calc(reg, "\"T\"[\"" + join(lt) + "\"]");
        Components Tl = o.to_positions(T, ct, IndexConfig(rt, -1));
        std::vector<std::size_t> freeT;
        for (std::size_t k = 0; k < rt; ++k)
            if (k != p && k != q) freeT.push_back(k);
        Components tr(o.size(freeT.size()), Expr(0L));
        for (std::size_t fr = 0; fr < tr.size(); ++fr) {
            auto d = o.digits(fr, freeT.size());
            Expr s(0L);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    std::vector<std::size_t> it(rt);
                    for (std::size_t k = 0; k < freeT.size(); ++k) it[freeT[k]] = d[k];
                    it[p] = i;
                    it[q] = j;
                    s = s + o.gi[i * n + j] * Tl[o.flat(it)];
                }
            tr[fr] = simplify(s);
        }
        IndexConfig torig;
        for (auto k : freeT) torig.push_back(ct[k]);
        tr = o.to_positions(tr, IndexConfig(freeT.size(), -1), torig);
        const TensorObject& tres = reg.get(tid);
        check(tres.defaultIndices == torig, "trace trial " + std::to_string(trial) + ": result positions");
        for (std::size_t k = 0; k < tr.size(); ++k)
            check(tres.reps.front().second[k] == tr[k], "trace trial " + std::to_string(trial) + " entry " +
                                                            std::to_string(k) + ": " +
                                                            format_expr(tres.reps.front().second[k]) + " vs " +
                                                            format_expr(tr[k]));
        ++traces;
    }
    return std::to_string(contractions) + " contractions and " + std::to_string(traces) + " traces exact";
}

std::string c12_parallel() {
    Registry reg;
    reg.new_coordinates("Cartesian", {"t", "x", "y", "z"});
    reg.set_reserved_symbols({"f"});
    Components g;
    for (int a = 1; a <= 4; ++a)
        for (int b = 1; b <= 4; ++b) g.push_back(parse_expr("f(" + std::to_string(a * b) + "*t^2)"));
    reg.new_metric("ParallelizationTest", "Cartesian", g);
    reg.set_workers(std::max(kMinWorkers, std::thread::hardware_concurrency()));
    BenchResult r = bench_christoffel(reg, "ParallelizationTest", kBenchRepeats);
    std::ostringstream s;
    s.precision(3);
    s << std::fixed << "1 worker " << r.serialSeconds << " s, " << r.workers << " workers " << r.parallelSeconds
      << " s, ratio " << r.ratio() << " (limit " << kMaxParallelRatio << "), " << std::thread::hardware_concurrency()
      << " hardware threads";
    check(r.ratio() <= kMaxParallelRatio, s.str());
    return s.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    std::vector<int> only, skip;
    app.add_option("--only", only, "Criteria to run")->delimiter(',');
    app.add_option("--skip", skip, "Criteria to leave out")->delimiter(',');
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<std::string()>>> criteria = {
        {"Schwarzschild Christoffel symbols", c1_schwarzschild_christoffel},
        {"Schwarzschild Ricci and Einstein tensors vanish", c2_vacuum},
        {"Kretschmann scalar", c3_kretschmann},
        {"FLRW curvature chain", c4_flrw},
        {"Metric compatibility, Bianchi identity, conservation", c5_compatibility_and_bianchi},
        {"Representation engine", c6_representations},
        {"Christoffel anomalous transformation", c7_anomalous_transform},
        {"Geodesics", c8_geodesics},
        {"Assumption pipeline", c9_assumptions},
        {"Session round trip", c10_round_trip},
        {"Einsum oracle", c11_einsum_oracle},
        {"Parallel simplification speedup", c12_parallel},
    };
    std::set<int> selected;
    for (int i = 1; i <= static_cast<int>(criteria.size()); ++i)
        if ((only.empty() || std::count(only.begin(), only.end(), i)) && !std::count(skip.begin(), skip.end(), i))
            selected.insert(i);

    bool allPass = true;
    for (int i : selected) {
        const auto& [name, run] = criteria[i - 1];
        std::string detail;
        bool ok = false;
        try {
            detail = run();
            ok = true;
        } catch (const std::exception& e) {
            detail = e.what();
        }
        allPass = allPass && ok;
        std::cout << (ok ? "PASS" : "FAIL") << " " << i << " " << name << ": " << detail << std::endl;
    }
    if (allPass) return 0;
    bool onlyTiming = selected == std::set<int>{12};
    if (onlyTiming && std::thread::hardware_concurrency() < kMinWorkers) {
        std::cout << "criterion 12 needs at least " << kMinWorkers << " hardware threads to be meaningful" << std::endl;
        return kSkipStatus;
    }
    return 1;
}
