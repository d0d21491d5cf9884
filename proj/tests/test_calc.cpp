#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "tensorcalc/calc.hpp"
#include "tensorcalc/curvature.hpp"
#include "tensorcalc/error.hpp"
#include "test_util.hpp"

using namespace tc;
using namespace tc::fixtures;

namespace {

Errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return Errc::Syntax;
}

Components comps(Registry& reg, const std::string& id, const IndexConfig& c, const std::string& coords) {
    return represent(reg, id, c, coords);
}

// Session with the fluid still in its defining representation.
void basic(Registry& reg) {
    coordinates(reg);
    minkowski(reg);
    reg.set_reserved_symbols({"ρ", "p", "v"});
    reg.new_tensor("PerfectFluid", "Minkowski", "Cartesian", {1, 1}, diag({"ρ", "p", "p", "p"}), "T");
    reg.new_tensor("4-Velocity", "Minkowski", "Cartesian", {1},
                   Es({"1/sqrt(1-v^2)", "v/sqrt(1-v^2)", "0", "0"}), "u");
    Components n(16, Expr(0L));
    n[3] = Expr(1L);
    reg.new_tensor("NonSymmetric", "Minkowski", "Cartesian", {-1, -1}, n, "N");
}

}  // namespace

TEST(Calc, ParseShapes) {
    Formula f = parse_formula(R"("Minkowski"["μν"] + "PerfectFluid"["μν"])");
    ASSERT_EQ(f.body.terms.size(), 2u);
    EXPECT_FALSE(f.targetId);
    Formula g = parse_formula(R"("Result"["νμ"], 2 t "A"["μν"] - x "B"["νμ"], "S")");
    EXPECT_EQ(*g.targetId, "Result");
    EXPECT_EQ(g.targetLetters->size(), 2u);
    EXPECT_EQ(*g.symbol, "S");
    EXPECT_EQ(format_expr(g.body.terms[1].coefficient), "-x");
    Formula h = parse_formula(R"("v"["μ"]."w"["μ"])");
    ASSERT_EQ(h.body.terms.size(), 1u);
    EXPECT_EQ(h.body.terms[0].chain.size(), 2u);
    Formula d = parse_formula(R"(1/2 "g"["λσ"].(TPartialD["μ"]."g"["νσ"] + TPartial["ν"]."g"["σμ"]))");
    EXPECT_EQ(d.body.terms[0].chain[1].kind, Operand::Kind::Group);
    EXPECT_EQ(format_expr(d.body.terms[0].coefficient), "1/2");
    Formula p = parse_formula(R"((ρ[t, r] + p[t, r]) "u"["μ"]."u"["ν"])");
    EXPECT_EQ(format_expr(p.body.terms[0].coefficient), "ρ(t, r) + p(t, r)");
}

TEST(Calc, SyntaxErrors) {
    for (const char* bad : {R"("A"["μ"] +)", R"("A"[μ])", R"("A"["μ"] "B"["ν"])", R"(2 + 3)", R"("A"["μ"].2)",
                            R"(("A"["μ"])^2)", R"("A"["μ"] ))"})
        EXPECT_EQ(code_of([&] { parse_formula(bad); }), Errc::Syntax) << bad;
}

TEST(Calc, Addition) {
    Registry reg;
    basic(reg);
    std::string id = calc(reg, R"("Minkowski"["μν"] + "PerfectFluid"["μν"])");
    EXPECT_EQ(id, "Result");
    EXPECT_EQ(reg.get(id).symbol, "□");
    EXPECT_EQ(reg.get(id).defaultIndices, (IndexConfig{-1, -1}));
    EXPECT_TRUE(same_components(comps(reg, id, {-1, -1}, "Cartesian"), diag({"-1+ρ", "1+p", "1+p", "1+p"})));

    calc(reg, R"("Minkowski"["μν"] + "NonSymmetric"["νμ"])");
    Components flipped = comps(reg, "Result", {-1, -1}, "Cartesian");
    Components want = diag({"-1", "1", "1", "1"});
    want[12] = Expr(1L);
    EXPECT_EQ(flipped, want);

    // Target "νμ" applied to the flipped sum equals the unflipped sum.
    calc(reg, R"("Result"["νμ"], "Minkowski"["μν"] + "NonSymmetric"["νμ"])");
    Components targeted = comps(reg, "Result", {-1, -1}, "Cartesian");
    calc(reg, R"("Minkowski"["μν"] + "NonSymmetric"["μν"])");
    EXPECT_EQ(targeted, comps(reg, "Result", {-1, -1}, "Cartesian"));
}

TEST(Calc, ScalarMultiples) {
    Registry reg;
    basic(reg);
    calc(reg, R"(2 t "Minkowski"["μν"] - 3 x "PerfectFluid"["μν"] + 4 y "NonSymmetric"["μν"] - 5 z "NonSymmetric"["νμ"])");
    Components r = comps(reg, "Result", {-1, -1}, "Cartesian");
    EXPECT_TRUE(same_components({r[0], r[3], r[12], r[5]}, std::vector<std::string>{"-2*t-3*x*ρ", "4*y", "-5*z", "2*t-3*x*p"}));
}

TEST(Calc, ContractionsAndTraces) {
    Registry reg;
    basic(reg);
    calc(reg, R"("PerfectFluidFromVelocity", (ρ + p) "4-Velocity"["μ"]."4-Velocity"["ν"] + p "Minkowski"["μν"], "T")");
    const TensorObject& t = reg.get("PerfectFluidFromVelocity");
    EXPECT_EQ(t.symbol, "T");
    EXPECT_EQ(t.defaultIndices, (IndexConfig{1, 1}));
    Components lower = comps(reg, "PerfectFluidFromVelocity", {-1, -1}, "Cartesian");
    EXPECT_TRUE(same_components({lower[0], lower[1], lower[5], lower[10]},
                                std::vector<std::string>{"(ρ + p*v^2)/(1-v^2)", "-v*(ρ+p)/(1-v^2)",
                                                         "(p + ρ*v^2)/(1-v^2)", "p"}));

    calc(reg, R"("4-Velocity"["μ"]."4-Velocity"["μ"])");
    EXPECT_TRUE(same_components(comps(reg, "Result", {}, "Cartesian"), std::vector<std::string>{"-1"}));

    calc(reg, R"("4-Velocity"["μ"]."PerfectFluid"["μν"]."NonSymmetric"["νρ"])");
    EXPECT_EQ(reg.get("Result").defaultIndices, (IndexConfig{-1}));
    EXPECT_TRUE(same_components(comps(reg, "Result", {-1}, "Cartesian"),
                                std::vector<std::string>{"0", "0", "0", "-ρ/sqrt(1-v^2)"}));

    calc(reg, R"("Minkowski"["μμ"])");
    EXPECT_EQ(comps(reg, "Result", {}, "Cartesian"), Components{Expr(4L)});
    calc(reg, R"("PerfectFluidFromVelocity"["μμ"])");
    EXPECT_TRUE(same_components(comps(reg, "Result", {}, "Cartesian"), std::vector<std::string>{"3*p - ρ"}));
}

TEST(Calc, ScalarTimesTensorInSpherical) {
    Registry reg;
    walkthrough(reg);
    reg.add_assumption(parse_predicate("r >= 0"));
    calc(reg, R"("SpatialDistance"[""]."Minkowski"["μν"])");
    EXPECT_TRUE(same_components(comps(reg, "Result", {-1, -1}, "Spherical"),
                                diag({"-r", "r", "r^3", "r^3*sin(θ)^2"}), reg.options().assumptions));
}

TEST(Calc, Associativity) {
    Registry reg;
    basic(reg);
    calc(reg, R"("AB", "4-Velocity"["μ"]."PerfectFluid"["μν"])");
    calc(reg, R"("Left", "AB"["ν"]."NonSymmetric"["νρ"])");
    calc(reg, R"("BC", "PerfectFluid"["μν"]."NonSymmetric"["νρ"])");
    calc(reg, R"("Right", "4-Velocity"["μ"]."BC"["μρ"])");
    calc(reg, R"("Nested", "4-Velocity"["μ"].("PerfectFluid"["μν"]."NonSymmetric"["νρ"]))");
    Components l = comps(reg, "Left", {-1}, "Cartesian");
    EXPECT_TRUE(same_components(comps(reg, "Right", {-1}, "Cartesian"), l));
    EXPECT_TRUE(same_components(comps(reg, "Nested", {-1}, "Cartesian"), l));
}

TEST(Calc, LetterRenamingInvariance) {
    Registry reg;
    basic(reg);
    calc(reg, R"("A", 2 x "PerfectFluid"["μν"]."NonSymmetric"["νρ"] + "Minkowski"["μρ"])");
    calc(reg, R"("B", 2 x "PerfectFluid"["αβ"]."NonSymmetric"["βγ"] + "Minkowski"["αγ"])");
    EXPECT_EQ(reg.get("A").reps.front().second, reg.get("B").reps.front().second);
    EXPECT_EQ(reg.get("A").defaultIndices, reg.get("B").defaultIndices);
}

TEST(Calc, Derivatives) {
    Registry reg;
    walkthrough(reg);
    calc(reg, R"(TPartialD["μ"]."Kretschmann"[""])");
    EXPECT_EQ(reg.get("Result").defaultCoords, "Spherical");
    EXPECT_TRUE(same_components(comps(reg, "Result", {-1}, "Spherical"),
                                std::vector<std::string>{"0", "-288*M^2/r^7", "0", "0"}));
    calc(reg, R"(PartialD["μ"]."Spherical"["μ"])");
    EXPECT_EQ(comps(reg, "Result", {}, "Spherical"), Components{Expr(4L)});
    reg.new_tensor("Constant", "Minkowski", "Cartesian", {}, Es({"c"}));
    calc(reg, R"(PartialD["μ"]."Constant"[""])");
    EXPECT_EQ(comps(reg, "Result", {-1}, "Cartesian"), Components(4, Expr(0L)));
}

TEST(Calc, CovariantDerivatives) {
    Registry reg;
    coordinates(reg);
    flrw(reg);
    calc(reg, R"(TCovariantD["μ"]."FLRW"["αβ"])");
    for (const auto& e : comps(reg, "Result", {-1, -1, -1}, "Spherical")) EXPECT_TRUE(e.is_zero_literal());
    calc_einstein(reg, "FLRW");
    calc(reg, R"(TCovariantD["μ"]."FLRWEinstein"["μν"])");
    for (const auto& e : comps(reg, "Result", {-1}, "Spherical")) EXPECT_TRUE(e.is_zero_literal()) << format_expr(e);

    reg.set_reserved_symbols({"ρ", "p"});
    reg.new_tensor("RestVelocity", "FLRW", "Spherical", {1}, Es({"1", "0", "0", "0"}), "u");
    calc(reg, R"("PerfectFluidFLRW", (ρ[t, r, θ, φ] + p[t, r, θ, φ]) "RestVelocity"["μ"]."RestVelocity"["ν"] +
                 p[t, r, θ, φ] "FLRW"["μν"], "T")");
    EXPECT_TRUE(same_components(comps(reg, "PerfectFluidFLRW", {1, 1}, "Spherical"),
                                diag({"ρ(t,r,θ,φ)", "p(t,r,θ,φ)*(1-k*r^2)/a(t)^2", "p(t,r,θ,φ)/(a(t)^2*r^2)",
                                      "p(t,r,θ,φ)/(a(t)^2*r^2*sin(θ)^2)"})));
    reg.change_default_indices("PerfectFluidFLRW", {1, 1});
    calc(reg, R"("FLRWConservation", TCovariantD["μ"]."PerfectFluidFLRW"["μν"])");
    EXPECT_EQ(reg.get("FLRWConservation").defaultIndices, (IndexConfig{1}));
    EXPECT_TRUE(same_components(
        comps(reg, "FLRWConservation", {1}, "Spherical"),
        std::vector<std::string>{
            "3*(ρ(t,r,θ,φ)+p(t,r,θ,φ))*a^(1)(t)/a(t) + ρ^(1,0,0,0)(t,r,θ,φ)",
            "(1-k*r^2)*p^(0,1,0,0)(t,r,θ,φ)/a(t)^2", "p^(0,0,1,0)(t,r,θ,φ)/(a(t)^2*r^2)",
            "p^(0,0,0,1)(t,r,θ,φ)/(a(t)^2*r^2*sin(θ)^2)"}));
}

TEST(Calc, ManualChristoffelMatchesBuiltin) {
    Registry reg;
    coordinates(reg);
    reg.new_metric("SimpleMetric", "Cartesian", diag({"-x", "1", "1", "1"}));
    calc(reg, R"("SimpleMetricManualChristoffel", 1/2 "SimpleMetric"["λσ"].(TPartial["μ"]."SimpleMetric"["νσ"] +
                 TPartial["ν"]."SimpleMetric"["σμ"] - TPartial["σ"]."SimpleMetric"["μν"]), "Γ")");
    calc_christoffel(reg, "SimpleMetric");
    EXPECT_TRUE(same_components(comps(reg, "SimpleMetricManualChristoffel", {1, -1, -1}, "Cartesian"),
                                comps(reg, "SimpleMetricChristoffel", {1, -1, -1}, "Cartesian")));
}

TEST(Calc, Errors) {
    Registry reg;
    walkthrough(reg);
    Components z(16, Expr(0L));
    reg.new_tensor("A", "Minkowski", "Cartesian", {-1, -1}, z);
    reg.new_tensor("B", "Minkowski", "Cartesian", {-1, -1}, z);
    EXPECT_EQ(code_of([&] { calc(reg, R"("A"["μν"] + "B"["αβ"])"); }), Errc::FreeIndexMismatch);
    EXPECT_EQ(code_of([&] { calc(reg, R"("X"["νμ"], "A"["μρ"])"); }), Errc::FreeIndexMismatch);
    EXPECT_EQ(code_of([&] { calc(reg, R"("A"["μν"] + "Schwarzschild"["μν"])"); }), Errc::MixedMetrics);
    EXPECT_EQ(code_of([&] { calc(reg, R"("Cartesian"["μ"] + "4-Velocity"["μ"])"); }), Errc::CoordinateAddition);
    EXPECT_EQ(code_of([&] { calc(reg, R"("A"["μ"])"); }), Errc::RankMismatch);
    EXPECT_EQ(code_of([&] { calc(reg, R"("A"["μμ"]."4-Velocity"["μ"])"); }), Errc::TripleIndex);
    EXPECT_EQ(code_of([&] { calc(reg, R"("4-Velocity"["μ"].PartialD["ν"])"); }), Errc::DanglingDerivative);
    EXPECT_EQ(code_of([&] { calc(reg, R"("Nope"["μ"])"); }), Errc::UnknownId);
    // Explicit targets respect the overwrite setting; "Result" is always replaceable.
    calc(reg, R"("A"["μν"])");
    calc(reg, R"("A"["μν"])");
    EXPECT_EQ(code_of([&] { calc(reg, R"("B", "A"["μν"])"); }), Errc::DuplicateId);
}

// Einstein-summation oracle on random two-dimensional metrics.
TEST(Calc, ContractionMatchesBruteForce) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-3, 3);
    auto num = [&] { return Expr(static_cast<long>(d(rng))); };
    for (int trial = 0; trial < 25; ++trial) {
        Registry reg;
        reg.new_coordinates("C", {"u", "w"});
        Components g;
        long a, b, c;
        do {
            a = d(rng), b = d(rng), c = d(rng);
        } while (a * c - b * b == 0);
        g = {Expr(a), Expr(b), Expr(b), Expr(c)};
        reg.new_metric("G", "C", g);
        Components x{num(), num(), num(), num()}, y{num(), num(), num(), num()};
        reg.new_tensor("X", "G", "C", {-1, -1}, x);
        reg.new_tensor("Y", "G", "C", {1, -1}, y);
        calc(reg, R"("X"["μν"]."Y"["νρ"])");
        // Y already has the contracted slot upper: R_{μρ} = Σ_ν X_{μν} Y^ν_ρ.
        Components out = reg.get("Result").reps.front().second;
        ASSERT_EQ(reg.get("Result").defaultIndices, (IndexConfig{-1, -1}));
        for (std::size_t m = 0; m < 2; ++m)
            for (std::size_t r = 0; r < 2; ++r) {
                Expr s(0L);
                for (std::size_t v = 0; v < 2; ++v) s = s + x[m * 2 + v] * y[v * 2 + r];
                EXPECT_EQ(simplify(s), out[m * 2 + r]);
            }
        // Both contracted slots lower: R_{μρ} = Σ X_{μν} g^{νσ} X_{σρ}.
        calc(reg, R"("X"["μν"]."X"["νρ"])");
        Components gi = invert_metric(g, 2);
        Components out2 = reg.get("Result").reps.front().second;
        for (std::size_t m = 0; m < 2; ++m)
            for (std::size_t r = 0; r < 2; ++r) {
                Expr s(0L);
                for (std::size_t v = 0; v < 2; ++v)
                    for (std::size_t w = 0; w < 2; ++w) s = s + x[m * 2 + v] * gi[v * 2 + w] * x[w * 2 + r];
                EXPECT_EQ(simplify(s), out2[m * 2 + r]);
            }
    }
}
