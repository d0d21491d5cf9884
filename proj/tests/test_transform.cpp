#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "tensorcalc/error.hpp"
#include "tensorcalc/numeric.hpp"
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

Assumptions r_nonneg() {
    Assumptions a;
    a.add(parse_predicate("r >= 0"));
    return a;
}

// Independent oracle: plain nested-loop matrix product.
Components matmul(const Components& a, const Components& b, std::size_t n) {
    Components out(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Expr s(0L);
            for (std::size_t k = 0; k < n; ++k) s = s + a[i * n + k] * b[k * n + j];
            out[i * n + j] = s;
        }
    return out;
}

Components identity(std::size_t n) { return diag(std::vector<std::string>(n, "1")); }

}  // namespace

TEST(Transform, WorkedRepresentations) {
    Registry reg;
    walkthrough(reg);
    EXPECT_TRUE(same_components(represent(reg, "Minkowski", {-1, -1}, "Spherical"),
                                diag({"-1", "1", "r^2", "r^2*sin(θ)^2"})));
    EXPECT_TRUE(same_components(represent(reg, "4-Velocity", {-1}, "Cartesian"),
                                std::vector<std::string>{"-1/sqrt(1-v^2)", "v/sqrt(1-v^2)", "0", "0"}));
    EXPECT_EQ(represent(reg, "Schwarzschild", {1, -1}, "Spherical"), identity(4));
    EXPECT_TRUE(same_components(represent(reg, "Schwarzschild", {1, 1}, "Spherical"),
                                diag({"r/(2*M-r)", "1-2*M/r", "1/r^2", "csc(θ)^2/r^2"})));
    const Components& k = represent(reg, "Kretschmann", {}, "Cartesian");
    EXPECT_EQ(format_expr(k[0]), "48*M^2/(x^2 + y^2 + z^2)^3");
    EXPECT_TRUE(same_components(represent(reg, "PerfectFluid", {1, 1}, "Spherical"),
                                diag({"ρ", "p", "p/r^2", "p*csc(θ)^2/r^2"})));
}

TEST(Transform, JacobianListing) {
    Registry reg;
    coordinates(reg);
    const CoordTransformation& tr = *reg.coords("Cartesian").transformation_to("Spherical");
    // Row of x: (0, cos φ sin θ, r cos θ cos φ, -r sin θ sin φ).
    EXPECT_TRUE(same_components(Components(tr.jacobians.J.begin() + 4, tr.jacobians.J.begin() + 8),
                                std::vector<std::string>{"0", "cos(φ)*sin(θ)", "r*cos(θ)*cos(φ)", "-r*sin(θ)*sin(φ)"}));
    EXPECT_TRUE(same_components(Components(tr.jacobians.Jinv.begin() + 8, tr.jacobians.Jinv.begin() + 12),
                                std::vector<std::string>{"0", "cos(θ)*cos(φ)/r", "cos(θ)*sin(φ)/r", "-sin(θ)/r"}));
}

TEST(Transform, JacobianConsistency) {
    Registry reg;
    coordinates(reg);
    for (auto [s, t] : {std::pair{"Cartesian", "Spherical"}, std::pair{"Spherical", "Cartesian"}}) {
        const JacobianSet& j = reg.coords(s).transformation_to(t)->jacobians;
        EXPECT_TRUE(same_components(matmul(j.J, j.Jinv, 4), identity(4))) << s << "->" << t;
        for (std::size_t l = 0; l < 4; ++l)
            for (std::size_t m = 0; m < 4; ++m)
                for (std::size_t n = 0; n < 4; ++n)
                    EXPECT_TRUE(same_components({j.d2[l * 16 + m * 4 + n]}, Components{j.d2[l * 16 + n * 4 + m]}));
    }
}

TEST(Transform, IdentityTransformation) {
    Registry reg;
    reg.new_coordinates("A", {"u", "w"});
    reg.new_coordinates("B", {"u", "w"});
    add_coord_transformation(reg, "A", "B", {});
    const JacobianSet& j = reg.coords("A").transformation_to("B")->jacobians;
    EXPECT_EQ(j.J, identity(2));
    EXPECT_EQ(j.Jinv, identity(2));
    for (const auto& e : j.d2) EXPECT_TRUE(e.is_zero_literal());
}

TEST(Transform, TransformationErrors) {
    Registry reg;
    coordinates(reg);
    reg.new_coordinates("Polar", {"ρ", "ϕ"});
    reg.new_coordinates("Other", {"t", "u", "w", "s"});
    EXPECT_EQ(code_of([&] { add_coord_transformation(reg, "Cartesian", "Polar", {}); }), Errc::DimensionMismatch);
    EXPECT_EQ(code_of([&] { add_coord_transformation(reg, "Cartesian", "Nope", {}); }), Errc::UnknownCoords);
    EXPECT_EQ(code_of([&] { add_coord_transformation(reg, "Cartesian", "Spherical", {{"r", E("x")}}); }),
              Errc::RuleTargetsNonSourceSymbol);
    minkowski(reg);
    EXPECT_EQ(code_of([&] { represent(reg, "Minkowski", {-1, -1}, "Other"); }), Errc::NoTransformPath);
    EXPECT_EQ(code_of([&] { represent(reg, "Minkowski", {-1}, "Cartesian"); }), Errc::RankMismatch);
    EXPECT_EQ(code_of([&] { represent(reg, "Cartesian", {1}, "Spherical"); }), Errc::RoleForbidden);
}

TEST(Transform, InvertMetric) {
    EXPECT_EQ(invert_metric(diag({"-1", "1", "1", "1"}), 4), diag({"-1", "1", "1", "1"}));
    EXPECT_EQ(code_of([&] { invert_metric(diag({"1", "0"}), 2); }), Errc::Singular);
    Registry reg;
    coordinates(reg);
    alcubierre(reg);
    Components g = represent(reg, "Alcubierre", {-1, -1}, "Cartesian");
    Components inv = invert_metric(g, 4);
    Components prod = matmul(g, inv, 4);
    // Numeric check of g g^-1 = 1 at 20 points, supplying v and f.
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int k = 0; k < 20; ++k) {
        double c1 = u(rng), c2 = u(rng);
        std::map<std::string, FuncImpl> funcs{
            {"v", [=](const std::vector<double>& a) { return c1 + 0.5 * std::sin(a[0]); }},
            {"f", [=](const std::vector<double>& a) { return c2 * std::cos(a[0] + a[1] - a[2] * a[3]); }},
        };
        std::map<std::string, double> b{{"t", u(rng)}, {"x", u(rng)}, {"y", u(rng)}, {"z", u(rng)}};
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                EXPECT_NEAR(eval_numeric(prod[i * 4 + j], b, funcs), i == j ? 1.0 : 0.0, 1e-9);
    }
}

TEST(Transform, LargeMatrixInverse) {
    // Gaussian elimination path (dimension above four).
    Components m = diag({"1", "2", "a", "b", "c"});
    m[1] = m[5] = E("a");
    m[23] = m[19] = E("1");
    Components inv = invert_matrix(m, 5);
    EXPECT_TRUE(same_components(matmul(m, inv, 5), identity(5)));
    Expr det = determinant(m, 5);
    EXPECT_TRUE(same_components({det}, Components{E("(2 - a^2)*a*(b*c - 1)")}));
}

TEST(Transform, RaiseThenLower) {
    Registry reg;
    walkthrough(reg);
    const Assumptions a = r_nonneg();
    for (const char* id : {"PerfectFluid", "4-Velocity"}) {
        const TensorObject& o = reg.get(id);
        IndexConfig base = o.reps.front().first.indices;
        Components orig = o.reps.front().second;
        for (std::size_t s = 0; s < base.size(); ++s) {
            IndexConfig flipped = base;
            flipped[s] = -flipped[s];
            Components moved = represent(reg, id, flipped, "Cartesian");
            // Move the slot back by hand with the metric, independently of the cache.
            Components g = represent(reg, "Minkowski", base[s] < 0 ? IndexConfig{-1, -1} : IndexConfig{1, 1}, "Cartesian");
            Components back = apply_to_slot(moved, 4, base.size(), s, g);
            EXPECT_TRUE(same_components(back, orig, a)) << id << " slot " << s;
        }
    }
    // Schwarzschild inverse metric raised twice gives back the lower metric.
    Components gu = represent(reg, "Schwarzschild", {1, 1}, "Spherical");
    Components gl = represent(reg, "Schwarzschild", {-1, -1}, "Spherical");
    EXPECT_TRUE(same_components(matmul(matmul(gl, gu, 4), gl, 4), gl));
}

TEST(Transform, CoordinateRoundTrip) {
    Registry reg;
    walkthrough(reg);
    Assumptions a = r_nonneg();
    reg.add_assumption(parse_predicate("r >= 0"));
    struct Case {
        const char* id;
        IndexConfig indices;
    };
    for (const Case& c : {Case{"Minkowski", {-1, -1}}, Case{"4-Velocity", {1}}, Case{"SpatialDistance", {}}}) {
        Components orig = represent(reg, c.id, c.indices, "Cartesian");
        Components sph = represent(reg, c.id, c.indices, "Spherical");
        std::string copy = std::string(c.id) + "Sph";
        reg.new_tensor(copy, "Minkowski", "Spherical", c.indices, sph);
        Components back = represent(reg, copy, c.indices, "Cartesian");
        EXPECT_TRUE(same_components(back, orig, a)) << c.id;
    }
}

TEST(Transform, CacheCoherence) {
    Registry reg;
    walkthrough(reg);
    Components first = represent(reg, "PerfectFluid", {1, -1}, "Spherical");
    Components second = represent(reg, "PerfectFluid", {1, -1}, "Spherical");
    EXPECT_EQ(first, second);
    EXPECT_TRUE(reg.get("PerfectFluid").find({1, -1}, "Spherical"));
}

TEST(Transform, SourceSearchUsesCachedRepresentations) {
    Registry reg;
    coordinates(reg);
    reg.new_coordinates("Shifted", {"t", "r", "θ", "φ"});
    // Only Spherical -> Shifted exists; the tensor's defaults are Cartesian.
    add_coord_transformation(reg, "Spherical", "Shifted", {{"t", E("t - 1")}});
    minkowski(reg);
    EXPECT_EQ(code_of([&] { represent(reg, "Minkowski", {-1, -1}, "Shifted"); }), Errc::NoTransformPath);
    represent(reg, "Minkowski", {-1, -1}, "Spherical");
    EXPECT_TRUE(same_components(represent(reg, "Minkowski", {-1, -1}, "Shifted"),
                                diag({"-1", "1", "r^2", "r^2*sin(θ)^2"})));
}

TEST(Transform, ParallelSimplificationMatchesSerial) {
    Registry serial, parallel;
    walkthrough(serial);
    walkthrough(parallel);
    parallel.set_workers(4);
    parallel.set_parallelize(true);
    for (const char* id : {"PerfectFluid", "Alcubierre"}) {
        EXPECT_EQ(represent(serial, id, {1, 1}, "Spherical"), represent(parallel, id, {1, 1}, "Spherical")) << id;
    }
}
