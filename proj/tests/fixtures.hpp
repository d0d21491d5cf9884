#pragma once

// Sessions shared by the unit and acceptance tests.

#include <string>
#include <vector>

#include "tensorcalc/registry.hpp"
#include "tensorcalc/text.hpp"
#include "tensorcalc/transform.hpp"

namespace tc::fixtures {

inline Expr E(const std::string& s) { return parse_expr(s); }

inline Components Es(const std::vector<std::string>& v) {
    Components out;
    for (const auto& s : v) out.push_back(parse_expr(s));
    return out;
}

inline Components diag(const std::vector<std::string>& d) {
    std::size_t n = d.size();
    Components m(n * n, Expr(0L));
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] = parse_expr(d[i]);
    return m;
}

inline void coordinates(Registry& reg) {
    reg.new_coordinates("Cartesian", {"t", "x", "y", "z"});
    reg.new_coordinates("Spherical", {"t", "r", "θ", "φ"});
    add_coord_transformation(reg, "Cartesian", "Spherical",
                             {{"x", E("r*sin(θ)*cos(φ)")}, {"y", E("r*sin(θ)*sin(φ)")}, {"z", E("r*cos(θ)")}});
    add_coord_transformation(reg, "Spherical", "Cartesian",
                             {{"r", E("sqrt(x^2+y^2+z^2)")},
                              {"θ", E("arccos(z/sqrt(x^2+y^2+z^2))")},
                              {"φ", E("arctan2(x, y)")}});
}

inline void minkowski(Registry& reg) { reg.new_metric("Minkowski", "Cartesian", diag({"-1", "1", "1", "1"}), "η"); }

inline void schwarzschild(Registry& reg) {
    reg.set_reserved_symbols({"M"});
    reg.new_metric("Schwarzschild", "Spherical",
                   diag({"-(1-2*M/r)", "1/(1-2*M/r)", "r^2", "r^2*sin(θ)^2"}));
}

inline void alcubierre(Registry& reg) {
    reg.set_reserved_symbols({"v", "f"});
    Components g(16, Expr(0L));
    g[0] = E("-1 + v(t)^2*f(t,x,y,z)^2");
    g[3] = g[12] = E("-v(t)*f(t,x,y,z)");
    g[5] = g[10] = g[15] = Expr(1L);
    reg.new_metric("Alcubierre", "Cartesian", g);
}

inline void flrw(Registry& reg) {
    reg.set_reserved_symbols({"a", "k"});
    reg.new_metric("FLRW", "Spherical",
                   diag({"-1", "a(t)^2/(1-k*r^2)", "a(t)^2*r^2", "a(t)^2*r^2*sin(θ)^2"}));
}

// The documentation walkthrough up to the point where the session holds
// nine objects.
inline void walkthrough(Registry& reg) {
    coordinates(reg);
    minkowski(reg);
    schwarzschild(reg);
    alcubierre(reg);
    reg.new_tensor("Kretschmann", "Schwarzschild", "Spherical", {}, Es({"48*M^2/r^6"}), "K");
    reg.set_reserved_symbols({"ρ", "p"});
    reg.new_tensor("PerfectFluid", "Minkowski", "Cartesian", {1, 1}, diag({"ρ", "p", "p", "p"}), "T");
    reg.new_tensor("FourVelocity", "Minkowski", "Cartesian", {1},
                   Es({"1/sqrt(1-v^2)", "v/sqrt(1-v^2)", "0", "0"}));
    reg.change_id("FourVelocity", "4-Velocity");
    reg.change_symbol("4-Velocity", "u");
    reg.change_default_indices("PerfectFluid", {-1, -1});
    reg.change_default_coords("PerfectFluid", "Spherical");
    reg.new_tensor("SpatialDistance", "Minkowski", "Cartesian", {}, Es({"sqrt(x^2+y^2+z^2)"}), "d");
}

}  // namespace tc::fixtures
