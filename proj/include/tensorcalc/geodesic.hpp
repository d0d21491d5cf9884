#pragma once

// Curve Lagrangian and geodesic equations over coordinates promoted to
// functions of the curve parameter.

#include <optional>
#include <string>

#include "tensorcalc/registry.hpp"

namespace tc {

std::string calc_lagrangian(Registry& reg, const std::string& metricId,
                            const std::optional<std::string>& coordsId = std::nullopt);
// Component μ: ½∂L/∂x^μ − ∂_λ(½∂L/∂ẋ^μ), with the λ-derivative deferred.
std::string geodesic_from_lagrangian(Registry& reg, const std::string& metricId,
                                     const std::optional<std::string>& coordsId = std::nullopt);
// Component σ: ẍ^σ + Γ^σ_μν ẋ^μ ẋ^ν.
std::string geodesic_from_christoffel(Registry& reg, const std::string& metricId,
                                      const std::optional<std::string>& coordsId = std::nullopt);

// Evaluates deferred derivatives in every cached representation.
std::string activate_tensor(Registry& reg, const std::string& id);

// An empty symbol restores the default. Cached curve objects are rewritten.
std::string set_curve_parameter(Registry& reg, const std::string& symbol);

// x -> x(λ) for each coordinate symbol.
Expr promote_coordinates(const Expr& e, const std::vector<std::string>& coords, const std::string& parameter);
Expr rename_parameter(const Expr& e, const std::string& from, const std::string& to);

}  // namespace tc
