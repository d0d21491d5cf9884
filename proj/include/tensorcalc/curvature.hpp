#pragma once

// Curvature pipelines from a metric, plus line and volume elements.

#include <optional>
#include <string>

#include "tensorcalc/registry.hpp"

namespace tc {

// Each stage reuses an existing object under its derived ID and otherwise
// computes it in the metric's default coordinates. Returns the derived ID.
std::string calc_christoffel(Registry& reg, const std::string& metricId);
std::string calc_riemann(Registry& reg, const std::string& metricId);
std::string calc_ricci_tensor(Registry& reg, const std::string& metricId);
std::string calc_ricci_scalar(Registry& reg, const std::string& metricId);
std::string calc_einstein(Registry& reg, const std::string& metricId);

// Differentials are the symbols "d" + coordinate symbol.
Expr line_element(Registry& reg, const std::string& metricId,
                  const std::optional<std::string>& coordsId = std::nullopt);
Expr volume_element_squared(Registry& reg, const std::string& metricId,
                            const std::optional<std::string>& coordsId = std::nullopt);

}  // namespace tc
