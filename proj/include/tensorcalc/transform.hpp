#pragma once

// Representation engine: coordinate transformations, raising/lowering,
// symbolic matrix algebra.

#include <string>
#include <utility>
#include <vector>

#include "tensorcalc/registry.hpp"

namespace tc {

using CoordRule = std::pair<std::string, Expr>;

// Rules map source symbols to expressions in the target symbols; source
// symbols without a rule map to themselves.
void add_coord_transformation(Registry& reg, const std::string& sourceId, const std::string& targetId,
                              const std::vector<CoordRule>& rules);

// Materializes (and caches) the representation of `id` with the given index
// configuration in the given coordinate system.
const Components& represent(Registry& reg, const std::string& id, const IndexConfig& indices,
                            const std::string& coordsId);

// n x n row-major matrices.
Expr determinant(const Components& m, std::size_t n, const Assumptions& a = {});
Components invert_matrix(const Components& m, std::size_t n, const Assumptions& a = {});
Components invert_metric(const Components& g, std::size_t n, const Assumptions& a = {});

// Strides and index helpers for dense dim^rank arrays.
std::size_t ipow(std::size_t dim, std::size_t rank);
std::vector<std::size_t> unflatten(std::size_t flat, std::size_t dim, std::size_t rank);
std::size_t flatten(const std::vector<std::size_t>& idx, std::size_t dim);

// Contracts slot `slot` of `t` with the matrix `m`: out[..a..] = sum_b m[a][b] t[..b..].
Components apply_to_slot(const Components& t, std::size_t dim, std::size_t rank, std::size_t slot,
                         const Components& m);

}  // namespace tc
