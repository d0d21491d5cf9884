#pragma once

// Session files and component renderers.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tensorcalc/registry.hpp"

namespace tc {

using Json = nlohmann::ordered_json;

extern const char* const kOptionsKey;  // "$options"
extern const char* const kSessionExtension;  // ".ogre.json"

Json expr_to_json(const Expr& e);
Expr expr_from_json(const Json& j);

// {id: record}, holding exactly the cached representations.
Json export_tensor(const Registry& reg, const std::string& id);
// Every object in creation order plus the options record.
Json export_all(const Registry& reg);
void export_all_to_file(const Registry& reg, const std::string& path);

// Replaces every object and option.
void import_all(Registry& reg, const Json& session);
void import_all_from_file(Registry& reg, const std::string& path);
// Merges one {id: record} fragment; its metric and coordinates must exist.
std::string import_tensor(Registry& reg, const Json& fragment);

// Applied to every component before rendering.
using PostFn = std::function<Expr(const Expr&)>;

struct ListingGroup {
    // Flat indices with the sign relating each member to `value`.
    std::vector<std::pair<std::size_t, int>> members;
    Expr value;
};

// Groups the non-zero components that agree up to sign, in row-major order.
std::vector<ListingGroup> group_components(const Components& c, const Assumptions& a = {});

std::string show(Registry& reg, const std::string& id, std::optional<IndexConfig> indices = std::nullopt,
                 std::optional<std::string> coords = std::nullopt, const PostFn& post = {}, Style style = Style::Plain);
std::string list_components(Registry& reg, const std::string& id, std::optional<IndexConfig> indices = std::nullopt,
                            std::optional<std::string> coords = std::nullopt, const PostFn& post = {},
                            Style style = Style::Plain);

}  // namespace tc
