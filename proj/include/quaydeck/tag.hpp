#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace quaydeck {

/// Identity of a ship-bound container: which ship stack it belongs to and its
/// position in that stack's loading order (1 = loaded first, i.e. bottom-most).
/// Rendered as "<stack><letter>", e.g. "3A" = stack 3, first position.
struct ContainerTag {
    int ship_stack = 0; // 1-based
    int tier_label = 0; // 1-based

    friend auto operator<=>(const ContainerTag&, const ContainerTag&) = default;
};

/// Renders tier labels A..Z, AA, AB, ... for positions beyond 26.
std::string to_string(const ContainerTag& tag);

/// Parses "<digits><letters>"; returns nullopt for anything else
/// (including the foreign-container marker "b").
std::optional<ContainerTag> parse_tag(std::string_view text);

/// Dense key usable for hashing / map lookups.
constexpr std::uint64_t tag_key(const ContainerTag& tag) {
    return (static_cast<std::uint64_t>(tag.ship_stack) << 32) |
           static_cast<std::uint32_t>(tag.tier_label);
}

} // namespace quaydeck
