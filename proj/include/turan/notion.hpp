#pragma once

#include <optional>
#include <string_view>

namespace turan {

/// The three density notions: three vertex sets (vvv), a vertex set and a
/// set of ordered pairs (ev), two sets of ordered pairs glued at the middle
/// coordinate (ee).
enum class Notion { vvv, ev, ee };

constexpr std::string_view name(Notion n)
{
    switch (n) {
    case Notion::vvv:
        return "vvv";
    case Notion::ev:
        return "ev";
    case Notion::ee:
        return "ee";
    }
    return "?";
}

/// Display symbols used in reports: ⋯, ·:, ::
constexpr std::string_view symbol(Notion n)
{
    switch (n) {
    case Notion::vvv:
        return "⋯";
    case Notion::ev:
        return "·:";
    case Notion::ee:
        return "::";
    }
    return "?";
}

inline std::optional<Notion> parse_notion(std::string_view s)
{
    if (s == "vvv")
        return Notion::vvv;
    if (s == "ev")
        return Notion::ev;
    if (s == "ee")
        return Notion::ee;
    return std::nullopt;
}

} // namespace turan
