#include "quaydeck/tag.hpp"

#include <cctype>

namespace quaydeck {

std::string to_string(const ContainerTag& tag) {
    std::string letters;
    int n = tag.tier_label;
    while (n > 0) {
        --n;
        letters.insert(letters.begin(), static_cast<char>('A' + n % 26));
        n /= 26;
    }
    return std::to_string(tag.ship_stack) + letters;
}

std::optional<ContainerTag> parse_tag(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        ++i;
    if (i == 0 || i == text.size())
        return std::nullopt;
    int stack = 0;
    for (std::size_t k = 0; k < i; ++k)
        stack = stack * 10 + (text[k] - '0');
    int tier = 0;
    for (std::size_t k = i; k < text.size(); ++k) {
        const char c = text[k];
        if (c < 'A' || c > 'Z')
            return std::nullopt;
        tier = tier * 26 + (c - 'A' + 1);
    }
    if (stack < 1 || tier < 1)
        return std::nullopt;
    return ContainerTag{stack, tier};
}

} // namespace quaydeck
