#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tcc {

/// Face / site color. The order red < green < blue is used for canonical serialization.
enum class Color : std::uint8_t { red = 0, green = 1, blue = 2 };

inline constexpr std::array<Color, 3> kColors = {Color::red, Color::green, Color::blue};

inline constexpr std::size_t color_index(Color c) { return static_cast<std::size_t>(c); }

/// The color different from both arguments. Requires a != b.
inline constexpr Color third_color(Color a, Color b) {
    return static_cast<Color>(3 - color_index(a) - color_index(b));
}

inline constexpr char color_char(Color c) {
    switch (c) {
        case Color::red: return 'r';
        case Color::green: return 'g';
        case Color::blue: return 'b';
    }
    return '?';
}

inline Color parse_color(std::string_view s) {
    if (s == "r") return Color::red;
    if (s == "g") return Color::green;
    if (s == "b") return Color::blue;
    throw std::invalid_argument("unknown color '" + std::string(s) + "' (expected r, g or b)");
}

}  // namespace tcc
