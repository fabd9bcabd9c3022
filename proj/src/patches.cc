#include "tcc/patches.h"

#include <map>

#include "tcc/errors.h"

namespace tcc {

namespace {

long positive_mod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

std::array<std::size_t, 3> by_color(const std::vector<Color>& colors, std::array<std::size_t, 3> sites) {
    std::array<std::size_t, 3> out{};
    for (std::size_t s : sites) out[color_index(colors[s])] = s;
    return out;
}

}  // namespace

DualTriangulation triangular_patch(const std::vector<TriCoord>& sites) {
    DualTriangulation dual;
    dual.closed = false;
    std::map<TriCoord, std::size_t> index;
    for (const auto& c : sites) {
        if (!index.emplace(c, dual.site_colors.size()).second) {
            throw InvalidLattice("triangular_patch: duplicate site");
        }
        dual.site_colors.push_back(static_cast<Color>(positive_mod(c.first + c.second, 3)));
    }
    auto lookup = [&](long i, long j) -> std::size_t {
        auto it = index.find({i, j});
        return it == index.end() ? SIZE_MAX : it->second;
    };
    for (const auto& [i, j] : sites) {
        const std::array<std::array<TriCoord, 3>, 2> shapes = {{
            {{{i, j}, {i + 1, j}, {i + 1, j + 1}}},
            {{{i, j}, {i, j + 1}, {i + 1, j + 1}}},
        }};
        for (const auto& shape : shapes) {
            std::array<std::size_t, 3> tri{};
            bool present = true;
            for (std::size_t k = 0; k < 3; ++k) {
                tri[k] = lookup(shape[k].first, shape[k].second);
                present = present && tri[k] != SIZE_MAX;
            }
            if (present) dual.triangles.push_back(by_color(dual.site_colors, tri));
        }
    }
    return dual;
}

DualTriangulation hexagon_patch() {
    return triangular_patch({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}});
}

DualTriangulation single_triangle_patch() { return triangular_patch({{0, 0}, {1, 0}, {1, 1}}); }

DualTriangulation triangular_parallelogram_patch(std::size_t width, std::size_t height) {
    if (width < 2 || height < 2) throw InvalidLattice("parallelogram patch needs width, height >= 2");
    std::vector<TriCoord> sites;
    for (long j = 0; j < static_cast<long>(height); ++j) {
        for (long i = 0; i < static_cast<long>(width); ++i) sites.emplace_back(i, j);
    }
    return triangular_patch(sites);
}

DualTriangulation union_jack_patch(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) throw InvalidLattice("Union Jack patch needs at least one cell");
    DualTriangulation dual;
    dual.closed = false;
    const std::size_t cw = cols + 1;
    auto corner = [&](std::size_t i, std::size_t j) { return j * cw + i; };
    for (std::size_t j = 0; j <= rows; ++j) {
        for (std::size_t i = 0; i <= cols; ++i) {
            dual.site_colors.push_back((i + j) % 2 == 0 ? Color::red : Color::green);
        }
    }
    const std::size_t center0 = dual.site_colors.size();
    for (std::size_t k = 0; k < rows * cols; ++k) dual.site_colors.push_back(Color::blue);
    for (std::size_t j = 0; j < rows; ++j) {
        for (std::size_t i = 0; i < cols; ++i) {
            const std::size_t c = center0 + j * cols + i;
            const std::size_t bl = corner(i, j), br = corner(i + 1, j);
            const std::size_t tr = corner(i + 1, j + 1), tl = corner(i, j + 1);
            for (auto [a, b] : {std::pair{bl, br}, std::pair{br, tr}, std::pair{tr, tl}, std::pair{tl, bl}}) {
                dual.triangles.push_back(by_color(dual.site_colors, {c, a, b}));
            }
        }
    }
    return dual;
}

}  // namespace tcc
