#include "tcc/colex.h"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "tcc/errors.h"

namespace tcc {

namespace {

std::pair<std::size_t, std::size_t> ordered(std::size_t a, std::size_t b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

long positive_mod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

/// Consecutive vertex pairs along a face: cyclic for complete faces, a path for partial ones.
std::vector<std::pair<std::size_t, std::size_t>> face_sides(const Face& f) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    const std::size_t n = f.verts.size();
    if (n < 2) return out;
    const std::size_t count = f.partial ? n - 1 : n;
    for (std::size_t k = 0; k < count; ++k) out.emplace_back(f.verts[k], f.verts[(k + 1) % n]);
    return out;
}

}  // namespace

std::vector<std::vector<std::size_t>> Colex2::vertex_faces() const {
    std::vector<std::vector<std::size_t>> out(num_vertices);
    for (std::size_t f = 0; f < faces.size(); ++f) {
        for (std::size_t v : faces[f].verts) {
            if (v < num_vertices) out[v].push_back(f);
        }
    }
    return out;
}

std::vector<std::size_t> Colex2::vertex_degrees() const {
    std::vector<std::size_t> deg(num_vertices, 0);
    for (const auto& e : edges) {
        if (e.a < num_vertices) ++deg[e.a];
        if (e.b < num_vertices) ++deg[e.b];
    }
    return deg;
}

std::vector<std::vector<std::size_t>> DualTriangulation::site_triangles() const {
    std::vector<std::vector<std::size_t>> out(site_colors.size());
    for (std::size_t t = 0; t < triangles.size(); ++t) {
        for (std::size_t s : triangles[t]) {
            if (s < out.size()) out[s].push_back(t);
        }
    }
    return out;
}

std::size_t BorderedColex::num_complete_faces() const {
    return static_cast<std::size_t>(
        std::count_if(colex.faces.begin(), colex.faces.end(), [](const Face& f) { return !f.partial; }));
}

std::size_t BorderedColex::num_partial_faces() const {
    return colex.faces.size() - num_complete_faces();
}

bool LatticeReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
}

const ValidationCheck* LatticeReport::find(const std::string& name) const {
    for (const auto& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

Colex2 colex_from_face_cycles(std::size_t num_vertices, std::vector<Face> faces) {
    Colex2 colex;
    colex.num_vertices = num_vertices;
    colex.closed = std::none_of(faces.begin(), faces.end(), [](const Face& f) { return f.partial; });
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> side_faces;
    std::vector<std::pair<std::size_t, std::size_t>> first_seen;
    for (std::size_t f = 0; f < faces.size(); ++f) {
        for (auto [a, b] : face_sides(faces[f])) {
            auto key = ordered(a, b);
            auto& list = side_faces[key];
            if (list.empty()) first_seen.push_back(key);
            list.push_back(f);
        }
    }
    for (const auto& key : first_seen) {
        const auto& list = side_faces[key];
        if (list.size() != 2) {
            throw InvalidLattice("edge (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                                 ") borders " + std::to_string(list.size()) + " faces, expected 2");
        }
        const Color c0 = faces[list[0]].color;
        const Color c1 = faces[list[1]].color;
        if (c0 == c1) {
            throw InvalidLattice("faces " + std::to_string(list[0]) + " and " + std::to_string(list[1]) +
                                 " share an edge and a color");
        }
        colex.edges.push_back(Edge{key.first, key.second, third_color(c0, c1)});
    }
    colex.faces = std::move(faces);
    return colex;
}

Colex2 build_hex_torus(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) throw InvalidLattice("hex torus dimensions must be positive");
    if (cols % 3 != 0) {
        throw InvalidLattice("hex torus with cols = " + std::to_string(cols) +
                             " is not 3-face-colorable: cols must be a multiple of 3");
    }
    const long R = static_cast<long>(rows);
    const long C = static_cast<long>(cols);
    const long shift = positive_mod(-R, 3);
    auto site = [&](long i, long j) {
        const long k = floor_div(j, R);
        j -= k * R;
        i -= k * shift;
        return static_cast<std::size_t>(j * C + positive_mod(i, C));
    };
    auto color_of = [&](long i, long j) { return static_cast<Color>(positive_mod(i + j, 3)); };
    // Constructive coloring check: every lattice coordinate in the star of a
    // fundamental-domain site must agree with the color of its representative.
    for (long j = 0; j < R; ++j) {
        for (long i = 0; i < C; ++i) {
            for (long dj = -1; dj <= 1; ++dj) {
                for (long di = -1; di <= 1; ++di) {
                    const std::size_t s = site(i + di, j + dj);
                    const long si = static_cast<long>(s % cols);
                    const long sj = static_cast<long>(s / cols);
                    if (color_of(si, sj) != color_of(i + di, j + dj)) {
                        throw InvalidLattice("hex torus " + std::to_string(rows) + "x" + std::to_string(cols) +
                                             " has no consistent 3-face-coloring");
                    }
                }
            }
        }
    }
    auto up = [&](long i, long j) { return 2 * site(i, j); };
    auto down = [&](long i, long j) { return 2 * site(i, j) + 1; };
    std::vector<Face> faces;
    faces.reserve(rows * cols);
    for (long j = 0; j < R; ++j) {
        for (long i = 0; i < C; ++i) {
            Face f;
            f.color = color_of(i, j);
            f.verts = {up(i, j),          down(i, j),     up(i - 1, j),
                       down(i - 1, j - 1), up(i - 1, j - 1), down(i, j - 1)};
            faces.push_back(std::move(f));
        }
    }
    return colex_from_face_cycles(2 * rows * cols, std::move(faces));
}

Colex2 build_48_torus(std::size_t rows, std::size_t cols) {
    if (rows < 2 || cols < 2 || rows % 2 != 0 || cols % 2 != 0) {
        throw InvalidLattice("4-8 torus " + std::to_string(rows) + "x" + std::to_string(cols) +
                             " is not 3-face-colorable: rows and cols must be even and >= 2");
    }
    const long R = static_cast<long>(rows);
    const long C = static_cast<long>(cols);
    auto cell = [&](long i, long j) {
        return static_cast<std::size_t>(positive_mod(j, R) * C + positive_mod(i, C));
    };
    auto bottom = [&](long i, long j) { return 4 * cell(i, j); };
    auto right = [&](long i, long j) { return 4 * cell(i, j) + 1; };
    auto top = [&](long i, long j) { return 4 * cell(i, j) + 2; };
    auto left = [&](long i, long j) { return 4 * cell(i, j) + 3; };
    std::vector<Face> faces;
    faces.reserve(2 * rows * cols);
    for (long j = 0; j < R; ++j) {
        for (long i = 0; i < C; ++i) {
            Face f;
            f.color = positive_mod(i + j, 2) == 0 ? Color::red : Color::green;
            f.verts = {bottom(i, j),       left(i, j),          right(i - 1, j), bottom(i - 1, j),
                       top(i - 1, j - 1), right(i - 1, j - 1), left(i, j - 1),  top(i, j - 1)};
            faces.push_back(std::move(f));
        }
    }
    for (long j = 0; j < R; ++j) {
        for (long i = 0; i < C; ++i) {
            Face f;
            f.color = Color::blue;
            f.verts = {bottom(i, j), right(i, j), top(i, j), left(i, j)};
            faces.push_back(std::move(f));
        }
    }
    return colex_from_face_cycles(4 * rows * cols, std::move(faces));
}

DualTriangulation build_dual(const Colex2& colex) {
    const LatticeReport report = validate(colex);
    if (!report.all_passed()) {
        for (const auto& c : report.checks) {
            if (!c.passed) throw InvalidLattice("cannot dualize invalid colex: " + c.name + " failed: " + c.detail);
        }
    }
    DualTriangulation dual;
    dual.closed = colex.closed;
    for (const auto& f : colex.faces) dual.site_colors.push_back(f.color);
    const auto vf = colex.vertex_faces();
    dual.triangles.reserve(colex.num_vertices);
    for (std::size_t v = 0; v < colex.num_vertices; ++v) {
        std::array<std::size_t, 3> tri{};
        for (std::size_t f : vf[v]) tri[color_index(colex.faces[f].color)] = f;
        dual.triangles.push_back(tri);
    }
    const std::size_t nf = colex.faces.size();
    const std::size_t nv = colex.num_vertices;
    dual.face_of_site.resize(nf);
    dual.site_of_face.resize(nf);
    dual.vertex_of_triangle.resize(nv);
    dual.triangle_of_vertex.resize(nv);
    for (std::size_t i = 0; i < nf; ++i) dual.face_of_site[i] = dual.site_of_face[i] = i;
    for (std::size_t t = 0; t < nv; ++t) dual.vertex_of_triangle[t] = dual.triangle_of_vertex[t] = t;
    return dual;
}

BorderedColex build_bordered(const DualTriangulation& dual) {
    if (dual.closed) throw InvalidLattice("build_bordered requires a patch with border; got a closed triangulation");
    if (dual.triangles.empty()) throw InvalidLattice("build_bordered: patch has no triangles");
    const LatticeReport dual_report = validate(dual);
    for (const auto& c : dual_report.checks) {
        if (!c.passed) throw InvalidLattice("invalid dual patch: " + c.name + " failed: " + c.detail);
    }
    const std::size_t ns = dual.num_sites();
    const std::size_t nt = dual.num_triangles();
    const auto st = dual.site_triangles();

    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> pair_triangles;
    for (std::size_t t = 0; t < nt; ++t) {
        const auto& tri = dual.triangles[t];
        for (auto [x, y] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
            pair_triangles[ordered(tri[x], tri[y])].push_back(t);
        }
    }
    for (const auto& [key, list] : pair_triangles) {
        if (list.size() > 2) {
            throw InvalidLattice("dual edge (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                                 ") is shared by more than two triangles");
        }
    }

    std::vector<Face> faces(ns);
    for (std::size_t s = 0; s < ns; ++s) {
        Face& face = faces[s];
        face.color = dual.site_colors[s];
        // Triangles around s are adjacent when they share a dual edge through s.
        std::map<std::size_t, std::vector<std::size_t>> adjacency;
        bool on_border = false;
        for (std::size_t t : st[s]) {
            for (std::size_t other : dual.triangles[t]) {
                if (other == s) continue;
                const auto& shared = pair_triangles[ordered(s, other)];
                if (shared.size() == 1) on_border = true;
                for (std::size_t u : shared) {
                    if (u != t) adjacency[t].push_back(u);
                }
            }
        }
        face.partial = on_border;
        std::set<std::size_t> visited;
        std::vector<std::size_t> remaining = st[s];
        while (visited.size() < st[s].size()) {
            // Start a new walk at a fan end if there is one, otherwise at the lowest index.
            std::size_t start = SIZE_MAX;
            for (std::size_t t : remaining) {
                if (visited.count(t)) continue;
                if (start == SIZE_MAX) start = t;
                if (adjacency[t].size() < 2) {
                    start = t;
                    break;
                }
            }
            std::size_t cur = start;
            while (cur != SIZE_MAX) {
                visited.insert(cur);
                face.verts.push_back(cur);
                std::size_t next = SIZE_MAX;
                for (std::size_t u : adjacency[cur]) {
                    if (!visited.count(u) && u < next) next = u;
                }
                cur = next;
            }
        }
    }

    std::vector<Edge> edges;
    for (std::size_t t = 0; t < nt; ++t) {
        const auto& tri = dual.triangles[t];
        for (auto [x, y] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
            const auto& shared = pair_triangles[ordered(tri[x], tri[y])];
            for (std::size_t u : shared) {
                if (u > t) {
                    edges.push_back(Edge{t, u, third_color(dual.site_colors[tri[x]], dual.site_colors[tri[y]])});
                }
            }
        }
    }

    BorderedColex out;
    out.colex.num_vertices = nt;
    out.colex.edges = std::move(edges);
    out.colex.faces = std::move(faces);
    out.colex.closed = false;
    out.source = dual;
    out.source.face_of_site.resize(ns);
    out.source.site_of_face.resize(ns);
    out.source.vertex_of_triangle.resize(nt);
    out.source.triangle_of_vertex.resize(nt);
    for (std::size_t i = 0; i < ns; ++i) out.source.face_of_site[i] = out.source.site_of_face[i] = i;
    for (std::size_t t = 0; t < nt; ++t) out.source.vertex_of_triangle[t] = out.source.triangle_of_vertex[t] = t;
    return out;
}

LatticeReport validate(const Colex2& colex) {
    LatticeReport report;
    report.vertices = colex.num_vertices;
    report.edges = colex.edges.size();
    report.faces = colex.faces.size();
    report.euler_characteristic = static_cast<long>(report.vertices) - static_cast<long>(report.edges) +
                                  static_cast<long>(report.faces);
    if (colex.closed) report.betti1 = 2 - report.euler_characteristic;

    auto add = [&](std::string name, bool ok, std::string detail) {
        report.checks.push_back(ValidationCheck{std::move(name), ok, ok ? std::string{} : std::move(detail)});
    };

    {
        std::string bad;
        for (const auto& e : colex.edges) {
            if (e.a >= colex.num_vertices || e.b >= colex.num_vertices || e.a == e.b) {
                bad = "edge (" + std::to_string(e.a) + "," + std::to_string(e.b) + ")";
                break;
            }
        }
        for (std::size_t f = 0; f < colex.faces.size() && bad.empty(); ++f) {
            for (std::size_t v : colex.faces[f].verts) {
                if (v >= colex.num_vertices) bad = "face " + std::to_string(f);
            }
            if (colex.faces[f].verts.empty()) bad = "face " + std::to_string(f) + " is empty";
        }
        add("indices_in_range", bad.empty(), bad);
        if (!bad.empty()) return report;
    }

    {
        const auto deg = colex.vertex_degrees();
        std::string bad;
        for (std::size_t v = 0; v < deg.size() && bad.empty(); ++v) {
            const bool ok = colex.closed ? deg[v] == 3 : (deg[v] <= 3);
            if (!ok) bad = "vertex " + std::to_string(v) + " has degree " + std::to_string(deg[v]);
        }
        add("trivalence", bad.empty(), bad);
    }

    std::set<std::pair<std::size_t, std::size_t>> edge_set;
    std::map<std::pair<std::size_t, std::size_t>, Color> edge_color;
    {
        std::string bad;
        for (const auto& e : colex.edges) {
            const auto key = ordered(e.a, e.b);
            if (!edge_set.insert(key).second && bad.empty()) {
                bad = "duplicate edge (" + std::to_string(key.first) + "," + std::to_string(key.second) + ")";
            }
            edge_color[key] = e.color;
        }
        add("simple_graph", bad.empty(), bad);
    }

    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> side_faces;
    {
        std::string bad;
        for (std::size_t f = 0; f < colex.faces.size(); ++f) {
            for (auto [a, b] : face_sides(colex.faces[f])) {
                const auto key = ordered(a, b);
                side_faces[key].push_back(f);
                if (!edge_set.count(key) && bad.empty()) {
                    bad = "face " + std::to_string(f) + " side (" + std::to_string(a) + "," + std::to_string(b) +
                          ") is not an edge";
                }
            }
        }
        add("face_boundaries", bad.empty(), bad);
    }

    {
        std::string bad;
        for (std::size_t f = 0; f < colex.faces.size() && bad.empty(); ++f) {
            const auto& face = colex.faces[f];
            if (!face.partial && face.verts.size() % 2 != 0) {
                bad = "face " + std::to_string(f) + " has " + std::to_string(face.verts.size()) + " vertices";
            }
        }
        add("even_faces", bad.empty(), bad);
    }

    {
        std::string bad_incidence;
        std::string bad_coloring;
        std::string bad_edge_color;
        for (const auto& key : edge_set) {
            auto it = side_faces.find(key);
            const std::size_t count = it == side_faces.end() ? 0 : it->second.size();
            if (count != 2) {
                if (bad_incidence.empty()) {
                    bad_incidence = "edge (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                                    ") borders " + std::to_string(count) + " faces";
                }
                continue;
            }
            const Color c0 = colex.faces[it->second[0]].color;
            const Color c1 = colex.faces[it->second[1]].color;
            if (c0 == c1) {
                if (bad_coloring.empty()) {
                    bad_coloring = "faces " + std::to_string(it->second[0]) + " and " +
                                   std::to_string(it->second[1]) + " share an edge and color " +
                                   std::string(1, color_char(c0));
                }
                continue;
            }
            if (edge_color[key] != third_color(c0, c1) && bad_edge_color.empty()) {
                bad_edge_color = "edge (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                                 ") colored " + std::string(1, color_char(edge_color[key]));
            }
        }
        add("edge_face_incidence", bad_incidence.empty(), bad_incidence);
        add("three_colorable", bad_coloring.empty(), bad_coloring);
        add("edge_colors", bad_edge_color.empty(), bad_edge_color);
    }

    {
        std::string bad;
        const auto vf = colex.vertex_faces();
        for (std::size_t v = 0; v < vf.size() && bad.empty(); ++v) {
            std::array<int, 3> seen{0, 0, 0};
            for (std::size_t f : vf[v]) ++seen[color_index(colex.faces[f].color)];
            if (vf[v].size() != 3 || seen != std::array<int, 3>{1, 1, 1}) {
                bad = "vertex " + std::to_string(v) + " lies on " + std::to_string(vf[v].size()) +
                      " faces without one of each color";
            }
        }
        add("vertex_face_colors", bad.empty(), bad);
    }

    if (colex.closed) {
        const bool any_partial =
            std::any_of(colex.faces.begin(), colex.faces.end(), [](const Face& f) { return f.partial; });
        add("no_partial_faces", !any_partial, "closed colex has partial faces");
    }
    return report;
}

LatticeReport validate(const BorderedColex& bordered) {
    LatticeReport report = validate(bordered.colex);
    const auto& src = bordered.source;
    std::string bad;
    if (bordered.colex.num_vertices != src.num_triangles()) {
        bad = std::to_string(bordered.colex.num_vertices) + " kept vertices vs " +
              std::to_string(src.num_triangles()) + " triangles";
    } else if (bordered.colex.faces.size() != src.num_sites()) {
        bad = "face count differs from site count";
    } else {
        const auto st = src.site_triangles();
        for (std::size_t s = 0; s < st.size() && bad.empty(); ++s) {
            auto a = st[s];
            auto b = bordered.colex.faces[s].verts;
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            if (a != b) bad = "face " + std::to_string(s) + " vertices differ from site triangles";
        }
    }
    report.checks.push_back(ValidationCheck{"kept_vertices_match_triangles", bad.empty(), bad});
    return report;
}

LatticeReport validate(const DualTriangulation& dual) {
    LatticeReport report;
    report.vertices = dual.num_sites();
    report.faces = dual.num_triangles();
    std::string bad_range;
    std::string bad_color;
    for (std::size_t t = 0; t < dual.triangles.size(); ++t) {
        const auto& tri = dual.triangles[t];
        for (std::size_t k = 0; k < 3; ++k) {
            if (tri[k] >= dual.num_sites()) {
                if (bad_range.empty()) bad_range = "triangle " + std::to_string(t);
            } else if (dual.site_colors[tri[k]] != kColors[k] && bad_color.empty()) {
                bad_color = "triangle " + std::to_string(t) + " is not ordered (r,g,b) by site color";
            }
        }
    }
    report.checks.push_back(ValidationCheck{"indices_in_range", bad_range.empty(), bad_range});
    report.checks.push_back(ValidationCheck{"three_colorable_sites", bad_color.empty(), bad_color});
    std::string isolated;
    const auto st = dual.site_triangles();
    for (std::size_t s = 0; s < st.size() && isolated.empty(); ++s) {
        if (st[s].empty()) isolated = "site " + std::to_string(s) + " lies on no triangle";
    }
    report.checks.push_back(ValidationCheck{"no_isolated_sites", isolated.empty(), isolated});
    return report;
}

}  // namespace tcc
