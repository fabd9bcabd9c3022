#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tcc/color.h"

namespace tcc {

struct Edge {
    std::size_t a = 0;
    std::size_t b = 0;
    Color color = Color::red;
    bool operator==(const Edge&) const = default;
};

struct Face {
    /// Cyclic boundary order for complete faces; fan order for partial faces.
    std::vector<std::size_t> verts;
    Color color = Color::red;
    /// Partial faces keep only Z-type stabilizers on their kept vertices.
    bool partial = false;
    bool operator==(const Face&) const = default;
};

/// A 2-colex: trivalent, 3-face-colorable lattice. One qubit per vertex.
///
/// `closed` distinguishes closed surfaces (tori) from patches cut out along a
/// dual triangulation's border; the latter may contain partial faces.
struct Colex2 {
    std::size_t num_vertices = 0;
    std::vector<Edge> edges;
    std::vector<Face> faces;
    bool closed = true;

    std::size_t num_faces() const { return faces.size(); }
    std::size_t num_edges() const { return edges.size(); }
    /// For each vertex, the faces containing it, in face-index order.
    std::vector<std::vector<std::size_t>> vertex_faces() const;
    std::vector<std::size_t> vertex_degrees() const;
    bool operator==(const Colex2&) const = default;
};

/// Dual lattice: sites are colex faces, triangles are colex vertices.
struct DualTriangulation {
    std::vector<Color> site_colors;
    /// Site indices ordered by site color (red, green, blue).
    std::vector<std::array<std::size_t, 3>> triangles;
    bool closed = true;
    /// Bijections with the colex this triangulation is dual to. Empty for
    /// free-standing patches that have not been through build_bordered.
    std::vector<std::size_t> face_of_site;
    std::vector<std::size_t> site_of_face;
    std::vector<std::size_t> vertex_of_triangle;
    std::vector<std::size_t> triangle_of_vertex;

    std::size_t num_sites() const { return site_colors.size(); }
    std::size_t num_triangles() const { return triangles.size(); }
    /// For each site, the triangles containing it.
    std::vector<std::vector<std::size_t>> site_triangles() const;
    bool operator==(const DualTriangulation&) const = default;
};

/// Colex obtained from a bordered dual patch. `colex.faces[f].partial` marks the
/// faces that lost vertices; vertex t of the colex is triangle t of `source`,
/// face i is site i.
struct BorderedColex {
    Colex2 colex;
    DualTriangulation source;

    std::size_t num_complete_faces() const;
    std::size_t num_partial_faces() const;
};

struct ValidationCheck {
    std::string name;
    bool passed = true;
    std::string detail;
};

struct LatticeReport {
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::size_t faces = 0;
    long euler_characteristic = 0;
    /// First Betti number 2 - chi; only for closed colexes.
    std::optional<long> betti1;
    std::vector<ValidationCheck> checks;

    bool all_passed() const;
    const ValidationCheck* find(const std::string& name) const;
};

/// Hexagonal colex on a torus, dual to the triangular lattice with sites (i, j),
/// 0 <= i < cols, 0 <= j < rows, neighbor offsets (1,0), (0,1), (1,1) and site
/// color (i + j) mod 3. Periodic identifications: (i, j) ~ (i + cols, j) and
/// (i, j) ~ (i + shift, j + rows) with shift = (-rows) mod 3.
///
/// Admissible iff cols is a positive multiple of 3 and rows >= 1; (rows, cols) =
/// (1, 3) is the 3-face torus and (3, 3) the 9-face torus. Faces are indexed
/// j * cols + i; vertices 2 * face (up triangle) and 2 * face + 1 (down triangle).
Colex2 build_hex_torus(std::size_t rows, std::size_t cols);

/// Square-octagon (4-8) colex on a rows x cols torus of squares, dual to the
/// Union Jack lattice. Octagons sit on grid corners (red/green checkerboard),
/// squares on plaquette centers (blue). Admissible iff rows and cols are even and >= 2.
/// Faces: corners j * cols + i, then squares rows * cols + (j * cols + i).
Colex2 build_48_torus(std::size_t rows, std::size_t cols);

/// Dual of a closed or bordered colex. Triangle t is vertex t; site i is face i.
DualTriangulation build_dual(const Colex2& colex);

/// Cuts a colex out along a bordered dual patch: triangles become vertices,
/// sites become faces; sites whose link is not a closed cycle become partial faces.
BorderedColex build_bordered(const DualTriangulation& dual);

LatticeReport validate(const Colex2& colex);
LatticeReport validate(const BorderedColex& bordered);
LatticeReport validate(const DualTriangulation& dual);

/// Builds a colex from cyclic face boundaries. Edges are the consecutive pairs
/// of the cycles, deduplicated, in order of first appearance; each edge gets
/// the color distinct from the two faces it separates.
Colex2 colex_from_face_cycles(std::size_t num_vertices, std::vector<Face> faces);

}  // namespace tcc
