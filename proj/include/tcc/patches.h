#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "tcc/colex.h"

namespace tcc {

/// Lattice coordinate on the triangular lattice with neighbor offsets (1,0), (0,1), (1,1).
using TriCoord = std::pair<long, long>;

/// Patch of the triangular lattice spanned by `sites` (kept in the given order,
/// colored (i + j) mod 3). Triangles are all up {(i,j),(i+1,j),(i+1,j+1)} and down
/// {(i,j),(i,j+1),(i+1,j+1)} triangles whose three sites are present, enumerated
/// by anchor site in `sites` order, up before down.
DualTriangulation triangular_patch(const std::vector<TriCoord>& sites);

/// Center site plus its six neighbors: 7 sites, 6 triangles. Site 0 is the center.
DualTriangulation hexagon_patch();

/// One triangle, three sites.
DualTriangulation single_triangle_patch();

/// Parallelogram of width x height triangular-lattice sites: 2 (width-1)(height-1) triangles.
DualTriangulation triangular_parallelogram_patch(std::size_t width, std::size_t height);

/// Union Jack patch of rows x cols square cells: (rows+1)(cols+1) corner sites
/// (red/green checkerboard) followed by rows*cols center sites (blue), 4 triangles per cell.
DualTriangulation union_jack_patch(std::size_t rows, std::size_t cols);

}  // namespace tcc
