#pragma once

#include "dcs/surface.hpp"

namespace dcs {

/// Standard closed complexes used by tests, the benchmark and examples.
TriangulatedSurface tetrahedron();
TriangulatedSurface octahedron();

/// The 7-vertex torus: faces (i, i+1, i+3) and (i, i+2, i+3) mod 7.
TriangulatedSurface minimal_torus();

/// rows x cols grid torus (each cell split into two triangles); rows, cols >= 3.
TriangulatedSurface grid_torus(int rows, int cols);

}  // namespace dcs
