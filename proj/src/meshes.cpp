#include "dcs/meshes.hpp"

#include "dcs/error.hpp"

namespace dcs {

TriangulatedSurface tetrahedron() {
  return TriangulatedSurface::build(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

TriangulatedSurface octahedron() {
  // Vertices 0/5 are poles, 1..4 the equator cycle.
  return TriangulatedSurface::build(6, {{0, 1, 2},
                                        {0, 2, 3},
                                        {0, 3, 4},
                                        {0, 4, 1},
                                        {5, 2, 1},
                                        {5, 3, 2},
                                        {5, 4, 3},
                                        {5, 1, 4}});
}

TriangulatedSurface minimal_torus() {
  std::vector<std::array<int, 3>> faces;
  for (int i = 0; i < 7; ++i) {
    faces.push_back({i, (i + 1) % 7, (i + 3) % 7});
    faces.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  return TriangulatedSurface::build(7, std::move(faces));
}

TriangulatedSurface grid_torus(int rows, int cols) {
  if (rows < 3 || cols < 3) fail(Errc::DegenerateFace, "grid torus needs rows, cols >= 3");
  auto id = [&](int r, int c) { return ((r + rows) % rows) * cols + ((c + cols) % cols); };
  std::vector<std::array<int, 3>> faces;
  faces.reserve(static_cast<size_t>(rows) * cols * 2);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      faces.push_back({id(r, c), id(r + 1, c), id(r, c + 1)});
      faces.push_back({id(r + 1, c), id(r + 1, c + 1), id(r, c + 1)});
    }
  }
  return TriangulatedSurface::build(rows * cols, std::move(faces));
}

}  // namespace dcs
