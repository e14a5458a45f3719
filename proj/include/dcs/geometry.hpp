#pragma once

#include <array>

namespace dcs {

/// Constant-curvature background the triangles are realized in.
enum class Geometry { Euclidean, Hyperbolic, Spherical };

const char* geometry_name(Geometry g);

/// Geodesic side lengths of one triangle {ijk}; radians of arc when spherical.
struct TriangleLengths {
  double l_ij, l_jk, l_ki;
};

/// True iff a triangle with these side lengths exists in g.
/// Euclidean/hyperbolic: strict triangle inequalities. Spherical: each
/// length in (0,pi), strict triangle inequalities, perimeter < 2*pi.
/// Throws NonPositiveLength.
bool is_embeddable(Geometry g, const TriangleLengths& t);

/// Inner angles (at i, j, k) from the geometry's cosine law, each in (0,pi).
/// Cosine arguments within 1e-12 outside [-1,1] are clamped; anything worse
/// throws NotEmbeddable.
std::array<double, 3> inner_angles(Geometry g, const TriangleLengths& t);

/// Heron (Euclidean), angle deficit (hyperbolic), angle excess (spherical).
double triangle_area(Geometry g, const TriangleLengths& t);

}  // namespace dcs
