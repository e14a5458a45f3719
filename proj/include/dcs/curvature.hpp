#pragma once

#include <array>
#include <vector>

#include "dcs/geometry.hpp"
#include "dcs/structures.hpp"
#include "dcs/surface.hpp"

namespace dcs {

/// Per-vertex angle defect K_i = 2*pi - sum of incident inner angles.
struct CurvatureVector {
  std::vector<double> K;
};

/// Inner angles of every face, ordered as the face's vertices.
/// Parallel over faces; deterministic.
std::vector<std::array<double, 3>> corner_angles(const TriangulatedSurface& S, Geometry g,
                                                 const PartialMetric& m);

CurvatureVector vertex_curvatures(const TriangulatedSurface& S, Geometry g,
                                  const PartialMetric& m);

double total_area(const TriangulatedSurface& S, Geometry g, const PartialMetric& m);

/// |sum K + kappa * area - 2*pi*chi| with kappa = 0 / -1 / +1 for
/// Euclidean / hyperbolic / spherical.
double gauss_bonnet_residual(const TriangulatedSurface& S, Geometry g, const PartialMetric& m);

}  // namespace dcs
