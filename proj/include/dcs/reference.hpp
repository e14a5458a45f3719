#pragma once

#include <vector>

#include "dcs/curvature.hpp"
#include "dcs/structures.hpp"
#include "dcs/surface.hpp"

// Straight-line serial implementations of the parallel kernels, kept as the
// reference the tests and the benchmark compare against. They must produce
// bit-identical results to the parallel paths.
namespace dcs::ref {

PartialMetric realize(const TriangulatedSurface& S, const ConformalData& data);

CurvatureVector vertex_curvatures(const TriangulatedSurface& S, Geometry g,
                                  const PartialMetric& m);

/// Dense Jacobian dK/df by central differences, column major in a flat
/// row-major vector (row = vertex whose K, col = vertex whose f).
std::vector<double> curvature_jacobian(const TriangulatedSurface& S, const ConformalData& data,
                                       const std::vector<double>& f, double h);

}  // namespace dcs::ref

namespace dcs {

/// Parallel counterpart of ref::curvature_jacobian (columns evaluated
/// concurrently).
std::vector<double> curvature_jacobian(const TriangulatedSurface& S, const ConformalData& data,
                                       const std::vector<double>& f, double h);

}  // namespace dcs
