#include "dcs/curvature.hpp"

#include <cmath>
#include <numbers>
#include <optional>

#include "dcs/error.hpp"

namespace dcs {

std::vector<std::array<double, 3>> corner_angles(const TriangulatedSurface& S, Geometry g,
                                                 const PartialMetric& m) {
  const int nf = S.face_count();
  std::vector<std::array<double, 3>> angles(nf);
  std::vector<std::optional<Error>> err(nf);
#pragma omp parallel for schedule(static)
  for (int f = 0; f < nf; ++f) {
    const auto& v = S.faces()[f];
    const TriangleLengths t{m.length(S, v[0], v[1]), m.length(S, v[1], v[2]),
                            m.length(S, v[2], v[0])};
    try {
      angles[f] = inner_angles(g, t);
    } catch (const Error& e) {
      err[f] = Error(e.code(), "face " + std::to_string(f) + ": " + e.what());
    }
  }
  for (int f = 0; f < nf; ++f)
    if (err[f]) throw *err[f];
  return angles;
}

CurvatureVector vertex_curvatures(const TriangulatedSurface& S, Geometry g,
                                  const PartialMetric& m) {
  const auto angles = corner_angles(S, g, m);
  const int nv = S.vertex_count();
  CurvatureVector K;
  K.K.assign(nv, 0.0);
  // Accumulation per vertex walks its incident faces in stored order, so the
  // result does not depend on the parallel schedule.
#pragma omp parallel for schedule(static)
  for (int v = 0; v < nv; ++v) {
    double sum = 0.0;
    for (int f : S.vertex_faces(v)) {
      const auto& fv = S.faces()[f];
      for (int c = 0; c < 3; ++c)
        if (fv[c] == v) sum += angles[f][c];
    }
    K.K[v] = 2.0 * std::numbers::pi - sum;
  }
  return K;
}

double total_area(const TriangulatedSurface& S, Geometry g, const PartialMetric& m) {
  const int nf = S.face_count();
  std::vector<double> areas(nf);
  std::vector<std::optional<Error>> err(nf);
#pragma omp parallel for schedule(static)
  for (int f = 0; f < nf; ++f) {
    const auto& v = S.faces()[f];
    const TriangleLengths t{m.length(S, v[0], v[1]), m.length(S, v[1], v[2]),
                            m.length(S, v[2], v[0])};
    try {
      areas[f] = triangle_area(g, t);
    } catch (const Error& e) {
      err[f] = Error(e.code(), "face " + std::to_string(f) + ": " + e.what());
    }
  }
  for (int f = 0; f < nf; ++f)
    if (err[f]) throw *err[f];
  double total = 0.0;  // fixed-order sum
  for (double a : areas) total += a;
  return total;
}

double gauss_bonnet_residual(const TriangulatedSurface& S, Geometry g, const PartialMetric& m) {
  const CurvatureVector K = vertex_curvatures(S, g, m);
  double sumK = 0.0;
  for (double k : K.K) sumK += k;
  double kappa = 0.0;
  if (g == Geometry::Hyperbolic) kappa = -1.0;
  if (g == Geometry::Spherical) kappa = 1.0;
  const double area = kappa == 0.0 ? 0.0 : total_area(S, g, m);
  return std::abs(sumK + kappa * area - 2.0 * std::numbers::pi * S.euler_characteristic());
}

}  // namespace dcs
