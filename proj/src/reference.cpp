#include "dcs/reference.hpp"

#include <cstdio>

#include <cmath>
#include <numbers>
#include <optional>

#include "dcs/error.hpp"

namespace dcs::ref {

PartialMetric realize(const TriangulatedSurface& S, const ConformalData& data) {
  const int ne = S.edge_count();
  if (static_cast<int>(data.f.size()) != S.vertex_count())
    fail(Errc::SchemaError, "f has wrong size");
  if (static_cast<int>(data.eta.size()) != ne) fail(Errc::SchemaError, "eta has wrong size");
  if (static_cast<int>(data.family.size()) != ne) fail(Errc::SchemaError, "family has wrong size");

  PartialMetric m;
  m.l.resize(ne);
  m.d_fwd.resize(ne);
  m.d_bwd.resize(ne);
  for (int e = 0; e < ne; ++e) {
    auto [a, b] = S.edges()[e];
    const EdgeRealization ev = realize_edge(data.family[e], data.f[a], data.f[b],
                                            data.alpha_at(a), data.alpha_at(b), data.eta[e],
                                            data.C_edge(e));
    m.l[e] = ev.l;
    m.d_fwd[e] = ev.d_ij;
    m.d_bwd[e] = ev.d_ji;
  }

  for (int f = 0; f < S.face_count(); ++f) {
    const auto& v = S.faces()[f];
    const int i = v[0], j = v[1], k = v[2];
    const TriangleLengths t{m.length(S, i, j), m.length(S, j, k), m.length(S, k, i)};
    if (!is_embeddable(data.geometry, t))
      fail(Errc::FaceNotEmbeddable, "face " + std::to_string(f));
    const std::array<double, 6> d{m.partial(S, i, j), m.partial(S, j, i), m.partial(S, j, k),
                                  m.partial(S, k, j), m.partial(S, k, i), m.partial(S, i, k)};
    const double r = check_compatibility(data.geometry, d);
    if (r > kRealizeCompatibilityTol) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.6g", r);
      fail(Errc::CompatibilityViolated, "face " + std::to_string(f) + " residual " + buf);
    }
  }
  return m;
}

CurvatureVector vertex_curvatures(const TriangulatedSurface& S, Geometry g,
                                  const PartialMetric& m) {
  const int nf = S.face_count();
  std::vector<std::array<double, 3>> angles(nf);
  for (int f = 0; f < nf; ++f) {
    const auto& v = S.faces()[f];
    angles[f] = inner_angles(
        g, {m.length(S, v[0], v[1]), m.length(S, v[1], v[2]), m.length(S, v[2], v[0])});
  }
  CurvatureVector K;
  K.K.assign(S.vertex_count(), 0.0);
  for (int v = 0; v < S.vertex_count(); ++v) {
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

std::vector<double> curvature_jacobian(const TriangulatedSurface& S, const ConformalData& data,
                                       const std::vector<double>& f, double h) {
  const int n = S.vertex_count();
  std::vector<double> J(static_cast<size_t>(n) * n);
  ConformalData work = data;
  for (int col = 0; col < n; ++col) {
    work.f = f;
    work.f[col] = f[col] + h;
    const CurvatureVector Kp = ref::vertex_curvatures(S, data.geometry, ref::realize(S, work));
    work.f[col] = f[col] - h;
    const CurvatureVector Km = ref::vertex_curvatures(S, data.geometry, ref::realize(S, work));
    for (int row = 0; row < n; ++row)
      J[static_cast<size_t>(row) * n + col] = (Kp.K[row] - Km.K[row]) / (2.0 * h);
  }
  return J;
}

}  // namespace dcs::ref

namespace dcs {

std::vector<double> curvature_jacobian(const TriangulatedSurface& S, const ConformalData& data,
                                       const std::vector<double>& f, double h) {
  const int n = S.vertex_count();
  std::vector<double> J(static_cast<size_t>(n) * n);
  std::vector<std::optional<Error>> err(n);
#pragma omp parallel for schedule(static)
  for (int col = 0; col < n; ++col) {
    try {
      ConformalData work = data;
      work.f = f;
      work.f[col] = f[col] + h;
      const CurvatureVector Kp = ref::vertex_curvatures(S, data.geometry, ref::realize(S, work));
      work.f[col] = f[col] - h;
      const CurvatureVector Km = ref::vertex_curvatures(S, data.geometry, ref::realize(S, work));
      for (int row = 0; row < n; ++row)
        J[static_cast<size_t>(row) * n + col] = (Kp.K[row] - Km.K[row]) / (2.0 * h);
    } catch (const Error& e) {
      err[col] = e;
    }
  }
  for (int col = 0; col < n; ++col)
    if (err[col]) throw *err[col];
  return J;
}

}  // namespace dcs
