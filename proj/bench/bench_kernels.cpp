// Times the parallel kernels against their serial reference implementations
// on grid-torus meshes and checks that both produce bit-identical results.
//
//   dcs_bench [--rows N] [--cols N] [--reps N]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dcs/curvature.hpp"
#include "dcs/meshes.hpp"
#include "dcs/reference.hpp"
#include "dcs/structures.hpp"

using namespace dcs;

namespace {

double now_s() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

template <typename F>
double time_best(int reps, F&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const double t0 = now_s();
    fn();
    best = std::min(best, now_s() - t0);
  }
  return best;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  int rows = 192, cols = 192, reps = 5;
  for (int a = 1; a < argc; ++a) {
    const std::string flag = argv[a];
    if (flag == "--rows" && a + 1 < argc) rows = std::atoi(argv[++a]);
    if (flag == "--cols" && a + 1 < argc) cols = std::atoi(argv[++a]);
    if (flag == "--reps" && a + 1 < argc) reps = std::atoi(argv[++a]);
  }

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif

  const TriangulatedSurface S = grid_torus(rows, cols);
  std::printf("mesh: %d vertices, %d edges, %d faces\n", S.vertex_count(), S.edge_count(),
              S.face_count());

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uf(-0.05, 0.05);
  std::vector<double> f(S.vertex_count());
  for (double& x : f) x = uf(rng);

  // Euclidean family (A) with alpha = 0 never leaves its validity domain.
  const ConformalData data = ConformalData::uniform(S, FamilyTag::EuclideanA, f, {}, 1.0);

  const double t_realize_ref = time_best(reps, [&] { (void)ref::realize(S, data); });
  const double t_realize_par = time_best(reps, [&] { (void)realize(S, data); });
  const PartialMetric m_ref = ref::realize(S, data);
  const PartialMetric m_par = realize(S, data);
  const bool realize_same =
      same_bits(m_ref.l, m_par.l) && same_bits(m_ref.d_fwd, m_par.d_fwd) &&
      same_bits(m_ref.d_bwd, m_par.d_bwd);

  const double t_curv_ref =
      time_best(reps, [&] { (void)ref::vertex_curvatures(S, data.geometry, m_ref); });
  const double t_curv_par =
      time_best(reps, [&] { (void)vertex_curvatures(S, data.geometry, m_par); });
  const bool curv_same = same_bits(ref::vertex_curvatures(S, data.geometry, m_ref).K,
                                   vertex_curvatures(S, data.geometry, m_par).K);

  // Jacobian cost scales with vertex count; use a small torus.
  const TriangulatedSurface Sj = grid_torus(6, 6);
  std::vector<double> fj(Sj.vertex_count());
  for (double& x : fj) x = uf(rng);
  const ConformalData dj = ConformalData::uniform(Sj, FamilyTag::EuclideanA, fj, {}, 1.0);
  const double t_jac_ref =
      time_best(reps, [&] { (void)ref::curvature_jacobian(Sj, dj, fj, 1e-6); });
  const double t_jac_par = time_best(reps, [&] { (void)curvature_jacobian(Sj, dj, fj, 1e-6); });
  const bool jac_same =
      same_bits(ref::curvature_jacobian(Sj, dj, fj, 1e-6), curvature_jacobian(Sj, dj, fj, 1e-6));

  std::printf("%-22s %12s %12s %9s %6s\n", "kernel", "serial [ms]", "openmp [ms]", "speedup",
              "equal");
  auto row = [](const char* name, double ts, double tp, bool eq) {
    std::printf("%-22s %12.3f %12.3f %8.2fx %6s\n", name, ts * 1e3, tp * 1e3, ts / tp,
                eq ? "yes" : "NO");
  };
  row("realize", t_realize_ref, t_realize_par, realize_same);
  row("vertex_curvatures", t_curv_ref, t_curv_par, curv_same);
  row("curvature_jacobian", t_jac_ref, t_jac_par, jac_same);

  return (realize_same && curv_same && jac_same) ? 0 : 1;
}
