#include "dcs/solver.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dcs/curvature.hpp"
#include "dcs/error.hpp"
#include "dcs/reference.hpp"

namespace dcs {

namespace {

// Dense LU solve with partial pivoting; the systems here are tiny.
std::vector<double> lu_solve(std::vector<double> A, std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int r = k + 1; r < n; ++r)
      if (std::abs(A[r * n + k]) > std::abs(A[piv * n + k])) piv = r;
    if (piv != k) {
      for (int c = 0; c < n; ++c) std::swap(A[k * n + c], A[piv * n + c]);
      std::swap(b[k], b[piv]);
    }
    const double d = A[k * n + k];
    if (d == 0.0) fail(Errc::StepDegenerate, "singular Newton system");
    for (int r = k + 1; r < n; ++r) {
      const double m = A[r * n + k] / d;
      if (m == 0.0) continue;
      for (int c = k; c < n; ++c) A[r * n + c] -= m * A[k * n + c];
      b[r] -= m * b[k];
    }
  }
  std::vector<double> x(n);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < n; ++c) s -= A[r * n + c] * x[c];
    x[r] = s / A[r * n + r];
  }
  return x;
}

bool is_shift_invariant(const ConformalData& data) {
  if (data.geometry != Geometry::Euclidean) return false;
  for (double a : data.alpha)
    if (a != 0.0) return false;
  return true;
}

}  // namespace

SolveResult solve_prescribed_curvature(const TriangulatedSurface& S, const ConformalData& data,
                                       const std::vector<double>& K_target,
                                       const SolverConfig& cfg) {
  const int n = S.vertex_count();
  if (static_cast<int>(K_target.size()) != n) fail(Errc::SchemaError, "target has wrong size");

  const bool gauge_free = is_shift_invariant(data);
  if (data.geometry == Geometry::Euclidean) {
    // PL Gauss-Bonnet pins the total angle defect regardless of the metric.
    double sum = 0.0;
    for (double k : K_target) sum += k;
    const double want = 2.0 * std::numbers::pi * S.euler_characteristic();
    if (std::abs(sum - want) > 1e-9)
      fail(Errc::InfeasibleTarget, "sum of target defects " + std::to_string(sum) +
                                       " != 2*pi*chi = " + std::to_string(want));
  }

  ConformalData work = data;
  std::vector<double> f = data.f;

  auto residual_at = [&](const std::vector<double>& fv) {
    work.f = fv;
    const CurvatureVector K = vertex_curvatures(S, data.geometry, realize(S, work));
    std::vector<double> r(n);
    for (int v = 0; v < n; ++v) r[v] = K.K[v] - K_target[v];
    return r;
  };

  auto max_abs = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  };

  auto finish = [&](std::vector<double> fv, int iters, double res) {
    if (gauge_free) {
      double mean = 0.0;
      for (double x : fv) mean += x;
      mean /= n;
      for (double& x : fv) x -= mean;
    }
    return SolveResult{std::move(fv), iters, res};
  };

  std::vector<double> r = residual_at(f);
  double res = max_abs(r);
  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    if (res < cfg.tolerance) return finish(f, iter, res);

    std::vector<double> J;
    try {
      J = curvature_jacobian(S, work, f, cfg.fd_step);
    } catch (const Error& e) {
      // the iterate sits on the boundary of the validity domain
      fail(Errc::StepDegenerate, std::string("Jacobian perturbation failed: ") + e.what());
    }
    if (gauge_free) {
      // Rank-one shift along (1,...,1): the residual is orthogonal to the
      // constant direction (its sum is zero by Gauss-Bonnet), so the shifted
      // solve returns the mean-free Newton step.
      double scale = 0.0;
      for (int v = 0; v < n; ++v) scale += std::abs(J[v * n + v]);
      scale = std::max(scale / n, 1e-8);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) J[a * n + b] += scale;
    }
    std::vector<double> rhs(n);
    for (int v = 0; v < n; ++v) rhs[v] = -r[v];
    std::vector<double> step = lu_solve(std::move(J), std::move(rhs));
    if (gauge_free) {
      double mean = 0.0;
      for (double x : step) mean += x;
      mean /= n;
      for (double& x : step) x -= mean;
    }

    double s = 1.0;
    while (true) {
      std::vector<double> f_try(n);
      for (int v = 0; v < n; ++v) f_try[v] = f[v] + s * step[v];
      try {
        std::vector<double> r_try = residual_at(f_try);
        f = std::move(f_try);
        r = std::move(r_try);
        res = max_abs(r);
        break;
      } catch (const Error&) {
        s *= 0.5;
        if (s < cfg.damping_min)
          fail(Errc::StepDegenerate, "no damping level keeps all faces embeddable");
      }
    }
  }
  if (res < cfg.tolerance) return finish(f, cfg.max_iterations, res);
  fail(Errc::MaxIterations, "residual " + std::to_string(res) + " after " +
                                std::to_string(cfg.max_iterations) + " iterations");
}

}  // namespace dcs
