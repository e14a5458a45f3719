#pragma once

#include <vector>

#include "dcs/structures.hpp"
#include "dcs/surface.hpp"

namespace dcs {

struct SolverConfig {
  int max_iterations = 50;
  double tolerance = 1e-10;           // on max |K - K_target|
  double damping_min = 1.0 / (1 << 20);
  double fd_step = 1e-6;              // Jacobian columns
};

struct SolveResult {
  std::vector<double> f;
  int iterations = 0;
  double residual = 0.0;
};

/// Damped Newton iteration on the conformal factors f driving the angle
/// defects K(f) to K_target. The Jacobian is assembled column-wise by
/// central differences (columns evaluated in parallel). Steps are halved
/// until every face stays embeddable; a Euclidean all-alpha-zero structure
/// has K invariant under uniform shifts of f, so the constant direction is
/// projected out of every update and the result is mean-normalized.
///
/// Throws InfeasibleTarget when the Euclidean target violates the angle
/// defect sum constraint, StepDegenerate when no damping level yields an
/// embeddable metric, MaxIterations when the residual does not reach
/// cfg.tolerance.
SolveResult solve_prescribed_curvature(const TriangulatedSurface& S, const ConformalData& data,
                                       const std::vector<double>& K_target,
                                       const SolverConfig& cfg = {});

}  // namespace dcs
