#pragma once

#include <string>
#include <vector>

#include "dcs/structures.hpp"
#include "dcs/surface.hpp"

namespace dcs {

/// Per-vertex potential g with C_ij = g_i - g_j.
struct GaugePotential {
  int root = 0;
  std::vector<double> g;
};

/// The (u, epsilon, zeta) edge-length parameterization: per-vertex factor u,
/// vertex weight epsilon in {-1,0,1}, symmetric edge weight zeta.
struct WeightedConformalData {
  Geometry geometry = Geometry::Euclidean;
  std::vector<double> u;        // per vertex
  std::vector<int> epsilon;     // per vertex
  std::vector<double> zeta;     // per edge id
};

/// Rescales so alpha takes values in {-1,0,1} while every edge length stays
/// fixed: alpha' = sign(alpha), f' = f + ln|alpha|/2 where alpha != 0, and
/// eta is rescaled to absorb the shift. Requires a family that reads alpha
/// (A, b1, c1, c3); throws WrongFamily otherwise.
ConformalData normalize_alpha(const TriangulatedSurface& S, const ConformalData& data);

/// Integrates C along a BFS spanning tree from `root` (g_root = 0,
/// g_child = g_parent - C_{parent->child}) and checks C_ij = g_i - g_j on
/// every oriented edge. Requires a sphere (simply connected closed surface);
/// throws NotSimplyConnected otherwise, InconsistentCocycle if a non-tree
/// edge violates the identity.
GaugePotential gauge_potential(const TriangulatedSurface& S, const std::vector<double>& C_edge,
                               int root = 0);

/// Eliminates C on a sphere: f' = f + g, eta' = eta * e^{-g_i-g_j}, C' = 0.
/// Edge lengths are preserved; applying it twice equals applying it once
/// exactly. Requires every edge family in {b2, c2, c4}.
ConformalData fix_gauge(const TriangulatedSurface& S, const ConformalData& data, int root = 0);

/// Edge length of the (u, epsilon, zeta) parameterization.
double weighted_edge_length(Geometry g, int eps_i, int eps_j, double u_i, double u_j, double zeta);

/// Per-vertex change of variables used by to_weighted: epsilon = alpha and
/// u from f through the substitution variable r. Throws DomainViolation when
/// f lies outside the substitution's domain (e.g. alpha = 1 spherical needs
/// e^f < 1).
std::pair<int, double> convert_vertex(Geometry g, double alpha, double f);

/// zeta from eta for one edge: equal for Euclidean; halved per endpoint with
/// alpha = 0 for the curved geometries (eta/4 when both are 0).
double convert_eta(Geometry g, double alpha_i, double alpha_j, double eta);

/// Converts families (A)/(b1)/(c1) with alpha already in {-1,0,1} into the
/// (u, epsilon, zeta) parameterization; edge lengths agree on the whole
/// validity domain.
WeightedConformalData to_weighted(const TriangulatedSurface& S, const ConformalData& data);

/// Result of reducing one (c3) edge to its generalized-cosine-law form.
struct ReducedForm {
  std::string type_label;  // "(0,0,1)", "(1,1,1)", "(-1,-1,1)", "(1,1,0)", "(1,-1,0)", "(1,1,-1)"
  double r_i, r_j;         // substitution variables
  double cos_l_reduced;
  double residual;         // |cos l from (c3) - cos l from the reduced form|
};

/// Reduces a (c3) edge with alpha_i, alpha_j in {-1,0,1} under the
/// substitution e^f = r / sin r / sinh r for alpha = 0 / 1 / -1. Enforces
/// the reduced form's eta bound (eta > 1 for (1,1,1) and (-1,-1,1); eta > 0
/// for the mixed patterns). Throws UnsupportedSignPattern for alpha outside
/// {-1,0,1}.
ReducedForm reduce_c3(double alpha_i, double alpha_j, double eta, double f_i, double f_j);

}  // namespace dcs
