#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dcs/geometry.hpp"
#include "dcs/surface.hpp"

namespace dcs {

/// The seven families of discrete conformal structure, one per background
/// geometry group: Euclidean (A); hyperbolic (b1) with vertex weights alpha,
/// (b2) with antisymmetric edge constants C; spherical (c1)/(c2) with
/// positive cosine ratio and (c3)/(c4) with negative cosine ratio.
enum class FamilyTag { EuclideanA, HypB1, HypB2, SphC1, SphC2, SphC3, SphC4 };

Geometry family_geometry(FamilyTag t);
bool family_uses_alpha(FamilyTag t);  // A, b1, c1, c3
bool family_uses_C(FamilyTag t);      // b2, c2, c4
const char* family_name(FamilyTag t); // "A", "b1", ..., "c4"
FamilyTag family_from_name(const std::string& name);

/// Per-vertex factors f and alpha, per-edge eta, per-oriented-edge C and a
/// per-edge family tag. eta is stored once per undirected edge (symmetric);
/// C is stored for the (min,max) orientation, the reverse value is -C, so
/// antisymmetry holds by construction.
struct ConformalData {
  Geometry geometry = Geometry::Euclidean;
  std::vector<double> f;           // per vertex
  std::vector<double> alpha;       // per vertex; empty means all zero
  std::vector<double> eta;         // per edge id
  std::vector<double> C;           // per edge id, value of C_{min,max}; empty means all zero
  std::vector<FamilyTag> family;   // per edge id

  static ConformalData uniform(const TriangulatedSurface& S, FamilyTag tag, std::vector<double> f,
                               std::vector<double> alpha, double eta, double C = 0.0);

  double alpha_at(int v) const { return alpha.empty() ? 0.0 : alpha[v]; }
  double C_edge(int e) const { return C.empty() ? 0.0 : C[e]; }
  /// Oriented C_ij (antisymmetric completion of the stored canonical value).
  double C_on(const TriangulatedSurface& S, int i, int j) const;
};

/// Realized metric: edge lengths l and signed partial lengths d with
/// d_ij + d_ji = l_ij. d is stored for both orientations of every edge.
struct PartialMetric {
  std::vector<double> l;      // per edge id
  std::vector<double> d_fwd;  // d_{min,max}
  std::vector<double> d_bwd;  // d_{max,min}

  double length(const TriangulatedSurface& S, int i, int j) const;
  double partial(const TriangulatedSurface& S, int i, int j) const;  // signed d_ij
};

/// Validation tolerances.
inline constexpr double kRealizeCompatibilityTol = 1e-9;
inline constexpr double kCocycleTol = 1e-12;
inline constexpr double kBranchTol = 1e-8;

/// Edge length of the family's closed form. Parameters a family does not
/// read are ignored. Throws InvalidRadicand when some 1 +- alpha*e^{2f} is
/// not positive, NoRealLength when no positive (spherical: in (0,pi))
/// length solves the formula.
double edge_length(FamilyTag tag, double f_i, double f_j, double alpha_i, double alpha_j,
                   double eta, double C_ij);

/// Signed partial lengths (d_ij, d_ji) for one edge. Hyperbolic families
/// invert tanh (throws TanhOutOfRange at |x| >= 1). Spherical families take
/// principal arctangents and then shift one side by pi for (c3)/(c4), whose
/// cosine ratio is negative; the shift lands on d_ij. If no branch
/// assignment reconciles d_ij + d_ji with the edge length, throws
/// BranchFailure.
std::pair<double, double> partial_lengths(FamilyTag tag, double f_i, double f_j, double alpha_i,
                                          double alpha_j, double eta, double C_ij);

/// Length and both partial lengths in one evaluation.
struct EdgeRealization {
  double l;
  double d_ij;
  double d_ji;
};
EdgeRealization realize_edge(FamilyTag tag, double f_i, double f_j, double alpha_i,
                             double alpha_j, double eta, double C_ij);

/// |LHS - RHS| of the geometry's face compatibility condition:
/// Euclidean   d_ij^2 + d_jk^2 + d_ki^2  vs  d_ji^2 + d_kj^2 + d_ik^2
/// hyperbolic  cosh products of the same two oriented triples
/// spherical   cos products of the same two oriented triples.
/// d = (d_ij, d_ji, d_jk, d_kj, d_ki, d_ik).
double check_compatibility(Geometry g, const std::array<double, 6>& d);

/// Realizes the structure on every edge and validates every face
/// (embeddability, compatibility residual <= kRealizeCompatibilityTol).
/// Edge evaluation and face validation run in parallel; the result and any
/// error are independent of evaluation order (lowest-index failure wins).
PartialMetric realize(const TriangulatedSurface& S, const ConformalData& data);

/// Finite-difference check of the defining derivative relations on edge
/// (i,j): dl/df_i against T(d_ij), dl/df_j against T(d_ji) with T = id /
/// tanh / tan per geometry, and dd_ij/df_k for the opposite vertices k of
/// the two incident faces (identically zero for every family).
struct ConformalityResidual {
  double dl_dfi;  // |central difference - T(d_ij)|
  double dl_dfj;  // |central difference - T(d_ji)|
  double dd_dfk;  // max |central difference of d_ij wrt f_k|
};
ConformalityResidual check_conformality(const TriangulatedSurface& S, const ConformalData& data,
                                        int i, int j, double h);

struct Violation {
  std::string kind;   // "antisymmetry", "face-sum", "missing", "mixed-groups",
                      // "face-parity", "mixed-families", "unused-alpha", "unused-C"
  int edge = -1;      // edge id when edge-scoped
  int face = -1;      // face id when face-scoped
  double value = 0.0;
  bool warning = false;
  std::string describe(const TriangulatedSurface& S) const;
};

/// Checks an explicit oriented-edge map: C_ij + C_ji = 0 on every edge and
/// C_ij + C_jk + C_ki = 0 on every face, within kCocycleTol.
std::vector<Violation> validate_C(const TriangulatedSurface& S,
                                  const std::map<std::pair<int, int>, double>& C);

/// Spherical mixing rules: {c1,c3} may not mix with {c2,c4}, and each face
/// must carry an even number of negative-ratio (c3/c4) edges.
std::vector<Violation> validate_spherical_mix(const TriangulatedSurface& S,
                                              const ConformalData& data);

/// All structural checks on one ConformalData: size consistency, geometry /
/// family agreement, C face sums, spherical mixing, plus warnings for
/// parameters the family ignores.
std::vector<Violation> validate_data(const TriangulatedSurface& S, const ConformalData& data);

}  // namespace dcs
