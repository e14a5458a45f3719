#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "dcs/structures.hpp"

namespace dcs {

/// Black-box edge structure: (f_i, f_j) -> (d_ij, d_ji).
using EdgeProvider = std::function<std::pair<double, double>(double, double)>;

/// One probe of H = log(cosh^2 d_ij / cosh^2 d_ji) (hyperbolic) or
/// log(cos^2 d_ij / cos^2 d_ji) (spherical), with central finite
/// differences at step h. L carries cosh l / cos l and its differences for
/// the length-transport identities; ratio_sign is the sign of the cosine
/// ratio (always +1 hyperbolic).
struct HSample {
  double f_i, f_j;
  double H;
  double dH_dfi, dH_dfj;
  double L;
  double dL_dfi, dL_dfj;
  double ratio_sign;
};

std::vector<HSample> sample_H(const EdgeProvider& provider, Geometry g,
                              const std::vector<std::pair<double, double>>& grid, double h);

/// Residuals of the identities every discrete conformal structure obeys:
/// `mixed`     max |d^2 H / df_i df_j| (differenced across the grid),
/// `transport` max of |(e^H d_i + d_j)H - 2(e^H - 1)| and of the
///             length-transport residuals |dL/df_i - (L - s e^{-H/2})|,
///             |dL/df_j - (L - s e^{+H/2})| with s the cosine-ratio sign.
/// Requires samples on a product grid (as produced by a tensor grid input).
struct PdeResiduals {
  double mixed;
  double transport;
};
PdeResiduals verify_H_pde(const std::vector<HSample>& samples);

struct SearchBox {
  double fi_lo, fi_hi, fj_lo, fj_hi;
};

struct ClassificationResult {
  FamilyTag family = FamilyTag::HypB1;
  bool case_two = false;        // true for b2/c2/c4 (dH/df_i == 2)
  double alpha_i = 0.0, alpha_j = 0.0;  // recovered constants, case one
  double C_ij = 0.0;                    // recovered constant, case two
  double eta = 0.0;
  double fit_residual = 0.0;    // max |provider length - recovered-model length|
  bool case1_accepted = false;  // raw verdicts of the two hypothesis tests
  bool case2_accepted = false;
};

/// Decides between the two solution branches of the H-function equations on
/// a 5x5 probe grid inside `box` and recovers the structure's parameters:
/// case two when dH/df_i == 2 identically (family b2/c2/c4, recovers C_ij),
/// case one otherwise (b1/c1/c3, recovers alpha from the rational form of
/// dH/df_i). The spherical cosine-ratio sign separates {c1,c2} from
/// {c3,c4}. Throws WrongGeometry for Euclidean providers, NotClassifiable /
/// InconsistentConstant when no branch fits.
ClassificationResult classify_edge(const EdgeProvider& provider, Geometry g,
                                   const SearchBox& box);

}  // namespace dcs
