#pragma once

// Shared fixtures for the test and acceptance suites: deterministic RNG,
// valid random parameter draws for every structure family (rejection
// sampled against realize), planted coboundaries, and mixed spherical
// assignments with even face parity.

#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

#include "dcs/error.hpp"
#include "dcs/gauge.hpp"
#include "dcs/meshes.hpp"
#include "dcs/structures.hpp"

namespace dcs::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::vector<double> uniform_vec(Rng& rng, int n, double lo, double hi) {
  std::vector<double> v(n);
  for (double& x : v) x = uniform(rng, lo, hi);
  return v;
}

/// Antisymmetric edge constants planted as a coboundary C_ij = g_i - g_j,
/// so every face sum vanishes identically.
inline std::vector<double> coboundary_C(const TriangulatedSurface& S, const std::vector<double>& g) {
  std::vector<double> C(S.edge_count());
  for (int e = 0; e < S.edge_count(); ++e) {
    auto [i, j] = S.edges()[e];
    C[e] = g[i] - g[j];
  }
  return C;
}

/// One random, not yet validated draw for a family; the ranges keep each
/// family inside (or near) its validity domain.
inline ConformalData raw_draw(const TriangulatedSurface& S, FamilyTag tag, Rng& rng) {
  const int nv = S.vertex_count();
  ConformalData d;
  d.geometry = family_geometry(tag);
  d.family.assign(S.edge_count(), tag);
  switch (tag) {
    case FamilyTag::EuclideanA:
      d.f = uniform_vec(rng, nv, -0.3, 0.3);
      d.alpha = uniform_vec(rng, nv, -0.2, 1.0);
      d.eta = uniform_vec(rng, S.edge_count(), 0.8, 1.5);
      break;
    case FamilyTag::HypB1:
      d.f = uniform_vec(rng, nv, -0.2, 0.2);
      d.alpha = uniform_vec(rng, nv, -0.4, 1.0);
      d.eta = uniform_vec(rng, S.edge_count(), 1.0, 2.0);
      break;
    case FamilyTag::HypB2: {
      d.f = uniform_vec(rng, nv, -0.3, 0.3);
      d.eta = uniform_vec(rng, S.edge_count(), 0.8, 2.0);
      d.C = coboundary_C(S, uniform_vec(rng, nv, -0.3, 0.3));
      break;
    }
    case FamilyTag::SphC1:
      d.f = uniform_vec(rng, nv, -1.1, -0.9);
      d.alpha = uniform_vec(rng, nv, -0.5, 0.5);
      d.eta = uniform_vec(rng, S.edge_count(), 0.8, 1.2);
      break;
    case FamilyTag::SphC2: {
      d.f = uniform_vec(rng, nv, -1.1, -0.9);
      d.eta = uniform_vec(rng, S.edge_count(), 2.5, 4.0);
      d.C = coboundary_C(S, uniform_vec(rng, nv, -0.1, 0.1));
      break;
    }
    case FamilyTag::SphC3:
      d.f = uniform_vec(rng, nv, -1.1, -0.9);
      d.alpha = uniform_vec(rng, nv, -0.5, 0.5);
      d.eta = uniform_vec(rng, S.edge_count(), 6.0, 8.0);
      break;
    case FamilyTag::SphC4: {
      d.f = uniform_vec(rng, nv, -1.1, -0.9);
      d.eta = uniform_vec(rng, S.edge_count(), 6.0, 8.0);
      d.C = coboundary_C(S, uniform_vec(rng, nv, -0.05, 0.05));
      break;
    }
  }
  return d;
}

/// Spherical data mixing negative-ratio edges into the star of vertex 0, so
/// every incident face carries exactly two of them and every other face
/// none (even parity everywhere).
inline ConformalData raw_mixed_draw(const TriangulatedSurface& S, bool alpha_group, Rng& rng) {
  const int nv = S.vertex_count();
  ConformalData d;
  d.geometry = Geometry::Spherical;
  d.f = uniform_vec(rng, nv, -1.05, -0.95);
  d.family.resize(S.edge_count());
  d.eta.resize(S.edge_count());
  if (alpha_group) {
    d.alpha = uniform_vec(rng, nv, 0.0, 0.3);
  } else {
    d.C = coboundary_C(S, uniform_vec(rng, nv, -0.03, 0.03));
  }
  for (int e = 0; e < S.edge_count(); ++e) {
    auto [i, j] = S.edges()[e];
    const bool star = (i == 0 || j == 0);
    if (alpha_group) {
      d.family[e] = star ? FamilyTag::SphC3 : FamilyTag::SphC1;
      d.eta[e] = star ? uniform(rng, 6.8, 7.4) : uniform(rng, 0.4, 0.7);
    } else {
      d.family[e] = star ? FamilyTag::SphC4 : FamilyTag::SphC2;
      d.eta[e] = star ? uniform(rng, 6.8, 7.4) : uniform(rng, 3.0, 4.0);
    }
  }
  return d;
}

/// Draws until valid. A (c3)/(c4) assignment can never realize alone on a
/// closed mesh (odd negative-ratio parity on every face), so those families
/// are validated edge by edge; all others must realize on the whole mesh.
inline ConformalData draw_valid(const TriangulatedSurface& S, FamilyTag tag, Rng& rng,
                                int attempts = 500) {
  const bool edge_only = tag == FamilyTag::SphC3 || tag == FamilyTag::SphC4;
  for (int k = 0; k < attempts; ++k) {
    ConformalData d = raw_draw(S, tag, rng);
    try {
      if (edge_only) {
        for (int e = 0; e < S.edge_count(); ++e) {
          auto [i, j] = S.edges()[e];
          partial_lengths(tag, d.f[i], d.f[j], d.alpha_at(i), d.alpha_at(j), d.eta[e],
                          d.C_edge(e));
        }
      } else {
        realize(S, d);
      }
      return d;
    } catch (const Error&) {
    }
  }
  throw std::runtime_error("no valid draw found");
}

inline ConformalData draw_valid_mixed(const TriangulatedSurface& S, bool alpha_group, Rng& rng,
                                      int attempts = 500) {
  for (int k = 0; k < attempts; ++k) {
    ConformalData d = raw_mixed_draw(S, alpha_group, rng);
    try {
      realize(S, d);
      return d;
    } catch (const Error&) {
    }
  }
  throw std::runtime_error("no valid mixed draw found");
}

}  // namespace dcs::testing
