#include "dcs/gauge.hpp"

#include <cmath>
#include <string>

#include "dcs/error.hpp"

namespace dcs {

namespace {

constexpr double kGaugeCheckTol = 1e-10;

void require_alpha_family(const ConformalData& data) {
  for (FamilyTag t : data.family)
    if (!family_uses_alpha(t))
      fail(Errc::WrongFamily, std::string("family ") + family_name(t) + " has no alpha");
}

void require_C_family(const ConformalData& data) {
  for (FamilyTag t : data.family)
    if (!family_uses_C(t))
      fail(Errc::WrongFamily, std::string("family ") + family_name(t) + " has no C");
}

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

}  // namespace

ConformalData normalize_alpha(const TriangulatedSurface& S, const ConformalData& data) {
  require_alpha_family(data);
  ConformalData out = data;
  out.alpha.assign(S.vertex_count(), 0.0);
  if (out.f.size() != static_cast<size_t>(S.vertex_count()))
    fail(Errc::SchemaError, "f has wrong size");
  for (int v = 0; v < S.vertex_count(); ++v) {
    const double a = data.alpha_at(v);
    if (a != 0.0) {
      out.alpha[v] = sign_of(a);
      out.f[v] = data.f[v] + 0.5 * std::log(std::abs(a));
    }
  }
  for (int e = 0; e < S.edge_count(); ++e) {
    auto [i, j] = S.edges()[e];
    out.eta[e] = data.eta[e] * std::exp(data.f[i] + data.f[j] - out.f[i] - out.f[j]);
  }
  return out;
}

GaugePotential gauge_potential(const TriangulatedSurface& S, const std::vector<double>& C_edge,
                               int root) {
  if (!S.is_sphere())
    fail(Errc::NotSimplyConnected,
         "euler characteristic " + std::to_string(S.euler_characteristic()));
  if (C_edge.size() != static_cast<size_t>(S.edge_count()))
    fail(Errc::SchemaError, "C has wrong size");

  auto C_on = [&](int i, int j) {
    const int e = S.edge_id(i, j);
    return i < j ? C_edge[e] : -C_edge[e];
  };

  const SpanningTree tree = S.spanning_tree(root);
  GaugePotential gp;
  gp.root = root;
  gp.g.assign(S.vertex_count(), 0.0);
  for (auto [p, c] : tree.edges) gp.g[c] = gp.g[p] - C_on(p, c);

  for (int e = 0; e < S.edge_count(); ++e) {
    auto [i, j] = S.edges()[e];
    if (std::abs(C_on(i, j) - (gp.g[i] - gp.g[j])) > kGaugeCheckTol)
      fail(Errc::InconsistentCocycle,
           "edge {" + std::to_string(i) + "," + std::to_string(j) + "}");
  }
  return gp;
}

ConformalData fix_gauge(const TriangulatedSurface& S, const ConformalData& data, int root) {
  require_C_family(data);
  std::vector<double> C = data.C;
  if (C.empty()) C.assign(S.edge_count(), 0.0);
  const GaugePotential gp = gauge_potential(S, C, root);

  ConformalData out = data;
  for (int v = 0; v < S.vertex_count(); ++v) out.f[v] = data.f[v] + gp.g[v];
  for (int e = 0; e < S.edge_count(); ++e) {
    auto [i, j] = S.edges()[e];
    out.eta[e] = data.eta[e] * std::exp(-gp.g[i] - gp.g[j]);
  }
  out.C.assign(S.edge_count(), 0.0);
  return out;
}

double weighted_edge_length(Geometry g, int eps_i, int eps_j, double u_i, double u_j,
                            double zeta) {
  const double Ei = eps_i * std::exp(2.0 * u_i);
  const double Ej = eps_j * std::exp(2.0 * u_j);
  const double Z = zeta * std::exp(u_i + u_j);
  switch (g) {
    case Geometry::Euclidean: {
      const double l2 = 2.0 * Z + Ei + Ej;
      if (!(l2 > 0.0)) fail(Errc::NoRealLength, "squared length " + std::to_string(l2));
      return std::sqrt(l2);
    }
    case Geometry::Hyperbolic: {
      const double den = (1.0 - Ei) * (1.0 - Ej);
      if (!(den > 0.0)) fail(Errc::InvalidRadicand, "(1-eps e^{2u}) product not positive");
      const double ch = (4.0 * Z + (1.0 + Ei) * (1.0 + Ej)) / den;
      if (!(ch > 1.0)) fail(Errc::NoRealLength, "cosh l = " + std::to_string(ch));
      return std::acosh(ch);
    }
    case Geometry::Spherical: {
      const double den = (1.0 + Ei) * (1.0 + Ej);
      if (!(den > 0.0)) fail(Errc::InvalidRadicand, "(1+eps e^{2u}) product not positive");
      const double c = (-4.0 * Z + (1.0 - Ei) * (1.0 - Ej)) / den;
      if (!(std::abs(c) < 1.0)) fail(Errc::NoRealLength, "cos l = " + std::to_string(c));
      return std::acos(c);
    }
  }
  fail(Errc::WrongGeometry, "unknown geometry");
}

std::pair<int, double> convert_vertex(Geometry g, double alpha, double f) {
  const int eps = sign_of(alpha);
  if (alpha != -1.0 && alpha != 0.0 && alpha != 1.0)
    fail(Errc::DomainViolation, "alpha must be normalized to {-1,0,1}, got " +
                                    std::to_string(alpha));
  const double ef = std::exp(f);
  switch (g) {
    case Geometry::Euclidean:
      return {eps, f};
    case Geometry::Hyperbolic: {
      if (eps == 0) return {0, f};  // e^f = r, e^u = r
      double r;
      if (eps == 1) {
        r = std::asinh(ef);  // e^f = sinh r
      } else {
        if (!(ef < 1.0))
          fail(Errc::DomainViolation, "alpha = -1 hyperbolic needs e^f = tanh r < 1");
        r = std::atanh(ef);  // e^f = tanh r
      }
      return {eps, std::log(std::tanh(0.5 * r))};  // e^u = tanh(r/2)
    }
    case Geometry::Spherical: {
      if (eps == 0) return {0, f};
      double r;
      if (eps == 1) {
        if (!(ef < 1.0)) fail(Errc::DomainViolation, "alpha = 1 spherical needs e^f = sin r < 1");
        r = std::asin(ef);  // e^f = sin r, r in (0, pi/2)
      } else {
        r = std::atan(ef);  // e^f = tan r
      }
      return {eps, std::log(std::tan(0.5 * r))};  // e^u = tan(r/2)
    }
  }
  fail(Errc::WrongGeometry, "unknown geometry");
}

double convert_eta(Geometry g, double alpha_i, double alpha_j, double eta) {
  if (g == Geometry::Euclidean) return eta;
  int zeros = (alpha_i == 0.0 ? 1 : 0) + (alpha_j == 0.0 ? 1 : 0);
  // Derived by matching the two closed forms under the change of variables:
  // each alpha = 0 endpoint contributes a factor 1/2.
  return eta * (zeros == 2 ? 0.25 : zeros == 1 ? 0.5 : 1.0);
}

WeightedConformalData to_weighted(const TriangulatedSurface& S, const ConformalData& data) {
  for (FamilyTag t : data.family)
    if (t != FamilyTag::EuclideanA && t != FamilyTag::HypB1 && t != FamilyTag::SphC1)
      fail(Errc::WrongFamily,
           std::string("no weighted form for family ") + family_name(t));
  WeightedConformalData out;
  out.geometry = data.geometry;
  out.u.resize(S.vertex_count());
  out.epsilon.resize(S.vertex_count());
  for (int v = 0; v < S.vertex_count(); ++v) {
    auto [eps, u] = convert_vertex(data.geometry, data.alpha_at(v), data.f[v]);
    out.epsilon[v] = eps;
    out.u[v] = u;
  }
  out.zeta.resize(S.edge_count());
  for (int e = 0; e < S.edge_count(); ++e) {
    auto [i, j] = S.edges()[e];
    out.zeta[e] = convert_eta(data.geometry, data.alpha_at(i), data.alpha_at(j), data.eta[e]);
  }
  return out;
}

ReducedForm reduce_c3(double alpha_i, double alpha_j, double eta, double f_i, double f_j) {
  auto check_sign = [](double a) {
    if (a != -1.0 && a != 0.0 && a != 1.0)
      fail(Errc::UnsupportedSignPattern, "alpha must lie in {-1,0,1}, got " + std::to_string(a));
    return static_cast<int>(a);
  };
  const int si = check_sign(alpha_i);
  const int sj = check_sign(alpha_j);

  // Substitution variable r: e^f = r (alpha=0), sin r (alpha=1), sinh r (alpha=-1).
  auto subst = [](int s, double f) {
    const double ef = std::exp(f);
    if (s == 0) return ef;
    if (s == 1) {
      if (!(ef < 1.0)) fail(Errc::DomainViolation, "alpha = 1 needs e^f = sin r < 1");
      return std::asin(ef);
    }
    return std::asinh(ef);
  };
  const double ri = subst(si, f_i);
  const double rj = subst(sj, f_j);

  ReducedForm out;
  out.r_i = ri;
  out.r_j = rj;

  auto require_eta = [&](double bound) {
    if (!(eta > bound))
      fail(Errc::DomainViolation, "reduced form needs eta > " + std::to_string(bound));
  };

  if (si == 0 && sj == 0) {
    out.type_label = "(0,0,1)";
    out.cos_l_reduced = -1.0 + eta * ri * rj;
  } else if (si == 1 && sj == 1) {
    out.type_label = "(1,1,1)";
    require_eta(1.0);
    out.cos_l_reduced = -std::cos(ri) * std::cos(rj) + eta * std::sin(ri) * std::sin(rj);
  } else if (si == -1 && sj == -1) {
    out.type_label = "(-1,-1,1)";
    require_eta(1.0);
    out.cos_l_reduced = -std::cosh(ri) * std::cosh(rj) + eta * std::sinh(ri) * std::sinh(rj);
  } else if ((si == 0 && sj == 1) || (si == 1 && sj == 0)) {
    out.type_label = "(1,1,0)";
    require_eta(0.0);
    const double r0 = si == 0 ? ri : rj;   // the alpha = 0 side
    const double r1 = si == 0 ? rj : ri;   // the alpha = 1 side
    out.cos_l_reduced = -std::cos(r1) + eta * r0 * std::sin(r1);
  } else if ((si == 0 && sj == -1) || (si == -1 && sj == 0)) {
    out.type_label = "(1,-1,0)";
    require_eta(0.0);
    const double r0 = si == 0 ? ri : rj;
    const double r1 = si == 0 ? rj : ri;
    out.cos_l_reduced = -std::cosh(r1) + eta * r0 * std::sinh(r1);
  } else {  // {1,-1}
    out.type_label = "(1,1,-1)";
    require_eta(0.0);
    const double rp = si == 1 ? ri : rj;   // the alpha = 1 side
    const double rm = si == 1 ? rj : ri;   // the alpha = -1 side
    out.cos_l_reduced = -std::cos(rp) * std::cosh(rm) + eta * std::sin(rp) * std::sinh(rm);
  }

  const double Xi = 1.0 - alpha_i * std::exp(2.0 * f_i);
  const double Xj = 1.0 - alpha_j * std::exp(2.0 * f_j);
  if (!(Xi > 0.0) || !(Xj > 0.0)) fail(Errc::InvalidRadicand, "1 - alpha e^{2f} not positive");
  const double cos_c3 = -std::sqrt(Xi * Xj) + eta * std::exp(f_i + f_j);
  out.residual = std::abs(cos_c3 - out.cos_l_reduced);
  return out;
}

}  // namespace dcs
