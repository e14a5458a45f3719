#include "dcs/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dcs/error.hpp"

namespace dcs {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kClampTol = 1e-12;

double clamped_acos(double c) {
  if (c > 1.0) {
    if (c > 1.0 + kClampTol) fail(Errc::NotEmbeddable, "cosine argument " + std::to_string(c));
    c = 1.0;
  } else if (c < -1.0) {
    if (c < -1.0 - kClampTol) fail(Errc::NotEmbeddable, "cosine argument " + std::to_string(c));
    c = -1.0;
  }
  return std::acos(c);
}

void require_positive(const TriangleLengths& t) {
  if (!(t.l_ij > 0.0) || !(t.l_jk > 0.0) || !(t.l_ki > 0.0))
    fail(Errc::NonPositiveLength, "triangle lengths must be positive");
}

bool triangle_inequalities(double a, double b, double c) {
  return a < b + c && b < a + c && c < a + b;
}

}  // namespace

const char* geometry_name(Geometry g) {
  switch (g) {
    case Geometry::Euclidean: return "euclidean";
    case Geometry::Hyperbolic: return "hyperbolic";
    case Geometry::Spherical: return "spherical";
  }
  return "?";
}

bool is_embeddable(Geometry g, const TriangleLengths& t) {
  require_positive(t);
  const double a = t.l_ij, b = t.l_jk, c = t.l_ki;
  switch (g) {
    case Geometry::Euclidean:
    case Geometry::Hyperbolic:
      return triangle_inequalities(a, b, c);
    case Geometry::Spherical:
      return a < kPi && b < kPi && c < kPi && triangle_inequalities(a, b, c) &&
             a + b + c < 2.0 * kPi;
  }
  return false;
}

std::array<double, 3> inner_angles(Geometry g, const TriangleLengths& t) {
  if (!is_embeddable(g, t)) fail(Errc::NotEmbeddable, "triangle not embeddable");
  const double lij = t.l_ij, ljk = t.l_jk, lki = t.l_ki;
  switch (g) {
    case Geometry::Euclidean: {
      auto angle = [](double u, double v, double opp) {
        return clamped_acos((u * u + v * v - opp * opp) / (2.0 * u * v));
      };
      return {angle(lij, lki, ljk), angle(ljk, lij, lki), angle(lki, ljk, lij)};
    }
    case Geometry::Hyperbolic: {
      auto angle = [](double u, double v, double opp) {
        return clamped_acos((std::cosh(u) * std::cosh(v) - std::cosh(opp)) /
                            (std::sinh(u) * std::sinh(v)));
      };
      return {angle(lij, lki, ljk), angle(ljk, lij, lki), angle(lki, ljk, lij)};
    }
    case Geometry::Spherical: {
      auto angle = [](double u, double v, double opp) {
        return clamped_acos((std::cos(opp) - std::cos(u) * std::cos(v)) /
                            (std::sin(u) * std::sin(v)));
      };
      return {angle(lij, lki, ljk), angle(ljk, lij, lki), angle(lki, ljk, lij)};
    }
  }
  return {};
}

double triangle_area(Geometry g, const TriangleLengths& t) {
  switch (g) {
    case Geometry::Euclidean: {
      if (!is_embeddable(g, t)) fail(Errc::NotEmbeddable, "triangle not embeddable");
      const double s = 0.5 * (t.l_ij + t.l_jk + t.l_ki);
      return std::sqrt(s * (s - t.l_ij) * (s - t.l_jk) * (s - t.l_ki));
    }
    case Geometry::Hyperbolic: {
      auto a = inner_angles(g, t);
      return kPi - a[0] - a[1] - a[2];
    }
    case Geometry::Spherical: {
      auto a = inner_angles(g, t);
      return a[0] + a[1] + a[2] - kPi;
    }
  }
  return 0.0;
}

}  // namespace dcs
