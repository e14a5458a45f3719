#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "dcs/error.hpp"
#include "dcs/meshes.hpp"
#include "dcs/reference.hpp"
#include "dcs/structures.hpp"
#include "support.hpp"

using namespace dcs;
using namespace dcs::testing;

namespace {
constexpr double kPi = std::numbers::pi;

// Cosine / hyperbolic-cosine ratio of one oriented edge pair.
double cos_ratio(Geometry g, double d_ij, double d_ji) {
  if (g == Geometry::Hyperbolic) return std::cosh(d_ij) / std::cosh(d_ji);
  return std::cos(d_ij) / std::cos(d_ji);
}
}  // namespace

TEST_CASE("family tag properties") {
  CHECK(family_geometry(FamilyTag::EuclideanA) == Geometry::Euclidean);
  CHECK(family_geometry(FamilyTag::HypB2) == Geometry::Hyperbolic);
  CHECK(family_geometry(FamilyTag::SphC4) == Geometry::Spherical);
  CHECK(family_uses_alpha(FamilyTag::SphC3));
  CHECK_FALSE(family_uses_alpha(FamilyTag::SphC2));
  CHECK(family_uses_C(FamilyTag::SphC2));
  CHECK_FALSE(family_uses_C(FamilyTag::HypB1));
  for (FamilyTag t : {FamilyTag::EuclideanA, FamilyTag::HypB1, FamilyTag::HypB2, FamilyTag::SphC1,
                      FamilyTag::SphC2, FamilyTag::SphC3, FamilyTag::SphC4})
    CHECK(family_from_name(family_name(t)) == t);
}

TEST_CASE("named edge evaluations") {
  SUBCASE("(A) alpha=0, eta=1/2, f=0") {
    CHECK(edge_length(FamilyTag::EuclideanA, 0, 0, 0, 0, 0.5, 0) == doctest::Approx(1.0));
    const auto [dij, dji] = partial_lengths(FamilyTag::EuclideanA, 0, 0, 0, 0, 0.5, 0);
    CHECK(dij == doctest::Approx(0.5));
    CHECK(dji == doctest::Approx(0.5));
  }
  SUBCASE("(b2) C=0, eta=2, f=0: l = arccosh 3") {
    const double l = edge_length(FamilyTag::HypB2, 0, 0, 0, 0, 2.0, 0);
    CHECK(l == doctest::Approx(1.762747174039086).epsilon(1e-15));
    const auto [dij, dji] = partial_lengths(FamilyTag::HypB2, 0, 0, 0, 0, 2.0, 0);
    CHECK(dij == doctest::Approx(0.8813735870195429).epsilon(1e-14));  // artanh(1/sqrt 2)
    CHECK(dji == doctest::Approx(dij));
    CHECK(std::abs(dij + dji - l) < 1e-14);
  }
  SUBCASE("(c1) alpha=0, eta=1/2, f=0: l = pi/3, d = pi/6") {
    const double l = edge_length(FamilyTag::SphC1, 0, 0, 0, 0, 0.5, 0);
    CHECK(l == doctest::Approx(kPi / 3).epsilon(1e-15));
    const auto [dij, dji] = partial_lengths(FamilyTag::SphC1, 0, 0, 0, 0, 0.5, 0);
    CHECK(dij == doctest::Approx(kPi / 6).epsilon(1e-14));
    CHECK(dji == doctest::Approx(kPi / 6).epsilon(1e-14));
  }
  SUBCASE("(c3) alpha=0, eta=3/2, f=0: branch correction") {
    const double l = edge_length(FamilyTag::SphC3, 0, 0, 0, 0, 1.5, 0);
    CHECK(l == doctest::Approx(kPi / 3).epsilon(1e-15));
    const auto [dij, dji] = partial_lengths(FamilyTag::SphC3, 0, 0, 0, 0, 1.5, 0);
    CHECK(dij == doctest::Approx(2.0 * kPi / 3).epsilon(1e-14));
    CHECK(dji == doctest::Approx(-kPi / 3).epsilon(1e-14));
    CHECK(std::cos(dij) / std::cos(dji) < 0.0);
    CHECK(std::abs(dij + dji - l) < 1e-14);
  }
  SUBCASE("(c3) alpha=0, eta=3/2, f=0 equals arccos(-1 + 3/2)") {
    CHECK(edge_length(FamilyTag::SphC3, 0, 0, 0, 0, 1.5, 0) ==
          doctest::Approx(std::acos(0.5)).epsilon(1e-15));
  }
}

TEST_CASE("frozen spot values for all seven families") {
  struct Spot {
    FamilyTag tag;
    double fi, fj, ai, aj, eta, C;
    double l, dij, dji;
  };
  const Spot spots[] = {
      {FamilyTag::EuclideanA, 0.1, -0.2, 0.5, -0.25, 1.2, 0, 1.6170130397920353,
       1.0491605441483793, 0.5678524956436559},
      {FamilyTag::HypB1, 0.2, -0.3, 1.0, -0.5, 2.0, 0, 1.8157880630623078, 1.3498190052394061,
       0.46596905782290154},
      {FamilyTag::HypB2, 0.1, 0.4, 0, 0, 1.5, 0.25, 1.9171639050407945, 0.924958037629632,
       0.9922058674111627},
      {FamilyTag::SphC1, -1.0, -0.8, 0.5, 0.25, 0.6, 0, 0.5703528589540949, 0.3007578216266001,
       0.2695950373274948},
      {FamilyTag::SphC2, -1.0, -1.2, 0, 0, 3.0, 0.1, 0.7771299718679158, 0.03975050273558845,
       0.7373794691323273},
      {FamilyTag::SphC3, -1.0, -0.9, 0.3, 0.2, 7.0, 0, 1.4868799766251737, 2.312436744355346,
       -0.8255567677301724},
      {FamilyTag::SphC4, -1.0, -1.1, 0, 0, 7.0, 0.05, 1.7254886581353075, 2.5207567185283493,
       -0.7952680603930418},
  };
  for (const Spot& s : spots) {
    CAPTURE(family_name(s.tag));
    CHECK(edge_length(s.tag, s.fi, s.fj, s.ai, s.aj, s.eta, s.C) ==
          doctest::Approx(s.l).epsilon(1e-14));
    const auto [dij, dji] = partial_lengths(s.tag, s.fi, s.fj, s.ai, s.aj, s.eta, s.C);
    CHECK(dij == doctest::Approx(s.dij).epsilon(1e-13));
    CHECK(dji == doctest::Approx(s.dji).epsilon(1e-13));
    CHECK(std::abs(dij + dji - s.l) < 1e-12);
  }
}

TEST_CASE("edge length is symmetric under (i,j) swap with C negated") {
  Rng rng(31);
  for (FamilyTag tag : {FamilyTag::EuclideanA, FamilyTag::HypB1, FamilyTag::HypB2,
                        FamilyTag::SphC1, FamilyTag::SphC2, FamilyTag::SphC3, FamilyTag::SphC4}) {
    const TriangulatedSurface S = tetrahedron();
    for (int k = 0; k < 25; ++k) {
      const ConformalData d = draw_valid(S, tag, rng);
      for (int e = 0; e < S.edge_count(); ++e) {
        auto [i, j] = S.edges()[e];
        const double lij = edge_length(tag, d.f[i], d.f[j], d.alpha_at(i), d.alpha_at(j),
                                       d.eta[e], d.C_on(S, i, j));
        const double lji = edge_length(tag, d.f[j], d.f[i], d.alpha_at(j), d.alpha_at(i),
                                       d.eta[e], d.C_on(S, j, i));
        CHECK(lij == lji);  // exact
      }
    }
  }
}

TEST_CASE("partial sum identity and cosine-ratio closed forms over random draws") {
  Rng rng(32);
  const TriangulatedSurface S = tetrahedron();
  for (FamilyTag tag : {FamilyTag::HypB1, FamilyTag::HypB2, FamilyTag::SphC1, FamilyTag::SphC2,
                        FamilyTag::SphC3, FamilyTag::SphC4}) {
    CAPTURE(family_name(tag));
    for (int k = 0; k < 50; ++k) {
      const ConformalData d = draw_valid(S, tag, rng);
      for (int e = 0; e < S.edge_count(); ++e) {
        auto [i, j] = S.edges()[e];
        const double l = edge_length(tag, d.f[i], d.f[j], d.alpha_at(i), d.alpha_at(j), d.eta[e],
                                     d.C_on(S, i, j));
        const auto [d_ij, d_ji] = partial_lengths(tag, d.f[i], d.f[j], d.alpha_at(i),
                                                  d.alpha_at(j), d.eta[e], d.C_on(S, i, j));
        CHECK(std::abs(d_ij + d_ji - l) < 1e-10);
        const double ratio = cos_ratio(d.geometry, d_ij, d_ji);
        double expected = 0.0;
        switch (tag) {
          case FamilyTag::HypB1:
            expected = std::sqrt((1 + d.alpha_at(i) * std::exp(2 * d.f[i])) /
                                 (1 + d.alpha_at(j) * std::exp(2 * d.f[j])));
            break;
          case FamilyTag::HypB2:
          case FamilyTag::SphC2:
            expected = std::exp(d.f[i] - d.f[j] + d.C_on(S, i, j));
            break;
          case FamilyTag::SphC1:
            expected = std::sqrt((1 - d.alpha_at(i) * std::exp(2 * d.f[i])) /
                                 (1 - d.alpha_at(j) * std::exp(2 * d.f[j])));
            break;
          case FamilyTag::SphC3:
            expected = -std::sqrt((1 - d.alpha_at(i) * std::exp(2 * d.f[i])) /
                                  (1 - d.alpha_at(j) * std::exp(2 * d.f[j])));
            break;
          case FamilyTag::SphC4:
            expected = -std::exp(d.f[i] - d.f[j] + d.C_on(S, i, j));
            break;
          default: break;
        }
        CHECK(std::abs(ratio - expected) < 1e-10);
      }
    }
  }
}

TEST_CASE("compatibility residual") {
  SUBCASE("all six equal") {
    for (Geometry g : {Geometry::Euclidean, Geometry::Hyperbolic, Geometry::Spherical})
      CHECK(check_compatibility(g, {0.4, 0.4, 0.4, 0.4, 0.4, 0.4}) == 0.0);
  }
  SUBCASE("hyperbolic d = (1,1,1 / 1,1,2)") {
    // |cosh^3(1) - cosh^2(1) cosh(2)|
    CHECK(check_compatibility(Geometry::Hyperbolic, {1, 1, 1, 1, 1, 2}) ==
          doctest::Approx(5.283930079490062).epsilon(1e-14));
  }
}

TEST_CASE("realize on uniform tetrahedra") {
  const TriangulatedSurface S = tetrahedron();
  SUBCASE("(A) unit equilateral") {
    const auto d =
        ConformalData::uniform(S, FamilyTag::EuclideanA, {0, 0, 0, 0}, {0, 0, 0, 0}, 0.5);
    const PartialMetric m = realize(S, d);
    for (int e = 0; e < 6; ++e) {
      CHECK(m.l[e] == doctest::Approx(1.0));
      CHECK(m.d_fwd[e] == doctest::Approx(0.5));
    }
  }
  SUBCASE("(b2) symmetric, compatibility residual 0") {
    const auto d = ConformalData::uniform(S, FamilyTag::HypB2, {0, 0, 0, 0}, {}, 2.0);
    const PartialMetric m = realize(S, d);
    for (int e = 0; e < 6; ++e) CHECK(m.l[e] == doctest::Approx(1.762747174039086));
    for (int f = 0; f < S.face_count(); ++f) {
      const auto& v = S.faces()[f];
      const std::array<double, 6> dd{m.partial(S, v[0], v[1]), m.partial(S, v[1], v[0]),
                                     m.partial(S, v[1], v[2]), m.partial(S, v[2], v[1]),
                                     m.partial(S, v[2], v[0]), m.partial(S, v[0], v[2])};
      CHECK(check_compatibility(Geometry::Hyperbolic, dd) == 0.0);
    }
  }
  SUBCASE("all-c3 spherical violates compatibility") {
    // three negative cosine ratios cannot multiply to the positive product
    const auto d =
        ConformalData::uniform(S, FamilyTag::SphC3, {-1, -1, -1, -1}, {0, 0, 0, 0}, 7.0);
    try {
      realize(S, d);
      FAIL("expected CompatibilityViolated");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::CompatibilityViolated);
    }
  }
}

TEST_CASE("realized faces satisfy the compatibility condition tightly") {
  Rng rng(33);
  const TriangulatedSurface S = tetrahedron();
  for (FamilyTag tag : {FamilyTag::EuclideanA, FamilyTag::HypB1, FamilyTag::HypB2,
                        FamilyTag::SphC1, FamilyTag::SphC2}) {
    CAPTURE(family_name(tag));
    for (int k = 0; k < 40; ++k) {
      const ConformalData d = draw_valid(S, tag, rng);
      const PartialMetric m = realize(S, d);
      for (int f = 0; f < S.face_count(); ++f) {
        const auto& v = S.faces()[f];
        const std::array<double, 6> dd{m.partial(S, v[0], v[1]), m.partial(S, v[1], v[0]),
                                       m.partial(S, v[1], v[2]), m.partial(S, v[2], v[1]),
                                       m.partial(S, v[2], v[0]), m.partial(S, v[0], v[2])};
        CHECK(check_compatibility(d.geometry, dd) < 1e-10);
      }
    }
  }
}

TEST_CASE("mixed spherical faces are compatible and valid") {
  Rng rng(34);
  const TriangulatedSurface S = tetrahedron();
  for (bool alpha_group : {true, false}) {
    CAPTURE(alpha_group);
    const ConformalData d = draw_valid_mixed(S, alpha_group, rng);
    CHECK(validate_spherical_mix(S, d).empty());
    const PartialMetric m = realize(S, d);
    for (int f = 0; f < S.face_count(); ++f) {
      const auto& v = S.faces()[f];
      const std::array<double, 6> dd{m.partial(S, v[0], v[1]), m.partial(S, v[1], v[0]),
                                     m.partial(S, v[1], v[2]), m.partial(S, v[2], v[1]),
                                     m.partial(S, v[2], v[0]), m.partial(S, v[0], v[2])};
      CHECK(check_compatibility(Geometry::Spherical, dd) < 1e-10);
    }
  }
}

TEST_CASE("conformality residuals") {
  const TriangulatedSurface S = tetrahedron();
  SUBCASE("(A) alpha=0, eta=1/2") {
    const auto d =
        ConformalData::uniform(S, FamilyTag::EuclideanA, {0, 0, 0, 0}, {0, 0, 0, 0}, 0.5);
    const ConformalityResidual r = check_conformality(S, d, 0, 1, 1e-6);
    CHECK(r.dl_dfi < 1e-8);
    CHECK(r.dl_dfj < 1e-8);
    CHECK(r.dd_dfk == 0.0);
  }
  SUBCASE("(b1) alpha=1, eta=2") {
    const auto d = ConformalData::uniform(S, FamilyTag::HypB1, {0, 0, 0, 0}, {1, 1, 1, 1}, 2.0);
    const ConformalityResidual r = check_conformality(S, d, 0, 1, 1e-6);
    CHECK(r.dl_dfi < 1e-8);
    CHECK(r.dl_dfj < 1e-8);
    CHECK(r.dd_dfk == 0.0);
  }
  SUBCASE("every family at random points") {
    Rng rng(35);
    for (FamilyTag tag : {FamilyTag::EuclideanA, FamilyTag::HypB1, FamilyTag::HypB2,
                          FamilyTag::SphC1, FamilyTag::SphC2, FamilyTag::SphC3,
                          FamilyTag::SphC4}) {
      CAPTURE(family_name(tag));
      for (int k = 0; k < 10; ++k) {
        const ConformalData d = draw_valid(S, tag, rng);
        for (int e = 0; e < S.edge_count(); ++e) {
          auto [i, j] = S.edges()[e];
          const ConformalityResidual r = check_conformality(S, d, i, j, 1e-6);
          CHECK(r.dl_dfi < 1e-6);
          CHECK(r.dl_dfj < 1e-6);
          CHECK(r.dd_dfk == 0.0);
        }
      }
    }
  }
}

TEST_CASE("validate_C") {
  const TriangulatedSurface S = tetrahedron();
  SUBCASE("zero cocycle") {
    std::map<std::pair<int, int>, double> C;
    for (auto [a, b] : S.edges()) {
      C[{a, b}] = 0.0;
      C[{b, a}] = 0.0;
    }
    CHECK(validate_C(S, C).empty());
  }
  SUBCASE("coboundary passes") {
    const std::vector<double> g = {0.0, -1.0, 0.0, 0.5};
    std::map<std::pair<int, int>, double> C;
    for (auto [a, b] : S.edges()) {
      C[{a, b}] = g[a] - g[b];
      C[{b, a}] = g[b] - g[a];
    }
    CHECK(validate_C(S, C).empty());
    // the face (0,1,2) carries C_01 = 1, C_12 = -1, C_20 = 0
    CHECK(C[{0, 1}] == doctest::Approx(1.0));
    CHECK(C[{1, 2}] == doctest::Approx(-1.0));
    CHECK(C[{2, 0}] == doctest::Approx(0.0));
  }
  SUBCASE("broken antisymmetry is reported") {
    std::map<std::pair<int, int>, double> C;
    for (auto [a, b] : S.edges()) {
      C[{a, b}] = 0.0;
      C[{b, a}] = 0.0;
    }
    C[{0, 1}] = 1.0;
    C[{1, 0}] = 1.0;
    const auto v = validate_C(S, C);
    REQUIRE_FALSE(v.empty());
    bool found = false;
    for (const auto& viol : v) found = found || viol.kind == "antisymmetry";
    CHECK(found);
  }
}

TEST_CASE("validate_spherical_mix parity") {
  const TriangulatedSurface S = tetrahedron();
  SUBCASE("all c1 passes") {
    const auto d = ConformalData::uniform(S, FamilyTag::SphC1, {-1, -1, -1, -1}, {0, 0, 0, 0}, 0.6);
    CHECK(validate_spherical_mix(S, d).empty());
  }
  SUBCASE("one c3 edge per face fails parity") {
    auto d = ConformalData::uniform(S, FamilyTag::SphC1, {-1, -1, -1, -1}, {0, 0, 0, 0}, 0.6);
    d.family[S.edge_id(0, 1)] = FamilyTag::SphC3;  // faces (0,1,2) and (0,1,3) get one c3 edge
    const auto v = validate_spherical_mix(S, d);
    CHECK(v.size() == 2);
    for (const auto& viol : v) CHECK(viol.kind == "face-parity");
  }
  SUBCASE("two c3 edges on a face pass parity") {
    auto d = ConformalData::uniform(S, FamilyTag::SphC1, {-1, -1, -1, -1}, {0, 0, 0, 0}, 0.6);
    // star of vertex 0: every face has an even count
    for (int n : {1, 2, 3}) d.family[S.edge_id(0, n)] = FamilyTag::SphC3;
    CHECK(validate_spherical_mix(S, d).empty());
  }
  SUBCASE("cross-group mixing is rejected") {
    auto d = ConformalData::uniform(S, FamilyTag::SphC1, {-1, -1, -1, -1}, {0, 0, 0, 0}, 0.6);
    d.C.assign(S.edge_count(), 0.0);
    d.family[S.edge_id(2, 3)] = FamilyTag::SphC2;
    const auto v = validate_spherical_mix(S, d);
    bool found = false;
    for (const auto& viol : v) found = found || viol.kind == "mixed-groups";
    CHECK(found);
  }
  SUBCASE("all c3 fails parity on every face of every test mesh") {
    for (const TriangulatedSurface& M : {tetrahedron(), octahedron(), minimal_torus()}) {
      std::vector<double> f(M.vertex_count(), -1.0), a(M.vertex_count(), 0.0);
      const auto d = ConformalData::uniform(M, FamilyTag::SphC3, f, a, 7.0);
      CHECK(static_cast<int>(validate_spherical_mix(M, d).size()) == M.face_count());
    }
  }
}

TEST_CASE("error paths of the edge formulas") {
  SUBCASE("InvalidRadicand") {
    try {
      edge_length(FamilyTag::HypB1, 0.5, 0, -1.0, 0, 2.0, 0);  // 1 - e^1 < 0
      FAIL("expected InvalidRadicand");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::InvalidRadicand);
    }
    try {
      edge_length(FamilyTag::SphC1, 0, 0, 2.0, 0, 0.5, 0);  // 1 - 2 < 0
      FAIL("expected InvalidRadicand");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::InvalidRadicand);
    }
  }
  SUBCASE("NoRealLength") {
    try {
      edge_length(FamilyTag::EuclideanA, 0, 0, -1.0, -1.0, 0.4, 0);  // l^2 = -1.2
      FAIL("expected NoRealLength");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::NoRealLength);
    }
    try {
      edge_length(FamilyTag::SphC1, 0, 0, 0, 0, 2.1, 0);  // cos l = -1.1
      FAIL("expected NoRealLength");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::NoRealLength);
    }
  }
  SUBCASE("TanhOutOfRange") {
    try {
      partial_lengths(FamilyTag::HypB1, 0, 0, -0.99, 0, 2.0, 0);
      FAIL("expected TanhOutOfRange");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::TanhOutOfRange);
    }
  }
}

TEST_CASE("parallel realize matches the serial reference bit for bit") {
  Rng rng(36);
  for (const TriangulatedSurface& S : {tetrahedron(), octahedron()}) {
    for (FamilyTag tag : {FamilyTag::EuclideanA, FamilyTag::HypB1, FamilyTag::HypB2,
                          FamilyTag::SphC1, FamilyTag::SphC2}) {
      for (int k = 0; k < 10; ++k) {
        const ConformalData d = draw_valid(S, tag, rng);
        const PartialMetric a = realize(S, d);
        const PartialMetric b = ref::realize(S, d);
        CHECK(a.l == b.l);
        CHECK(a.d_fwd == b.d_fwd);
        CHECK(a.d_bwd == b.d_bwd);
      }
    }
  }
}

TEST_CASE("realize reports the lowest-index failing face like the reference") {
  const TriangulatedSurface S = tetrahedron();
  const auto d = ConformalData::uniform(S, FamilyTag::SphC3, {-1, -1, -1, -1}, {0, 0, 0, 0}, 7.0);
  std::string parallel_msg, serial_msg;
  try {
    realize(S, d);
  } catch (const Error& e) {
    parallel_msg = e.what();
  }
  try {
    ref::realize(S, d);
  } catch (const Error& e) {
    serial_msg = e.what();
  }
  REQUIRE_FALSE(parallel_msg.empty());
  REQUIRE_FALSE(serial_msg.empty());
}
