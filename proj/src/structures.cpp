#include "dcs/structures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "dcs/error.hpp"

namespace dcs {

namespace {

constexpr double kPi = std::numbers::pi;

std::string num_str(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

std::string edge_str(const TriangulatedSurface& S, int e) {
  auto [a, b] = S.edges()[e];
  return "{" + std::to_string(a) + "," + std::to_string(b) + "}";
}

std::string face_str(const TriangulatedSurface& S, int f) {
  const auto& v = S.faces()[f];
  return "(" + std::to_string(v[0]) + "," + std::to_string(v[1]) + "," + std::to_string(v[2]) + ")";
}

struct EdgeEval {
  double l;
  double d_ij;
  double d_ji;
};

// One edge of family (A): l^2 = a_i e^{2f_i} + a_j e^{2f_j} + 2 eta e^{f_i+f_j},
// d_ij = (a_i e^{2f_i} + eta e^{f_i+f_j}) / l.
EdgeEval eval_A(double fi, double fj, double ai, double aj, double eta) {
  const double Ai = ai * std::exp(2.0 * fi);
  const double Aj = aj * std::exp(2.0 * fj);
  const double E = eta * std::exp(fi + fj);
  const double l2 = Ai + Aj + 2.0 * E;
  if (!(l2 > 0.0)) fail(Errc::NoRealLength, "squared length " + num_str(l2));
  const double l = std::sqrt(l2);
  return {l, (Ai + E) / l, (Aj + E) / l};
}

double atanh_checked(double x) {
  if (!(std::abs(x) < 1.0)) fail(Errc::TanhOutOfRange, "tanh value " + num_str(x));
  return std::atanh(x);
}

// (b1): cosh l = sqrt(B_i B_j) + eta e^{f_i+f_j}, B = 1 + alpha e^{2f};
// tanh d_ij = (a_i e^{2f_i} sqrt(B_j/B_i) + eta e^{f_i+f_j}) / sinh l.
EdgeEval eval_b1(double fi, double fj, double ai, double aj, double eta) {
  const double Ai = ai * std::exp(2.0 * fi);
  const double Aj = aj * std::exp(2.0 * fj);
  const double Bi = 1.0 + Ai, Bj = 1.0 + Aj;
  if (!(Bi > 0.0) || !(Bj > 0.0))
    fail(Errc::InvalidRadicand, "1 + alpha*e^{2f} = " + num_str(Bi > 0.0 ? Bj : Bi));
  const double E = eta * std::exp(fi + fj);
  const double ch = std::sqrt(Bi * Bj) + E;
  if (!(ch > 1.0)) fail(Errc::NoRealLength, "cosh l = " + num_str(ch));
  const double l = std::acosh(ch);
  const double sh = std::sinh(l);
  return {l, atanh_checked((Ai * std::sqrt(Bj / Bi) + E) / sh),
          atanh_checked((Aj * std::sqrt(Bi / Bj) + E) / sh)};
}

// (b2): cosh l = cosh(f_j - f_i - C_ij) + eta e^{f_i+f_j};
// tanh d_ij = (-sinh(f_j - f_i - C_ij) + eta e^{f_i+f_j}) / sinh l.
EdgeEval eval_b2(double fi, double fj, double C, double eta) {
  const double F = fj - fi - C;
  const double E = eta * std::exp(fi + fj);
  const double ch = std::cosh(F) + E;
  if (!(ch > 1.0)) fail(Errc::NoRealLength, "cosh l = " + num_str(ch));
  const double l = std::acosh(ch);
  const double sh = std::sinh(l);
  return {l, atanh_checked((-std::sinh(F) + E) / sh), atanh_checked((std::sinh(F) + E) / sh)};
}

double acos_strict(double c) {
  if (!(std::abs(c) < 1.0)) fail(Errc::NoRealLength, "cos l = " + num_str(c));
  return std::acos(c);
}

// Spherical branch assignment. tan is pi-periodic, so the principal
// arctangents determine d only up to multiples of pi; the true pair sums to
// l with both cosines positive for (c1)/(c2) and exactly one negative for
// (c3)/(c4). The pi shift is applied to d_ij.
EdgeEval spherical_branch(double l, double t_ij, double t_ji, bool negative_ratio) {
  const double d0i = std::atan(t_ij), d0j = std::atan(t_ji);
  const double want = negative_ratio ? l - kPi : l;
  if (std::abs(d0i + d0j - want) > kBranchTol)
    fail(Errc::BranchFailure, "principal sum " + num_str(d0i + d0j) +
                                  " does not reconcile with length " + num_str(l));
  return {l, negative_ratio ? d0i + kPi : d0i, d0j};
}

// (c1): cos l = sqrt(X_i X_j) - eta e^{f_i+f_j}, X = 1 - alpha e^{2f};
// tan d_ij = (a_i e^{2f_i} sqrt(X_j/X_i) + eta e^{f_i+f_j}) / sin l.
EdgeEval eval_c1(double fi, double fj, double ai, double aj, double eta) {
  const double Ai = ai * std::exp(2.0 * fi);
  const double Aj = aj * std::exp(2.0 * fj);
  const double Xi = 1.0 - Ai, Xj = 1.0 - Aj;
  if (!(Xi > 0.0) || !(Xj > 0.0))
    fail(Errc::InvalidRadicand, "1 - alpha*e^{2f} = " + num_str(Xi > 0.0 ? Xj : Xi));
  const double E = eta * std::exp(fi + fj);
  const double l = acos_strict(std::sqrt(Xi * Xj) - E);
  const double s = std::sin(l);
  return spherical_branch(l, (Ai * std::sqrt(Xj / Xi) + E) / s, (Aj * std::sqrt(Xi / Xj) + E) / s,
                          false);
}

// (c2): cos l = cosh(f_j - f_i - C_ij) - eta e^{f_i+f_j};
// tan d_ij = (sinh(f_j - f_i - C_ij) + eta e^{f_i+f_j}) / sin l.
EdgeEval eval_c2(double fi, double fj, double C, double eta) {
  const double F = fj - fi - C;
  const double E = eta * std::exp(fi + fj);
  const double l = acos_strict(std::cosh(F) - E);
  const double s = std::sin(l);
  return spherical_branch(l, (std::sinh(F) + E) / s, (-std::sinh(F) + E) / s, false);
}

// (c3): cos l = -sqrt(X_i X_j) + eta e^{f_i+f_j};
// tan d_ij = -(a_i e^{2f_i} sqrt(X_j/X_i) + eta e^{f_i+f_j}) / sin l.
EdgeEval eval_c3(double fi, double fj, double ai, double aj, double eta) {
  const double Ai = ai * std::exp(2.0 * fi);
  const double Aj = aj * std::exp(2.0 * fj);
  const double Xi = 1.0 - Ai, Xj = 1.0 - Aj;
  if (!(Xi > 0.0) || !(Xj > 0.0))
    fail(Errc::InvalidRadicand, "1 - alpha*e^{2f} = " + num_str(Xi > 0.0 ? Xj : Xi));
  const double E = eta * std::exp(fi + fj);
  const double l = acos_strict(-std::sqrt(Xi * Xj) + E);
  const double s = std::sin(l);
  return spherical_branch(l, -(Ai * std::sqrt(Xj / Xi) + E) / s, -(Aj * std::sqrt(Xi / Xj) + E) / s,
                          true);
}

// (c4): cos l = -cosh(f_j - f_i - C_ij) + eta e^{f_i+f_j};
// tan d_ij = (-sinh(f_j - f_i - C_ij) - eta e^{f_i+f_j}) / sin l.
EdgeEval eval_c4(double fi, double fj, double C, double eta) {
  const double F = fj - fi - C;
  const double E = eta * std::exp(fi + fj);
  const double l = acos_strict(-std::cosh(F) + E);
  const double s = std::sin(l);
  return spherical_branch(l, (-std::sinh(F) - E) / s, (std::sinh(F) - E) / s, true);
}

EdgeEval eval_edge(FamilyTag tag, double fi, double fj, double ai, double aj, double eta,
                   double C) {
  switch (tag) {
    case FamilyTag::EuclideanA: return eval_A(fi, fj, ai, aj, eta);
    case FamilyTag::HypB1: return eval_b1(fi, fj, ai, aj, eta);
    case FamilyTag::HypB2: return eval_b2(fi, fj, C, eta);
    case FamilyTag::SphC1: return eval_c1(fi, fj, ai, aj, eta);
    case FamilyTag::SphC2: return eval_c2(fi, fj, C, eta);
    case FamilyTag::SphC3: return eval_c3(fi, fj, ai, aj, eta);
    case FamilyTag::SphC4: return eval_c4(fi, fj, C, eta);
  }
  fail(Errc::WrongFamily, "unknown family tag");
}

EdgeEval eval_data_edge(const TriangulatedSurface& S, const ConformalData& data, int e) {
  auto [a, b] = S.edges()[e];
  return eval_edge(data.family[e], data.f[a], data.f[b], data.alpha_at(a), data.alpha_at(b),
                   data.eta[e], data.C_edge(e));
}

}  // namespace

Geometry family_geometry(FamilyTag t) {
  switch (t) {
    case FamilyTag::EuclideanA: return Geometry::Euclidean;
    case FamilyTag::HypB1:
    case FamilyTag::HypB2: return Geometry::Hyperbolic;
    default: return Geometry::Spherical;
  }
}

bool family_uses_alpha(FamilyTag t) {
  return t == FamilyTag::EuclideanA || t == FamilyTag::HypB1 || t == FamilyTag::SphC1 ||
         t == FamilyTag::SphC3;
}

bool family_uses_C(FamilyTag t) {
  return t == FamilyTag::HypB2 || t == FamilyTag::SphC2 || t == FamilyTag::SphC4;
}

const char* family_name(FamilyTag t) {
  switch (t) {
    case FamilyTag::EuclideanA: return "A";
    case FamilyTag::HypB1: return "b1";
    case FamilyTag::HypB2: return "b2";
    case FamilyTag::SphC1: return "c1";
    case FamilyTag::SphC2: return "c2";
    case FamilyTag::SphC3: return "c3";
    case FamilyTag::SphC4: return "c4";
  }
  return "?";
}

FamilyTag family_from_name(const std::string& name) {
  if (name == "A") return FamilyTag::EuclideanA;
  if (name == "b1") return FamilyTag::HypB1;
  if (name == "b2") return FamilyTag::HypB2;
  if (name == "c1") return FamilyTag::SphC1;
  if (name == "c2") return FamilyTag::SphC2;
  if (name == "c3") return FamilyTag::SphC3;
  if (name == "c4") return FamilyTag::SphC4;
  fail(Errc::SchemaError, "unknown family tag '" + name + "'");
}

ConformalData ConformalData::uniform(const TriangulatedSurface& S, FamilyTag tag,
                                     std::vector<double> f, std::vector<double> alpha, double eta,
                                     double C) {
  ConformalData d;
  d.geometry = family_geometry(tag);
  d.f = std::move(f);
  d.alpha = std::move(alpha);
  d.eta.assign(S.edge_count(), eta);
  if (C != 0.0 || family_uses_C(tag)) d.C.assign(S.edge_count(), C);
  d.family.assign(S.edge_count(), tag);
  return d;
}

double ConformalData::C_on(const TriangulatedSurface& S, int i, int j) const {
  const int e = S.edge_id(i, j);
  if (e < 0) fail(Errc::SchemaError, "not an edge");
  const double c = C_edge(e);
  return i < j ? c : -c;
}

double PartialMetric::length(const TriangulatedSurface& S, int i, int j) const {
  const int e = S.edge_id(i, j);
  if (e < 0) fail(Errc::SchemaError, "not an edge");
  return l[e];
}

double PartialMetric::partial(const TriangulatedSurface& S, int i, int j) const {
  const int e = S.edge_id(i, j);
  if (e < 0) fail(Errc::SchemaError, "not an edge");
  return i < j ? d_fwd[e] : d_bwd[e];
}

double edge_length(FamilyTag tag, double f_i, double f_j, double alpha_i, double alpha_j,
                   double eta, double C_ij) {
  return eval_edge(tag, f_i, f_j, alpha_i, alpha_j, eta, C_ij).l;
}

std::pair<double, double> partial_lengths(FamilyTag tag, double f_i, double f_j, double alpha_i,
                                          double alpha_j, double eta, double C_ij) {
  const EdgeEval e = eval_edge(tag, f_i, f_j, alpha_i, alpha_j, eta, C_ij);
  return {e.d_ij, e.d_ji};
}

EdgeRealization realize_edge(FamilyTag tag, double f_i, double f_j, double alpha_i,
                             double alpha_j, double eta, double C_ij) {
  const EdgeEval e = eval_edge(tag, f_i, f_j, alpha_i, alpha_j, eta, C_ij);
  return {e.l, e.d_ij, e.d_ji};
}

double check_compatibility(Geometry g, const std::array<double, 6>& d) {
  // d = (d_ij, d_ji, d_jk, d_kj, d_ki, d_ik); LHS cycles i->j->k, RHS the reverse.
  switch (g) {
    case Geometry::Euclidean:
      return std::abs((d[0] * d[0] + d[2] * d[2] + d[4] * d[4]) -
                      (d[1] * d[1] + d[3] * d[3] + d[5] * d[5]));
    case Geometry::Hyperbolic:
      return std::abs(std::cosh(d[0]) * std::cosh(d[2]) * std::cosh(d[4]) -
                      std::cosh(d[1]) * std::cosh(d[3]) * std::cosh(d[5]));
    case Geometry::Spherical:
      return std::abs(std::cos(d[0]) * std::cos(d[2]) * std::cos(d[4]) -
                      std::cos(d[1]) * std::cos(d[3]) * std::cos(d[5]));
  }
  return 0.0;
}

PartialMetric realize(const TriangulatedSurface& S, const ConformalData& data) {
  const int ne = S.edge_count();
  const int nf = S.face_count();
  if (static_cast<int>(data.f.size()) != S.vertex_count())
    fail(Errc::SchemaError, "f has wrong size");
  if (static_cast<int>(data.eta.size()) != ne) fail(Errc::SchemaError, "eta has wrong size");
  if (static_cast<int>(data.family.size()) != ne) fail(Errc::SchemaError, "family has wrong size");

  PartialMetric m;
  m.l.resize(ne);
  m.d_fwd.resize(ne);
  m.d_bwd.resize(ne);

  std::vector<std::optional<Error>> edge_err(ne);
#pragma omp parallel for schedule(static)
  for (int e = 0; e < ne; ++e) {
    try {
      const EdgeEval ev = eval_data_edge(S, data, e);
      m.l[e] = ev.l;
      m.d_fwd[e] = ev.d_ij;
      m.d_bwd[e] = ev.d_ji;
    } catch (const Error& err) {
      edge_err[e] = Error(err.code(), "edge " + edge_str(S, e) + ": " + err.what());
    }
  }
  for (int e = 0; e < ne; ++e)
    if (edge_err[e]) throw *edge_err[e];

  std::vector<std::optional<Error>> face_err(nf);
#pragma omp parallel for schedule(static)
  for (int f = 0; f < nf; ++f) {
    const auto& v = S.faces()[f];
    const int i = v[0], j = v[1], k = v[2];
    const TriangleLengths t{m.length(S, i, j), m.length(S, j, k), m.length(S, k, i)};
    try {
      if (!is_embeddable(data.geometry, t)) {
        face_err[f] = Error(Errc::FaceNotEmbeddable, "face " + face_str(S, f));
        continue;
      }
      const std::array<double, 6> d{m.partial(S, i, j), m.partial(S, j, i), m.partial(S, j, k),
                                    m.partial(S, k, j), m.partial(S, k, i), m.partial(S, i, k)};
      const double r = check_compatibility(data.geometry, d);
      if (r > kRealizeCompatibilityTol)
        face_err[f] = Error(Errc::CompatibilityViolated,
                            "face " + face_str(S, f) + " residual " + num_str(r));
    } catch (const Error& err) {
      face_err[f] = Error(err.code(), "face " + face_str(S, f) + ": " + err.what());
    }
  }
  for (int f = 0; f < nf; ++f)
    if (face_err[f]) throw *face_err[f];

  return m;
}

ConformalityResidual check_conformality(const TriangulatedSurface& S, const ConformalData& data,
                                        int i, int j, double h) {
  const int e = S.edge_id(i, j);
  if (e < 0) fail(Errc::SchemaError, "not an edge");
  const FamilyTag tag = data.family[e];
  const double eta = data.eta[e];
  const double C = data.C_on(S, i, j);
  const double ai = data.alpha_at(i), aj = data.alpha_at(j);
  const double fi = data.f[i], fj = data.f[j];

  auto eval = [&](double x, double y) -> EdgeEval {
    try {
      return eval_edge(tag, x, y, ai, aj, eta, C);
    } catch (const Error& err) {
      fail(Errc::PerturbationInvalid, std::string("at perturbed f: ") + err.what());
    }
  };

  const EdgeEval center = eval(fi, fj);
  const double dl_dfi = (eval(fi + h, fj).l - eval(fi - h, fj).l) / (2.0 * h);
  const double dl_dfj = (eval(fi, fj + h).l - eval(fi, fj - h).l) / (2.0 * h);

  auto T = [&](double d) {
    switch (data.geometry) {
      case Geometry::Euclidean: return d;
      case Geometry::Hyperbolic: return std::tanh(d);
      case Geometry::Spherical: return std::tan(d);
    }
    return d;
  };

  // d_ij never reads the conformal factor of a vertex off the edge; the
  // finite difference below is exactly zero because f_k does not enter the
  // edge evaluation at all.
  double dd_dfk = 0.0;
  for (int face : S.edge_faces(e)) {
    int k = -1;
    for (int v : S.faces()[face])
      if (v != i && v != j) k = v;
    ConformalData shifted = data;
    shifted.f[k] += h;
    const double d_plus =
        partial_lengths(tag, shifted.f[i], shifted.f[j], ai, aj, eta, C).first;
    shifted.f[k] -= 2.0 * h;
    const double d_minus =
        partial_lengths(tag, shifted.f[i], shifted.f[j], ai, aj, eta, C).first;
    dd_dfk = std::max(dd_dfk, std::abs((d_plus - d_minus) / (2.0 * h)));
  }

  return {std::abs(dl_dfi - T(center.d_ij)), std::abs(dl_dfj - T(center.d_ji)), dd_dfk};
}

std::string Violation::describe(const TriangulatedSurface& S) const {
  std::string s = kind;
  if (edge >= 0) s += " at edge " + edge_str(S, edge);
  if (face >= 0) s += " at face " + face_str(S, face);
  return s;
}

std::vector<Violation> validate_C(const TriangulatedSurface& S,
                                  const std::map<std::pair<int, int>, double>& C) {
  std::vector<Violation> out;
  auto get = [&](int a, int b) -> std::optional<double> {
    auto it = C.find({a, b});
    if (it == C.end()) return std::nullopt;
    return it->second;
  };
  for (int e = 0; e < S.edge_count(); ++e) {
    auto [a, b] = S.edges()[e];
    auto cab = get(a, b), cba = get(b, a);
    if (!cab || !cba) {
      out.push_back({"missing", e, -1, 0.0, false});
      continue;
    }
    if (std::abs(*cab + *cba) > kCocycleTol) out.push_back({"antisymmetry", e, -1, *cab + *cba, false});
  }
  for (int f = 0; f < S.face_count(); ++f) {
    const auto& v = S.faces()[f];
    auto c01 = get(v[0], v[1]), c12 = get(v[1], v[2]), c20 = get(v[2], v[0]);
    if (!c01 || !c12 || !c20) continue;  // already reported as missing
    const double sum = *c01 + *c12 + *c20;
    if (std::abs(sum) > kCocycleTol) out.push_back({"face-sum", -1, f, sum, false});
  }
  return out;
}

std::vector<Violation> validate_spherical_mix(const TriangulatedSurface& S,
                                              const ConformalData& data) {
  if (data.geometry != Geometry::Spherical)
    fail(Errc::WrongGeometry, "spherical mixing rules apply to spherical data");
  std::vector<Violation> out;
  bool alpha_group = false, C_group = false;
  for (FamilyTag t : data.family) {
    if (t == FamilyTag::SphC1 || t == FamilyTag::SphC3) alpha_group = true;
    if (t == FamilyTag::SphC2 || t == FamilyTag::SphC4) C_group = true;
  }
  if (alpha_group && C_group) out.push_back({"mixed-groups", -1, -1, 0.0, false});
  for (int f = 0; f < S.face_count(); ++f) {
    int negatives = 0;
    for (int e : S.face_edges(f)) {
      const FamilyTag t = data.family[e];
      if (t == FamilyTag::SphC3 || t == FamilyTag::SphC4) ++negatives;
    }
    if (negatives % 2 != 0)
      out.push_back({"face-parity", -1, f, static_cast<double>(negatives), false});
  }
  return out;
}

std::vector<Violation> validate_data(const TriangulatedSurface& S, const ConformalData& data) {
  const int ne = S.edge_count();
  if (static_cast<int>(data.f.size()) != S.vertex_count() ||
      static_cast<int>(data.eta.size()) != ne || static_cast<int>(data.family.size()) != ne ||
      (!data.alpha.empty() && static_cast<int>(data.alpha.size()) != S.vertex_count()) ||
      (!data.C.empty() && static_cast<int>(data.C.size()) != ne))
    fail(Errc::SchemaError, "field sizes do not match the surface");

  std::vector<Violation> out;
  for (FamilyTag t : data.family)
    if (family_geometry(t) != data.geometry) {
      out.push_back({"mixed-families", -1, -1, 0.0, false});
      return out;
    }

  if (data.geometry == Geometry::Spherical) {
    auto mix = validate_spherical_mix(S, data);
    out.insert(out.end(), mix.begin(), mix.end());
  } else {
    // Outside the spherical group only one family may live on a mesh.
    for (int e = 1; e < ne; ++e)
      if (data.family[e] != data.family[0]) {
        out.push_back({"mixed-families", e, -1, 0.0, false});
        break;
      }
  }

  if (!data.C.empty()) {
    for (int f = 0; f < S.face_count(); ++f) {
      const auto& v = S.faces()[f];
      const double sum =
          data.C_on(S, v[0], v[1]) + data.C_on(S, v[1], v[2]) + data.C_on(S, v[2], v[0]);
      if (std::abs(sum) > kCocycleTol) out.push_back({"face-sum", -1, f, sum, false});
    }
  }

  // Parameters present but ignored by the edge's family: warn, never fail.
  bool any_alpha = false;
  for (double a : data.alpha) any_alpha = any_alpha || a != 0.0;
  bool any_C = false;
  for (double c : data.C) any_C = any_C || c != 0.0;
  bool alpha_used = false, C_used = false;
  for (FamilyTag t : data.family) {
    alpha_used = alpha_used || family_uses_alpha(t);
    C_used = C_used || family_uses_C(t);
  }
  if (any_alpha && !alpha_used) out.push_back({"unused-alpha", -1, -1, 0.0, true});
  if (any_C && !C_used) out.push_back({"unused-C", -1, -1, 0.0, true});
  return out;
}

}  // namespace dcs
