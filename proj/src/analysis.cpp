#include "dcs/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <string>

#include "dcs/error.hpp"

namespace dcs {

namespace {

constexpr double kCaseTol = 1e-6;        // |dH/df_i - 2| threshold for case two
constexpr double kConstTol = 1e-6;       // constancy of recovered constants
constexpr double kFitTol = 1e-6;         // roundtrip length agreement
constexpr double kClassifierStep = 1e-6; // FD step inside classify_edge

struct PointEval {
  double H;
  double L;
  double sign;
};

PointEval eval_point(const EdgeProvider& provider, Geometry g, double fi, double fj) {
  const auto [d_ij, d_ji] = provider(fi, fj);
  const double l = d_ij + d_ji;
  if (g == Geometry::Hyperbolic) {
    return {2.0 * (std::log(std::cosh(d_ij)) - std::log(std::cosh(d_ji))), std::cosh(l), 1.0};
  }
  const double ci = std::cos(d_ij), cj = std::cos(d_ji);
  if (ci == 0.0 || cj == 0.0) fail(Errc::ProviderFailure, "cos d vanishes");
  return {2.0 * (std::log(std::abs(ci)) - std::log(std::abs(cj))), std::cos(l),
          ci * cj > 0.0 ? 1.0 : -1.0};
}

}  // namespace

std::vector<HSample> sample_H(const EdgeProvider& provider, Geometry g,
                              const std::vector<std::pair<double, double>>& grid, double h) {
  if (g == Geometry::Euclidean)
    fail(Errc::WrongGeometry, "H is defined for hyperbolic and spherical structures");
  const int n = static_cast<int>(grid.size());
  std::vector<HSample> out(n);
  std::vector<std::optional<Error>> err(n);
#pragma omp parallel for schedule(static)
  for (int k = 0; k < n; ++k) {
    const auto [fi, fj] = grid[k];
    try {
      const PointEval c = eval_point(provider, g, fi, fj);
      const PointEval ip = eval_point(provider, g, fi + h, fj);
      const PointEval im = eval_point(provider, g, fi - h, fj);
      const PointEval jp = eval_point(provider, g, fi, fj + h);
      const PointEval jm = eval_point(provider, g, fi, fj - h);
      out[k] = {fi,
                fj,
                c.H,
                (ip.H - im.H) / (2.0 * h),
                (jp.H - jm.H) / (2.0 * h),
                c.L,
                (ip.L - im.L) / (2.0 * h),
                (jp.L - jm.L) / (2.0 * h),
                c.sign};
    } catch (const Error& e) {
      err[k] = Error(Errc::ProviderFailure, "grid point " + std::to_string(k) + " (" +
                                                std::to_string(fi) + "," + std::to_string(fj) +
                                                "): " + e.what());
    } catch (const std::exception& e) {
      err[k] = Error(Errc::ProviderFailure, "grid point " + std::to_string(k) + ": " + e.what());
    }
  }
  for (int k = 0; k < n; ++k)
    if (err[k]) throw *err[k];
  return out;
}

PdeResiduals verify_H_pde(const std::vector<HSample>& samples) {
  // Recover the product-grid structure from the sample coordinates.
  std::set<double> fis, fjs;
  for (const auto& s : samples) {
    fis.insert(s.f_i);
    fjs.insert(s.f_j);
  }
  const std::vector<double> xi(fis.begin(), fis.end());
  const std::vector<double> xj(fjs.begin(), fjs.end());
  const int ni = static_cast<int>(xi.size()), nj = static_cast<int>(xj.size());
  auto index_of = [](const std::vector<double>& v, double x) {
    return static_cast<int>(std::lower_bound(v.begin(), v.end(), x) - v.begin());
  };
  std::vector<const HSample*> at(static_cast<size_t>(ni) * nj, nullptr);
  for (const auto& s : samples) at[index_of(xi, s.f_i) * nj + index_of(xj, s.f_j)] = &s;

  PdeResiduals r{0.0, 0.0};
  for (int a = 0; a < ni; ++a) {
    for (int b = 0; b < nj; ++b) {
      const HSample* s = at[a * nj + b];
      if (!s) continue;
      // transport in H (F-equation form)
      const double eH = std::exp(s->H);
      r.transport = std::max(r.transport,
                             std::abs(eH * s->dH_dfi + s->dH_dfj - 2.0 * (eH - 1.0)));
      // transport in the length variable: dL/df_i = L - s e^{-H/2},
      // dL/df_j = L - s e^{+H/2}
      r.transport = std::max(
          r.transport, std::abs(s->dL_dfi - (s->L - s->ratio_sign * std::exp(-0.5 * s->H))));
      r.transport = std::max(
          r.transport, std::abs(s->dL_dfj - (s->L - s->ratio_sign * std::exp(0.5 * s->H))));
      // mixed derivative: difference dH/df_i across the f_j grid line (and
      // the transpose), exploiting the product structure
      if (b > 0 && b + 1 < nj) {
        const HSample* up = at[a * nj + b + 1];
        const HSample* dn = at[a * nj + b - 1];
        if (up && dn)
          r.mixed = std::max(r.mixed,
                             std::abs((up->dH_dfi - dn->dH_dfi) / (xj[b + 1] - xj[b - 1])));
      }
      if (a > 0 && a + 1 < ni) {
        const HSample* up = at[(a + 1) * nj + b];
        const HSample* dn = at[(a - 1) * nj + b];
        if (up && dn)
          r.mixed = std::max(r.mixed,
                             std::abs((up->dH_dfj - dn->dH_dfj) / (xi[a + 1] - xi[a - 1])));
      }
    }
  }
  return r;
}

namespace {

struct CaseOneFit {
  bool accepted = false;
  double alpha_i = 0.0, alpha_j = 0.0;
  bool inconsistent = false;  // constants found but varying beyond tolerance
};

CaseOneFit fit_case_one(const std::vector<HSample>& probes, Geometry g) {
  CaseOneFit fit;
  std::vector<double> ai, aj;
  for (const auto& s : probes) {
    const double p = s.dH_dfi, q = s.dH_dfj;
    if (std::abs(2.0 - p) < 1e-12 || std::abs(2.0 + q) < 1e-12) return fit;  // pole: not case one
    double a_i, a_j;
    if (g == Geometry::Hyperbolic) {
      a_i = p * std::exp(-2.0 * s.f_i) / (2.0 - p);
      a_j = -q * std::exp(-2.0 * s.f_j) / (2.0 + q);
    } else {
      a_i = -p * std::exp(-2.0 * s.f_i) / (2.0 - p);
      a_j = q * std::exp(-2.0 * s.f_j) / (2.0 + q);
    }
    if (!std::isfinite(a_i) || !std::isfinite(a_j)) return fit;
    ai.push_back(a_i);
    aj.push_back(a_j);
  }
  auto spread = [](const std::vector<double>& v) {
    auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi - *lo;
  };
  auto mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  fit.alpha_i = mean(ai);
  fit.alpha_j = mean(aj);
  const double tol_i = kConstTol * std::max(1.0, std::abs(fit.alpha_i));
  const double tol_j = kConstTol * std::max(1.0, std::abs(fit.alpha_j));
  if (spread(ai) > tol_i || spread(aj) > tol_j) {
    fit.inconsistent = true;
    return fit;
  }
  fit.accepted = true;
  return fit;
}

}  // namespace

ClassificationResult classify_edge(const EdgeProvider& provider, Geometry g,
                                   const SearchBox& box) {
  if (g == Geometry::Euclidean)
    fail(Errc::WrongGeometry, "the classifier covers hyperbolic and spherical structures");

  std::vector<std::pair<double, double>> grid;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b)
      grid.emplace_back(box.fi_lo + a * (box.fi_hi - box.fi_lo) / 4.0,
                        box.fj_lo + b * (box.fj_hi - box.fj_lo) / 4.0);
  const std::vector<HSample> probes = sample_H(provider, g, grid, kClassifierStep);

  double sign = probes.front().ratio_sign;
  for (const auto& s : probes)
    if (s.ratio_sign != sign)
      fail(Errc::NotClassifiable, "cosine-ratio sign is not constant over the box");

  // Case-two test: dH/df_i == 2 and dH/df_j == -2 at every probe.
  bool case2 = true;
  for (const auto& s : probes)
    case2 = case2 && std::abs(s.dH_dfi - 2.0) < kCaseTol && std::abs(s.dH_dfj + 2.0) < kCaseTol;

  const CaseOneFit case1 = fit_case_one(probes, g);

  ClassificationResult res;
  res.case1_accepted = case1.accepted;
  res.case2_accepted = case2;

  // The probe with the largest e^{f_i+f_j} conditions the eta solve best.
  const HSample* best = &probes.front();
  for (const auto& s : probes)
    if (s.f_i + s.f_j > best->f_i + best->f_j) best = &s;

  if (case2) {
    res.case_two = true;
    std::vector<double> cs;
    for (const auto& s : probes) cs.push_back(0.5 * (s.H - 2.0 * s.f_i + 2.0 * s.f_j));
    auto [lo, hi] = std::minmax_element(cs.begin(), cs.end());
    if (*hi - *lo > kConstTol)
      fail(Errc::InconsistentConstant, "C_ij varies by " + std::to_string(*hi - *lo));
    double C = 0.0;
    for (double c : cs) C += c;
    C /= static_cast<double>(cs.size());
    res.C_ij = C;
    const double F = best->f_j - best->f_i - C;
    if (g == Geometry::Hyperbolic) {
      res.family = FamilyTag::HypB2;
      res.eta = (best->L - std::cosh(F)) * std::exp(-best->f_i - best->f_j);
    } else if (sign > 0.0) {
      res.family = FamilyTag::SphC2;
      res.eta = (std::cosh(F) - best->L) * std::exp(-best->f_i - best->f_j);
    } else {
      res.family = FamilyTag::SphC4;
      res.eta = (best->L + std::cosh(F)) * std::exp(-best->f_i - best->f_j);
    }
  } else if (case1.accepted) {
    res.alpha_i = case1.alpha_i;
    res.alpha_j = case1.alpha_j;
    const double Ri = 1.0 + (g == Geometry::Hyperbolic ? 1.0 : -1.0) * res.alpha_i *
                                std::exp(2.0 * best->f_i);
    const double Rj = 1.0 + (g == Geometry::Hyperbolic ? 1.0 : -1.0) * res.alpha_j *
                                std::exp(2.0 * best->f_j);
    if (!(Ri > 0.0) || !(Rj > 0.0))
      fail(Errc::NotClassifiable, "recovered alpha leaves the validity domain");
    const double root = std::sqrt(Ri * Rj);
    if (g == Geometry::Hyperbolic) {
      res.family = FamilyTag::HypB1;
      res.eta = (best->L - root) * std::exp(-best->f_i - best->f_j);
    } else if (sign > 0.0) {
      res.family = FamilyTag::SphC1;
      res.eta = (root - best->L) * std::exp(-best->f_i - best->f_j);
    } else {
      res.family = FamilyTag::SphC3;
      res.eta = (best->L + root) * std::exp(-best->f_i - best->f_j);
    }
  } else if (case1.inconsistent) {
    fail(Errc::InconsistentConstant, "a_ij varies beyond tolerance and dH/df_i != 2");
  } else {
    fail(Errc::NotClassifiable, "neither solution branch fits");
  }

  // Roundtrip: recovered parameters must reproduce the provider's lengths.
  for (const auto& s : probes) {
    const auto [d_ij, d_ji] = provider(s.f_i, s.f_j);
    const double l_model = edge_length(res.family, s.f_i, s.f_j, res.alpha_i, res.alpha_j,
                                       res.eta, res.C_ij);
    res.fit_residual = std::max(res.fit_residual, std::abs(l_model - (d_ij + d_ji)));
  }
  if (res.fit_residual > kFitTol)
    fail(Errc::NotClassifiable,
         "recovered parameters misfit lengths by " + std::to_string(res.fit_residual));
  return res;
}

}  // namespace dcs
