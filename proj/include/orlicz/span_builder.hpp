#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "orlicz/detail/numeric.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/orlicz_spec.hpp"
#include "orlicz/sampled_function.hpp"

namespace orlicz {

enum class EquivVerdict { Equivalent, LhsDominated, RhsDominated, Inconclusive };

/// Paired evaluations of two quantities over a parameter grid. "Equivalent"
/// means the ratio stays inside the band AND shows no log-log trend;
/// LhsDominated records a decreasing ratio (lhs ≼ rhs), RhsDominated the
/// mirror image.
struct EquivalenceReport {
  std::vector<double> param, lhs, rhs;
  double ratio_min = 0.0;
  double ratio_max = 0.0;
  double trend_slope = 0.0;
  EquivVerdict verdict = EquivVerdict::Inconclusive;
  double band_limit = 10.0;
  double slope_tol = 0.02;
};

inline EquivalenceReport make_equivalence_report(std::vector<double> param,
                                                 std::vector<double> lhs, std::vector<double> rhs,
                                                 double band_limit = 10.0,
                                                 double slope_tol = 0.02) {
  if (param.size() != lhs.size() || lhs.size() != rhs.size() || param.empty())
    throw std::invalid_argument("make_equivalence_report: mismatched series");
  EquivalenceReport r;
  r.band_limit = band_limit;
  r.slope_tol = slope_tol;
  std::vector<double> lx, ly;
  r.ratio_min = detail::kInf;
  r.ratio_max = 0.0;
  for (std::size_t i = 0; i < param.size(); ++i) {
    if (!(lhs[i] > 0.0) || !(rhs[i] > 0.0))
      throw std::invalid_argument("make_equivalence_report: nonpositive values");
    const double q = lhs[i] / rhs[i];
    r.ratio_min = std::min(r.ratio_min, q);
    r.ratio_max = std::max(r.ratio_max, q);
    lx.push_back(std::log(param[i]));
    ly.push_back(std::log(q));
  }
  bool distinct = false;
  for (std::size_t i = 1; i < lx.size(); ++i)
    if (lx[i] != lx[0]) distinct = true;
  r.trend_slope = distinct ? detail::fit_line(lx, ly).slope : 0.0;
  if (r.ratio_max / r.ratio_min <= band_limit && std::abs(r.trend_slope) <= slope_tol)
    r.verdict = EquivVerdict::Equivalent;
  else if (r.trend_slope < -slope_tol)
    r.verdict = EquivVerdict::LhsDominated;
  else if (r.trend_slope > slope_tol)
    r.verdict = EquivVerdict::RhsDominated;
  else
    r.verdict = EquivVerdict::Inconclusive;
  r.param = std::move(param);
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  return r;
}

/// θ(u) = u² for u <= 1, M(u) for u >= 1, then smoothed into the convex
/// equivalent ∫_0^t θ(u)/u du. Power(2) passes through untouched (the splice
/// is seamless there).
inline OrliczSpec build_theta(const OrliczSpec& M) {
  if (auto p = M.power_exponent(); p && *p == 2.0) return M;
  auto spliced = OrliczSpec::spliced(OrliczSpec::power(2.0), M, 1.0);
  return regularize(spliced);
}

/// ψ(u) = ∫_0^1 θ(u·f(t)) dt on a log-u grid (Tabulated, normalized, with
/// end-slope extrapolation). Throws if the integral diverges — that means
/// f is not in the Orlicz class of θ. The grid reaches far below where ψ is
/// ever consumed directly so that index dilations ψ(st)/ψ(t) with s down to
/// 2^{-40} stay on-grid instead of in the power-extrapolated region.
inline OrliczSpec build_psi(const OrliczSpec& M, const SampledRealFunction& f,
                            double u_min = 1e-26, int per_decade = 24) {
  const OrliczSpec theta = build_theta(M);
  const auto grid = detail::log_grid(u_min, 1.0, per_decade);
  std::vector<double> vals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double lu = std::log(grid[i]);
    const auto I = detail::integrate01_log([&](double log_t) {
      const double lf = f.log_value(log_t);
      if (lf == detail::kNegInf) return detail::kNegInf;
      return theta.log_eval(lu + lf);
    });
    if (I.diverged || !(I.value > 0.0))
      throw std::runtime_error("build_psi: integral diverges (f outside the Orlicz class)");
    vals[i] = I.value;
  }
  auto slope = [&](std::size_t i, std::size_t j) {
    return (std::log(vals[j]) - std::log(vals[i])) / (std::log(grid[j]) - std::log(grid[i]));
  };
  const double ext_low = slope(0, static_cast<std::size_t>(per_decade));
  const double ext_high = slope(grid.size() - 1 - per_decade, grid.size() - 1);
  return OrliczSpec::tabulated(grid, vals, ext_low, ext_high);
}

/// Right side of the dilation equivalence: ‖σ_n f‖_{L_M} + (n ∫_{1/n}^1 f²)^{1/2}.
inline double luxem2_rhs(const OrliczSpec& M, const SampledRealFunction& f, double n) {
  if (!(n >= 1.0)) throw std::invalid_argument("luxem2_rhs: need n >= 1");
  const auto nm = luxemburg_norm(M, dilate(f, n));
  if (nm.flag == NormFlag::NotInSpace)
    throw std::runtime_error("luxem2_rhs: dilated function not in L_M");
  double tail = 0.0;
  if (n > 1.0) tail = std::sqrt(n * integral_power_range(f, 1.0 / n, 1.0, 2.0));
  return nm.value + tail;
}

/// Compare 1/ψ^{-1}(1/n) against luxem2_rhs over n = 2^0..2^K.
inline EquivalenceReport luxem2_check(const OrliczSpec& M, const OrliczSpec& psi,
                                      const SampledRealFunction& f, int max_k = 20,
                                      double band_limit = 10.0, double slope_tol = 0.02) {
  std::vector<double> ns, lhs, rhs;
  for (int k = 0; k <= max_k; ++k) {
    const double n = std::pow(2.0, k);
    ns.push_back(n);
    lhs.push_back(fundamental_seq(psi, n));
    rhs.push_back(luxem2_rhs(M, f, n));
  }
  return make_equivalence_report(std::move(ns), std::move(lhs), std::move(rhs), band_limit,
                                 slope_tol);
}

/// Norm of the unit-interval part of the rearranged disjoint sum,
/// ‖(a⊗̄f)*χ_{[0,1]}‖_{L_M}; the companion tail is l2_tail().
inline NormResult luxem1_body(const OrliczSpec& M, const CoeffSeq& a,
                              const SampledRealFunction& f) {
  const auto d = disjoint_sum(a, f);
  const auto r = tabulate(rearrangement(d, Domain::UnitInterval));
  return luxemburg_norm(M, r);
}

/// Compare ‖a‖_{ℓψ} against ‖(a⊗̄f)*χ_{[0,1]}‖_{L_M} + ‖(a⊗̄f)*χ_{[1,∞)}‖_{L²}
/// over a coefficient corpus. Corpus members are unordered, so only the band
/// is decision-relevant; the slope tolerance is left wide.
inline EquivalenceReport luxem1_check(const OrliczSpec& M, const OrliczSpec& psi,
                                      const SampledRealFunction& f,
                                      const std::vector<CoeffSeq>& corpus,
                                      double band_limit = 10.0) {
  std::vector<double> idx, lhs, rhs;
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const auto& a = corpus[k];
    const auto sn = sequence_norm(psi, a);
    if (sn.flag == NormFlag::Zero) continue;
    const auto body = luxem1_body(M, a, f);
    const auto tail = l2_tail(a, f);
    idx.push_back(static_cast<double>(k + 1));
    lhs.push_back(sn.value);
    rhs.push_back(body.value + tail.value);
  }
  return make_equivalence_report(std::move(idx), std::move(lhs), std::move(rhs), band_limit,
                                 /*slope_tol=*/1.0);
}

/// Lemma-style distribution match: n_f(τ) against ψ(1/τ) over three decades
/// above τ₀.
inline EquivalenceReport distribution_match(const SampledRealFunction& f, const OrliczSpec& psi,
                                            double tau0 = 10.0, double band_limit = 10.0,
                                            double slope_tol = 0.05) {
  if (!(tau0 > 0.0)) throw std::invalid_argument("distribution_match: need tau0 > 0");
  const auto d = distribution(f);
  std::vector<double> taus, lhs, rhs;
  for (double tau : detail::log_grid(tau0, tau0 * 1e3, 8)) {
    const double n = d.at(tau);
    if (!(n > 0.0)) break;  // f truncated below the representable grid
    taus.push_back(tau);
    lhs.push_back(n);
    rhs.push_back(std::exp(psi.log_eval(-std::log(tau))));
  }
  if (taus.size() < 8)
    throw std::out_of_range("distribution_match: tau0 beyond the representable range of f");
  return make_equivalence_report(std::move(taus), std::move(lhs), std::move(rhs), band_limit,
                                 slope_tol);
}

}  // namespace orlicz
