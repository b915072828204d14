#pragma once

#include <cmath>
#include <vector>

#include "orlicz/detail/numeric.hpp"
#include "orlicz/orlicz_spec.hpp"

namespace orlicz {

enum class BoundSide { Lower, Upper };

struct IndexEstimate {
  double point = 0.0;          // least-squares slope over the last dyadic decades
  double rigorous_bound = 0.0; // one-sided bound from a single dilation value
  BoundSide side = BoundSide::Lower;
  int decades_used = 0;
  double fit_residual = 0.0;   // standard error of the fitted slope
  bool degenerate = false;
};

struct IndexPair {
  IndexEstimate alpha;
  IndexEstimate beta;
};

namespace detail_idx {

// Slope diagnostics for ln D(s_j) against ln s_j, fitted over the last
// `window` entries. For sub/supermultiplicative D every single quotient
// ln D / ln s is a one-sided bound on the limit slope (Fekete), which is
// what rigorous_bound records.
inline IndexEstimate from_dilation(const std::vector<double>& log_s,
                                   const std::vector<double>& log_D, BoundSide side,
                                   int window = 30) {
  IndexEstimate e;
  e.side = side;
  e.decades_used = static_cast<int>(log_s.size());
  if (log_s.size() < 3) {
    e.degenerate = true;
    return e;
  }
  double bound = side == BoundSide::Lower ? detail::kNegInf : detail::kInf;
  for (std::size_t j = 0; j < log_s.size(); ++j) {
    const double q = log_D[j] / log_s[j];
    bound = side == BoundSide::Lower ? std::max(bound, q) : std::min(bound, q);
  }
  e.rigorous_bound = bound;
  const std::size_t n = log_s.size();
  const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(window), n);
  const auto fit =
      detail::fit_line_logcorr(std::span(log_s).subspan(n - w), std::span(log_D).subspan(n - w));
  e.point = fit.slope;
  e.fit_residual = fit.slope_stderr;
  return e;
}

}  // namespace detail_idx

/// Indices at zero: dilation quantities D±(s) = sup/inf over 0 < t <= 1 of
/// ψ(st)/ψ(t) on s = 2^{-j}. The sup branch bounds α from below, the inf
/// branch bounds β from above (both via Fekete's lemma, since ln s < 0
/// flips sub- into super-additivity of the quotients).
inline IndexPair index_at_zero(const OrliczSpec& psi, int max_j = 40, double t_min = 1e-12,
                               int per_decade = 16) {
  const double ln2 = std::log(2.0);
  std::vector<double> lt_grid;
  for (double t : detail::log_grid(t_min, 1.0, per_decade)) lt_grid.push_back(std::log(t));
  std::vector<double> ls, lDp, lDm;
  bool degenerate = false;
  for (int j = 1; j <= max_j; ++j) {
    const double log_s = -j * ln2;
    double sup = detail::kNegInf, inf = detail::kInf;
    for (double lt : lt_grid) {
      const double num = psi.log_eval(log_s + lt);
      const double den = psi.log_eval(lt);
      if (den == detail::kNegInf || num == detail::kNegInf) {
        degenerate = true;
        continue;
      }
      const double q = num - den;
      sup = std::max(sup, q);
      inf = std::min(inf, q);
    }
    ls.push_back(log_s);
    lDp.push_back(sup);
    lDm.push_back(inf);
  }
  IndexPair out;
  out.alpha = detail_idx::from_dilation(ls, lDp, BoundSide::Lower);
  out.beta = detail_idx::from_dilation(ls, lDm, BoundSide::Upper);
  out.alpha.degenerate = out.alpha.degenerate || degenerate;
  out.beta.degenerate = out.beta.degenerate || degenerate;
  return out;
}

/// Indices at infinity: mirror of index_at_zero with s = 2^j. The inner
/// variable runs over the fixed grid [1, T_max]; the product t·s may exceed
/// T_max — log-domain evaluation (with power extrapolation for tabulated
/// specs) makes that harmless and avoids the truncation bias a shrinking
/// inner range would cause. The inf quantity bounds α from below
/// (ln D⁻(s)/ln s <= α, Lower) and the sup quantity bounds β from above.
inline IndexPair index_at_infinity(const OrliczSpec& M, int max_j = 40, double t_max = 1e12,
                                   int per_decade = 16) {
  const double ln2 = std::log(2.0);
  std::vector<double> lt_grid;
  for (double t : detail::log_grid(1.0, t_max, per_decade)) lt_grid.push_back(std::log(t));
  std::vector<double> ls, lDp, lDm;
  for (int j = 1; j <= max_j; ++j) {
    const double log_s = j * ln2;
    double sup = detail::kNegInf, inf = detail::kInf;
    for (double lt : lt_grid) {
      const double q = M.log_eval(log_s + lt) - M.log_eval(lt);
      sup = std::max(sup, q);
      inf = std::min(inf, q);
    }
    ls.push_back(log_s);
    lDp.push_back(sup);
    lDm.push_back(inf);
  }
  IndexPair out;
  out.alpha = detail_idx::from_dilation(ls, lDm, BoundSide::Lower);
  out.beta = detail_idx::from_dilation(ls, lDp, BoundSide::Upper);
  return out;
}

}  // namespace orlicz
