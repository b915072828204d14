#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "orlicz/detail/numeric.hpp"
#include "orlicz/orlicz_spec.hpp"
#include "orlicz/sampled_function.hpp"

namespace orlicz {

enum class NormFlag { Ok, Zero, NotInSpace };

struct NormResult {
  double value = 0.0;
  double residual = 0.0;  // |Phi(value) - 1| at the returned scale
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  NormFlag flag = NormFlag::Ok;
};

/// ∫_0^1 x(t)^p dt in log form (p = 1 gives the plain integral).
inline detail::Integral integral_power(const SampledRealFunction& x, double p = 1.0) {
  return detail::integrate01_log([&x, p](double log_t) {
    const double lv = x.log_value(log_t);
    return lv == detail::kNegInf ? detail::kNegInf : p * lv;
  });
}

inline NormResult l1_norm(const SampledRealFunction& x) {
  NormResult r;
  const auto I = integral_power(x, 1.0);
  if (I.diverged) {
    r.flag = NormFlag::NotInSpace;
    return r;
  }
  r.value = I.value;
  if (r.value == 0.0) r.flag = NormFlag::Zero;
  return r;
}

inline NormResult lp_norm(const SampledRealFunction& x, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: need p >= 1");
  NormResult r;
  const auto I = integral_power(x, p);
  if (I.diverged) {
    r.flag = NormFlag::NotInSpace;
    return r;
  }
  r.value = std::pow(I.value, 1.0 / p);
  if (r.value == 0.0) r.flag = NormFlag::Zero;
  return r;
}

/// ∫_{t0}^{t1} x(t)^p dt over a subrange of (0,1], Simpson in ln t.
inline double integral_power_range(const SampledRealFunction& x, double t0, double t1,
                                   double p = 1.0) {
  if (!(t0 > 0.0) || !(t1 > t0)) throw std::invalid_argument("integral_power_range: bad range");
  const double a = std::log(t0), b = std::log(t1);
  const int n = std::max(64, static_cast<int>((b - a) * 24.0));
  return detail::simpson(
      [&](double lt) {
        const double lv = x.log_value(lt);
        if (lv == detail::kNegInf) return 0.0;
        return std::exp(p * lv + lt);  // x(t)^p * t, for the log substitution
      },
      a, b, n);
}

/// Luxemburg norm inf{ λ > 0 : ∫_0^1 M(x(t)/λ) dt <= 1 }.
///
/// Φ(λ) is nonincreasing in λ; the L¹ norm brackets it from below (Jensen,
/// using M(1) = 1), and the upper end is found by geometric doubling. If Φ
/// stays above 1 (or diverges) up to 1e6× the lower bound the input is
/// declared not in the space.
inline NormResult luxemburg_norm(const OrliczSpec& M, const SampledRealFunction& x) {
  NormResult r;
  const auto l1 = l1_norm(x);
  if (l1.flag == NormFlag::Zero) {
    r.flag = NormFlag::Zero;
    return r;
  }
  double lam_lo;
  if (l1.flag == NormFlag::NotInSpace) {
    // not even integrable; a Luxemburg norm may still exist only if M grows
    // sublinearly, which normalized convex M cannot. Probe anyway from 1.
    lam_lo = 1.0;
  } else {
    lam_lo = l1.value;
  }
  auto phi = [&](double log_lam) -> detail::Integral {
    return detail::integrate01_log([&](double log_t) {
      const double lv = x.log_value(log_t);
      if (lv == detail::kNegInf) return detail::kNegInf;
      return M.log_eval(lv - log_lam);
    });
  };
  const double llo0 = std::log(lam_lo);
  double lhi = llo0;
  bool bracketed = false;
  for (int k = 0; k <= 20; ++k) {  // up to lam_lo * 2^20 ≈ 1e6×
    const auto I = phi(lhi);
    if (!I.diverged && I.value <= 1.0) {
      bracketed = true;
      break;
    }
    lhi += std::log(2.0);
  }
  if (!bracketed) {
    r.flag = NormFlag::NotInSpace;
    r.bracket_lo = std::exp(llo0);
    r.bracket_hi = std::exp(lhi);
    return r;
  }
  double llo = std::max(llo0, lhi - std::log(2.0)) - 1e-14;
  if (lhi == llo0) llo = llo0 - std::log(2.0);  // Φ(l1) <= 1 already; widen down
  {
    int guard = 0;
    while (true) {
      const auto I = phi(llo);
      if (I.diverged || I.value > 1.0) break;
      llo -= std::log(2.0);
      if (++guard > 60) break;  // Φ <= 1 arbitrarily far down: norm ~ 0
    }
  }
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (llo + lhi);
    const auto I = phi(mid);
    if (!I.diverged && I.value <= 1.0)
      lhi = mid;
    else
      llo = mid;
  }
  r.value = std::exp(lhi);
  r.bracket_lo = std::exp(llo);
  r.bracket_hi = std::exp(lhi);
  r.residual = std::abs(phi(lhi).value - 1.0);
  // residual can legitimately sit below 1 when Φ jumps (atoms at the top);
  // it measures bisection quality only when Φ is continuous at the root.
  return r;
}

/// Sequence-space Luxemburg norm inf{ λ : Σ ψ(|a_k|/λ) <= 1 }.
inline NormResult sequence_norm(const OrliczSpec& psi, const CoeffSeq& a) {
  NormResult r;
  double amax = 0.0;
  std::size_t nz = 0;
  for (double c : a) {
    amax = std::max(amax, std::abs(c));
    if (c != 0.0) ++nz;
  }
  if (nz == 0) {
    r.flag = NormFlag::Zero;
    return r;
  }
  auto S = [&](double log_lam) {
    double s = 0.0;
    for (double c : a) {
      if (c == 0.0) continue;
      s += std::exp(psi.log_eval(std::log(std::abs(c)) - log_lam));
    }
    return s;
  };
  // λ = amax gives the largest term ψ(1) = 1, so S >= 1; λ = nz·amax gives
  // terms ψ(u/nz) <= ψ(u)/nz <= 1/nz by convexity, so S <= 1.
  double llo = std::log(amax), lhi = std::log(amax * static_cast<double>(nz));
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (llo + lhi);
    if (S(mid) <= 1.0)
      lhi = mid;
    else
      llo = mid;
  }
  r.value = std::exp(lhi);
  r.bracket_lo = std::exp(llo);
  r.bracket_hi = std::exp(lhi);
  r.residual = std::abs(S(lhi) - 1.0);
  return r;
}

/// L² norm of the part of the rearrangement living on [1,∞), by layer-cake:
/// ‖q·χ_{[1,∞)}‖₂² = ∫_0^∞ 2τ·max(n(τ)-1, 0) dτ.
inline NormResult l2_tail(const DistributionFn& d) {
  NormResult r;
  if (d.total <= 1.0) {
    r.flag = NormFlag::Zero;
    return r;
  }
  // τ₁ = sup{τ : n(τ) > 1}; above it the integrand vanishes
  double hi = d.log_tau_hi;
  int guard = 0;
  while (d.n_at_log_tau(hi) > 1.0) {
    hi += 8.0;
    if (++guard > 100) {
      r.flag = NormFlag::NotInSpace;
      return r;
    }
  }
  double lo = d.log_tau_lo;
  while (d.n_at_log_tau(lo) <= 1.0 && lo > hi - 80.0) lo -= 8.0;
  const double log_tau1 =
      detail::bisect_pred([&](double l) { return d.n_at_log_tau(l) <= 1.0; }, lo, hi, 100);
  const double a = log_tau1 - 45.0;  // e^{2·(-45)} ≈ 1e-40 damping: negligible below
  const int n = std::max(256, static_cast<int>((log_tau1 - a) * 16.0));
  const double t2 = detail::simpson(
      [&](double l) {
        // evaluate a hair to the left so a jump exactly at the top endpoint
        // contributes its left limit, not the right-continuous value
        const double excess = d.n_at_log_tau(l - 1e-9) - 1.0;
        if (excess <= 0.0) return 0.0;
        return 2.0 * std::exp(2.0 * l) * excess;
      },
      a, log_tau1, n);
  r.value = std::sqrt(std::max(0.0, t2));
  return r;
}

inline NormResult l2_tail(const CoeffSeq& a, const SampledRealFunction& f) {
  return l2_tail(disjoint_sum(a, f, /*freeze_base=*/false));
}

/// φ_{L_M}(u) = 1/M^{-1}(1/u).
inline double fundamental_Lm(const OrliczSpec& M, double u) {
  if (!(u > 0.0) || !(u <= 1.0)) throw std::invalid_argument("fundamental_Lm: need u in (0,1]");
  return 1.0 / inverse(M, 1.0 / u);
}

/// φ_{ℓψ}(n) = 1/ψ^{-1}(1/n).
inline double fundamental_seq(const OrliczSpec& psi, double n) {
  if (!(n >= 1.0)) throw std::invalid_argument("fundamental_seq: need n >= 1");
  return 1.0 / inverse(psi, 1.0 / n);
}

}  // namespace orlicz
