#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/detail/numeric.hpp"
#include "orlicz/orlicz_spec.hpp"

namespace orlicz {

enum class Domain { UnitInterval, HalfLine };

using CoeffSeq = std::vector<double>;

/// Nonnegative function on (0,1] (or a half-line), carried as a log-domain
/// evaluator ln f(e^{log_t}) so that arguments like t = e^{-1e8} stay exactly
/// representable. Tabulated data is interpolated in log-log coordinates.
class SampledRealFunction {
 public:
  static SampledRealFunction from_log_form(Domain d, std::function<double(double)> log_form,
                                           bool nonincreasing) {
    SampledRealFunction f;
    f.domain_ = d;
    f.log_form_ = std::move(log_form);
    f.nonincreasing_ = nonincreasing;
    return f;
  }

  /// Tabulated on positive abscissae (any order); log-log interpolation,
  /// power extrapolation past the ends when exponents are given (NaN = the
  /// function is 0 outside the grid).
  static SampledRealFunction from_samples(Domain d, std::vector<double> t, std::vector<double> v,
                                          bool nonincreasing, double ext_low = std::nan(""),
                                          double ext_high = std::nan("")) {
    if (t.size() != v.size() || t.size() < 2)
      throw std::invalid_argument("from_samples: need matched grids of size >= 2");
    std::vector<std::size_t> ord(t.size());
    for (std::size_t i = 0; i < ord.size(); ++i) ord[i] = i;
    std::sort(ord.begin(), ord.end(), [&](auto i, auto j) { return t[i] < t[j]; });
    auto lt = std::make_shared<std::vector<double>>();
    auto lv = std::make_shared<std::vector<double>>();
    for (auto i : ord) {
      if (!(t[i] > 0.0) || !(v[i] >= 0.0))
        throw std::invalid_argument("from_samples: need t > 0, v >= 0");
      lt->push_back(std::log(t[i]));
      lv->push_back(v[i] > 0.0 ? std::log(v[i]) : detail::kNegInf);
    }
    auto form = [lt, lv, ext_low, ext_high](double log_t) -> double {
      const auto& x = *lt;
      const auto& y = *lv;
      if (log_t <= x.front()) {
        if (std::isnan(ext_low)) return log_t < x.front() ? detail::kNegInf : y.front();
        return y.front() + ext_low * (log_t - x.front());
      }
      if (log_t >= x.back()) {
        if (std::isnan(ext_high)) return log_t > x.back() ? detail::kNegInf : y.back();
        return y.back() + ext_high * (log_t - x.back());
      }
      const auto it = std::upper_bound(x.begin(), x.end(), log_t);
      const std::size_t i = static_cast<std::size_t>(it - x.begin());
      if (y[i - 1] == detail::kNegInf || y[i] == detail::kNegInf)
        return std::min(y[i - 1], y[i]);
      const double w = (log_t - x[i - 1]) / (x[i] - x[i - 1]);
      return y[i - 1] + w * (y[i] - y[i - 1]);
    };
    return from_log_form(d, form, nonincreasing);
  }

  static SampledRealFunction constant(double c, Domain d = Domain::UnitInterval) {
    if (!(c >= 0.0)) throw std::invalid_argument("constant: need c >= 0");
    const double lc = c > 0.0 ? std::log(c) : detail::kNegInf;
    return from_log_form(d, [lc](double) { return lc; }, true);
  }

  /// height on (0,width], 0 on (width, 1].
  static SampledRealFunction indicator(double height, double width) {
    if (!(height >= 0.0) || !(width > 0.0) || !(width <= 1.0))
      throw std::invalid_argument("indicator: need height >= 0, 0 < width <= 1");
    const double lh = height > 0.0 ? std::log(height) : detail::kNegInf;
    const double lw = std::log(width);
    return from_log_form(
        Domain::UnitInterval,
        [lh, lw](double log_t) { return log_t <= lw ? lh : detail::kNegInf; }, true);
  }

  /// t^{-e} ln^{a}(e/t) on (0,1]; nonincreasing for e > 0 and a >= 0.
  static SampledRealFunction power_decay(double e, double a = 0.0) {
    return from_log_form(
        Domain::UnitInterval,
        [e, a](double log_t) { return -e * log_t + a * std::log(1.0 - log_t); },
        e > 0.0 && a >= 0.0);
  }

  /// 1/psi^{-1}(t) on (0,1]; nonincreasing since psi is increasing.
  static SampledRealFunction inverse_of(const OrliczSpec& psi) {
    auto p = std::make_shared<OrliczSpec>(psi);
    return from_log_form(
        Domain::UnitInterval,
        [p](double log_t) {
          if (log_t > 0.0) throw std::out_of_range("inverse_of: argument above 1");
          return -std::log(inverse(*p, std::exp(log_t)));
        },
        true);
  }

  double log_value(double log_t) const { return log_form_(log_t); }

  double value(double t) const {
    if (!(t > 0.0)) throw std::invalid_argument("SampledRealFunction: need t > 0");
    const double lv = log_form_(std::log(t));
    return lv == detail::kNegInf ? 0.0 : std::exp(lv);
  }

  double operator()(double t) const { return value(t); }

  Domain domain() const { return domain_; }
  bool nonincreasing() const { return nonincreasing_; }

 private:
  Domain domain_ = Domain::UnitInterval;
  std::function<double(double)> log_form_;
  bool nonincreasing_ = false;
};

/// Freeze an (expensive) evaluator onto a log grid with power extrapolation
/// fitted from the end slopes. Used before feeding composite objects
/// (rearranged disjoint sums etc.) into quadratures.
inline SampledRealFunction tabulate(const SampledRealFunction& f, double t_min = 1e-12,
                                    double t_max = 1.0, int per_decade = 24) {
  const auto grid = detail::log_grid(t_min, t_max, per_decade);
  std::vector<double> t, v;
  t.reserve(grid.size());
  v.reserve(grid.size());
  for (double x : grid) {
    const double lv = f.log_value(std::log(x));
    t.push_back(x);
    v.push_back(lv == detail::kNegInf ? 0.0 : std::exp(lv));
  }
  auto end_slope = [&](std::size_t i, std::size_t j) -> double {
    if (!(v[i] > 0.0) || !(v[j] > 0.0)) return std::nan("");
    return (std::log(v[j]) - std::log(v[i])) / (std::log(t[j]) - std::log(t[i]));
  };
  const double ext_low = end_slope(0, 1);
  const double ext_high = end_slope(t.size() - 2, t.size() - 1);
  return SampledRealFunction::from_samples(f.domain(), std::move(t), std::move(v),
                                           f.nonincreasing(), ext_low, ext_high);
}

/// Distribution function n(τ) = m{ |f| > τ }, carried as an evaluator on
/// ln τ (the measure itself is an ordinary double). Nonincreasing and
/// right-continuous in τ by construction.
struct DistributionFn {
  std::function<double(double)> n_at_log_tau;
  double total = 1.0;        // lim_{τ→0+} n(τ)
  double log_tau_lo = 0.0;   // hints bracketing the interesting τ range
  double log_tau_hi = 0.0;

  double at(double tau) const {
    if (!(tau > 0.0)) return total;
    return n_at_log_tau(std::log(tau));
  }

  /// ln of the generalized inverse inf{ τ >= 0 : n(τ) <= t } (the
  /// rearrangement value at t); -inf when the infimum is 0.
  double quantile_log(double log_t) const {
    const double t = std::exp(log_t);
    double hi = log_tau_hi;
    int guard = 0;
    while (n_at_log_tau(hi) > t) {
      hi += 8.0;
      if (++guard > 100) throw std::runtime_error("quantile: no finite threshold reached");
    }
    double lo = std::min(log_tau_lo, hi - 8.0);
    guard = 0;
    while (n_at_log_tau(lo) <= t) {
      if (lo <= -660.0) return detail::kNegInf;  // n(τ) <= t already for τ ~ 0
      lo -= 8.0;
      ++guard;
    }
    return detail::bisect_pred([&](double l) { return n_at_log_tau(l) <= t; }, lo, hi, 140);
  }
};

/// Freeze a distribution function onto a log-τ grid (linear interpolation of
/// ln n against ln τ; 0 past the top). Same purpose as tabulate() above.
inline DistributionFn tabulate(const DistributionFn& d, int per_decade = 48) {
  DistributionFn out = d;
  // locate the τ where n first hits 0 (or give up at the hint + slack)
  double hi = d.log_tau_hi;
  int guard = 0;
  while (d.n_at_log_tau(hi) > 0.0 && ++guard <= 12) hi += 4.0;
  double lo = std::min(d.log_tau_lo, hi - 4.0);
  const double step = std::log(10.0) / per_decade;
  auto lt = std::make_shared<std::vector<double>>();
  auto ln = std::make_shared<std::vector<double>>();
  for (double l = lo; l <= hi + step; l += step) {
    const double n = d.n_at_log_tau(l);
    lt->push_back(l);
    ln->push_back(n > 0.0 ? std::log(n) : detail::kNegInf);
  }
  const double total = d.total;
  out.n_at_log_tau = [lt, ln, total](double log_tau) -> double {
    const auto& x = *lt;
    const auto& y = *ln;
    if (log_tau <= x.front()) return total;
    if (log_tau >= x.back()) {
      return y.back() == detail::kNegInf ? 0.0 : std::exp(y.back());
    }
    const auto it = std::upper_bound(x.begin(), x.end(), log_tau);
    const std::size_t i = static_cast<std::size_t>(it - x.begin());
    if (y[i] == detail::kNegInf) return 0.0;  // right-continuous drop to 0
    if (y[i - 1] == detail::kNegInf) return 0.0;
    const double w = (log_tau - x[i - 1]) / (x[i] - x[i - 1]);
    return std::exp(y[i - 1] + w * (y[i] - y[i - 1]));
  };
  out.log_tau_lo = lo;
  out.log_tau_hi = hi;
  return out;
}

/// Distribution of f. For nonincreasing f the level set {f > τ} is an
/// interval (0, t*) and n(τ) = t* comes from monotone bisection; for general
/// f the measure is accumulated over log-grid cells sampled at midpoints.
inline DistributionFn distribution(const SampledRealFunction& f, double t_min = 1e-12,
                                   int per_decade = 128) {
  DistributionFn out;
  if (f.domain() != Domain::UnitInterval)
    throw std::invalid_argument("distribution: half-line inputs are handled via disjoint_sum");
  const double log_tmin = std::log(t_min);
  if (f.nonincreasing()) {
    auto lf = [f](double lt) { return f.log_value(lt); };
    out.total = 1.0;
    out.n_at_log_tau = [lf, log_tmin](double log_tau) -> double {
      // n(τ) = sup{ t in (0,1] : f(t) > τ } (0 if none)
      if (lf(0.0) > log_tau) return 1.0;
      if (lf(log_tmin) <= log_tau) {
        // f stays below τ even at the representable bottom: treat as 0
        return 0.0;
      }
      const double lt =
          detail::bisect_pred([&](double l) { return lf(l) <= log_tau; }, log_tmin, 0.0, 140);
      return std::exp(lt);
    };
    // bracket hints from the endpoint values
    const double l1 = lf(0.0), l0 = lf(log_tmin);
    out.log_tau_lo = (l1 == detail::kNegInf ? -60.0 : l1) - 1.0;
    out.log_tau_hi = std::min(l0, 700.0) + 1.0;
    return out;
  }
  // general case: cell counting
  const auto grid = detail::log_grid(t_min, 1.0, per_decade);
  auto cells = std::make_shared<std::vector<std::pair<double, double>>>();  // (log|f|, measure)
  double vmax = detail::kNegInf, vmin = detail::kInf;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double mid = 0.5 * (std::log(grid[i]) + std::log(grid[i + 1]));
    const double lv = f.log_value(mid);
    cells->emplace_back(lv, grid[i + 1] - grid[i]);
    if (lv != detail::kNegInf) {
      vmax = std::max(vmax, lv);
      vmin = std::min(vmin, lv);
    }
  }
  std::sort(cells->begin(), cells->end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  double total = 0.0;
  for (const auto& c : *cells)
    if (c.first != detail::kNegInf) total += c.second;
  out.total = total;
  out.n_at_log_tau = [cells](double log_tau) -> double {
    double m = 0.0;
    for (const auto& c : *cells) {
      if (c.first > log_tau)
        m += c.second;
      else
        break;
    }
    return m;
  };
  out.log_tau_lo = (vmin == detail::kInf ? -60.0 : vmin) - 1.0;
  out.log_tau_hi = (vmax == detail::kNegInf ? 1.0 : vmax) + 1.0;
  return out;
}

/// Nonincreasing rearrangement via the generalized inverse of distribution().
inline SampledRealFunction rearrangement(const SampledRealFunction& f) {
  if (f.nonincreasing()) return f;
  auto d = std::make_shared<DistributionFn>(distribution(f));
  return SampledRealFunction::from_log_form(
      f.domain(), [d](double log_t) { return d->quantile_log(log_t); }, true);
}

/// Rearrangement of a half-line object given by its distribution.
inline SampledRealFunction rearrangement(const DistributionFn& d, Domain domain = Domain::HalfLine) {
  auto dp = std::make_shared<DistributionFn>(d);
  return SampledRealFunction::from_log_form(
      domain, [dp](double log_t) { return dp->quantile_log(log_t); }, true);
}

/// σ_τ f(t) = f(t/τ) restricted to (0, min(1,τ)) on the unit interval, or the
/// unrestricted rescaling on the half-line.
inline SampledRealFunction dilate(const SampledRealFunction& f, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("dilate: need tau > 0");
  const double lt = std::log(tau);
  const Domain d = f.domain();
  const double cutoff = std::min(0.0, lt);
  auto base = f;
  return SampledRealFunction::from_log_form(
      d,
      [base, lt, cutoff, d](double log_t) {
        if (d == Domain::UnitInterval && log_t >= cutoff) return detail::kNegInf;
        return base.log_value(log_t - lt);
      },
      f.nonincreasing());
}

/// Dilation function M_h(t) = sup_{0 < s <= min(1, 1/t)} h(st)/h(s),
/// computed as a grid sup over s down to s_min (the truncation level).
inline SampledRealFunction dilation_function(const SampledRealFunction& h, double s_min = 1e-12,
                                             int per_decade = 16) {
  auto grid = std::make_shared<std::vector<double>>();
  for (double s : detail::log_grid(s_min, 1.0, per_decade)) grid->push_back(std::log(s));
  auto base = h;
  return SampledRealFunction::from_log_form(
      h.domain(),
      [base, grid](double log_t) -> double {
        const double s_cap = std::min(0.0, -log_t);  // ln min(1, 1/t)
        double sup = detail::kNegInf;
        for (double ls : *grid) {
          if (ls > s_cap) break;
          const double num = base.log_value(ls + log_t);
          const double den = base.log_value(ls);
          if (den == detail::kNegInf) continue;
          sup = std::max(sup, num - den);
        }
        if (sup == detail::kNegInf)
          throw std::invalid_argument("dilation_function: no admissible s on the grid");
        return sup;
      },
      h.nonincreasing());
}

/// Distribution of the disjoint sum a⊗̄f (blocks a_k·f on consecutive unit
/// intervals): n(τ) = Σ_k n_f(τ/|a_k|), exactly.
inline DistributionFn disjoint_sum(const CoeffSeq& a, const SampledRealFunction& f,
                                   bool freeze_base = true) {
  // freezing the base distribution makes the per-τ cost a table lookup
  // instead of a bisection against f; pass freeze_base = false where jump
  // locations must be exact (layer-cake integrals near steps)
  auto base = std::make_shared<DistributionFn>(freeze_base ? tabulate(distribution(f))
                                                           : distribution(f));
  auto scales = std::make_shared<std::vector<double>>();  // ln|a_k| for a_k != 0
  for (double c : a)
    if (c != 0.0) scales->push_back(std::log(std::abs(c)));
  DistributionFn out;
  out.total = base->total * static_cast<double>(scales->size());
  out.n_at_log_tau = [base, scales](double log_tau) {
    double m = 0.0;
    for (double ls : *scales) m += base->n_at_log_tau(log_tau - ls);
    return m;
  };
  const double smax = scales->empty() ? 0.0 : *std::max_element(scales->begin(), scales->end());
  const double smin = scales->empty() ? 0.0 : *std::min_element(scales->begin(), scales->end());
  out.log_tau_lo = base->log_tau_lo + smin;
  out.log_tau_hi = base->log_tau_hi + smax;
  return out;
}

}  // namespace orlicz
