#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "orlicz/detail/numeric.hpp"

namespace orlicz {

enum class Regime { AtZero, AtInfinity, Global };

/// A monotone function model on [0,inf) normalized so that value(1) = 1.
///
/// Closed-form kinds cover powers, power-times-log shapes and splices of two
/// specs at a knot; Tabulated is the escape hatch for functions only known on
/// a grid (log-log interpolation, power extrapolation past the ends).
/// Evaluation works in log coordinates throughout, so arguments far outside
/// the double range of t itself (t = e^{-1e8} say) remain representable.
class OrliczSpec {
 public:
  struct Power {
    double p;
  };
  // u^p ln^{a_zero}(e/u) on (0,1], u^p (ln(e+u)/ln(e+1))^{a_inf} on [1,inf).
  // The infinity-branch log factor is normalized at u=1 so the two branches
  // join continuously with value 1 there.
  struct PowerLog {
    double p;
    double a_zero;
    double a_inf;
  };
  struct Spliced {
    std::shared_ptr<const OrliczSpec> low;
    std::shared_ptr<const OrliczSpec> high;
    double log_knot;
    double log_hi_shift;  // continuity shift applied to the high branch
  };
  struct Tabulated {
    std::vector<double> log_u;  // strictly increasing
    std::vector<double> log_v;  // nondecreasing
    double ext_low;             // power exponents for extrapolation; NaN = none
    double ext_high;
  };

  static OrliczSpec power(double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("power: exponent must be >= 1");
    return OrliczSpec(Power{p});
  }

  static OrliczSpec power_log(double p, double a_zero, double a_inf) {
    if (!(p >= 1.0)) throw std::invalid_argument("power_log: exponent must be >= 1");
    return OrliczSpec(PowerLog{p, a_zero, a_inf});
  }

  static OrliczSpec spliced(OrliczSpec low, OrliczSpec high, double knot) {
    if (!(knot > 0.0)) throw std::invalid_argument("spliced: knot must be positive");
    const double lk = std::log(knot);
    Spliced s;
    s.low = std::make_shared<OrliczSpec>(std::move(low));
    s.high = std::make_shared<OrliczSpec>(std::move(high));
    s.log_knot = lk;
    s.log_hi_shift = s.low->log_eval(lk) - s.high->log_eval(lk);
    return OrliczSpec(std::move(s));
  }

  static OrliczSpec tabulated(std::vector<double> u, std::vector<double> v,
                              double ext_low = std::nan(""), double ext_high = std::nan("")) {
    if (u.size() != v.size() || u.size() < 2)
      throw std::invalid_argument("tabulated: need matched grids of size >= 2");
    Tabulated t;
    t.log_u.reserve(u.size());
    t.log_v.reserve(v.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (!(u[i] > 0.0) || !(v[i] > 0.0))
        throw std::invalid_argument("tabulated: abscissae and values must be positive");
      t.log_u.push_back(std::log(u[i]));
      t.log_v.push_back(std::log(v[i]));
    }
    for (std::size_t i = 1; i < t.log_u.size(); ++i) {
      if (!(t.log_u[i] > t.log_u[i - 1]))
        throw std::invalid_argument("tabulated: abscissae must be strictly increasing");
      if (t.log_v[i] < t.log_v[i - 1] - 1e-12)
        throw std::invalid_argument("tabulated: values must be nondecreasing");
    }
    t.ext_low = ext_low;
    t.ext_high = ext_high;
    return OrliczSpec(std::move(t));
  }

  /// ln value(e^{log_u}); the normalization scale is already applied.
  double log_eval(double log_u) const { return raw_log_eval(log_u) + log_scale_; }

  double value(double u) const {
    if (u < 0.0) throw std::invalid_argument("OrliczSpec: negative argument");
    if (u == 0.0) return 0.0;
    const double lv = log_eval(std::log(u));
    return lv == detail::kNegInf ? 0.0 : std::exp(lv);
  }

  double operator()(double u) const { return value(u); }

  const auto& kind() const { return kind_; }
  bool is_power() const { return std::holds_alternative<Power>(kind_); }
  std::optional<double> power_exponent() const {
    if (auto* p = std::get_if<Power>(&kind_)) return p->p;
    return std::nullopt;
  }

 private:
  template <class K>
  explicit OrliczSpec(K k) : kind_(std::move(k)) {
    log_scale_ = -raw_log_eval(0.0);
    if (!std::isfinite(log_scale_)) throw std::invalid_argument("OrliczSpec: value(1) not positive");
  }

  static double log_logfactor_zero(double log_u) {
    // ln ln(e/u) for u <= 1, computed from log_u = ln u <= 0
    return std::log(1.0 - log_u);
  }

  static double log_logfactor_inf(double log_u) {
    // ln( ln(e+u)/ln(e+1) ) for u >= 1
    static const double kLn_e1 = std::log(std::exp(1.0) + 1.0);
    double ln_epu;
    if (log_u > 40.0) {
      ln_epu = log_u;  // ln(e+u) ~ ln u
    } else {
      ln_epu = std::log(std::exp(1.0) + std::exp(log_u));
    }
    return std::log(ln_epu) - std::log(kLn_e1);
  }

  double raw_log_eval(double log_u) const {
    return std::visit(
        [&](const auto& k) -> double {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, Power>) {
            return k.p * log_u;
          } else if constexpr (std::is_same_v<T, PowerLog>) {
            if (log_u <= 0.0) return k.p * log_u + k.a_zero * log_logfactor_zero(log_u);
            return k.p * log_u + k.a_inf * log_logfactor_inf(log_u);
          } else if constexpr (std::is_same_v<T, Spliced>) {
            if (log_u <= k.log_knot) return k.low->log_eval(log_u);
            return k.high->log_eval(log_u) + k.log_hi_shift;
          } else {
            const auto& lu = k.log_u;
            const auto& lv = k.log_v;
            if (log_u < lu.front()) {
              if (std::isnan(k.ext_low))
                throw std::out_of_range("tabulated: argument below grid, no extrapolation");
              return lv.front() + k.ext_low * (log_u - lu.front());
            }
            if (log_u > lu.back()) {
              if (std::isnan(k.ext_high))
                throw std::out_of_range("tabulated: argument above grid, no extrapolation");
              return lv.back() + k.ext_high * (log_u - lu.back());
            }
            const auto it = std::lower_bound(lu.begin(), lu.end(), log_u);
            if (it == lu.begin()) return lv.front();
            const std::size_t i = static_cast<std::size_t>(it - lu.begin());
            const double w = (log_u - lu[i - 1]) / (lu[i] - lu[i - 1]);
            return lv[i - 1] + w * (lv[i] - lv[i - 1]);
          }
        },
        kind_);
  }

  std::variant<Power, PowerLog, Spliced, Tabulated> kind_;
  double log_scale_ = 0.0;
};

/// eval per the spec vocabulary; identical to spec.value(u).
inline double eval(const OrliczSpec& spec, double u) { return spec.value(u); }

/// Solve value(u) = v by monotone bisection in log coordinates, with
/// geometric bracket expansion. |value(result) - v| <= ~1e-12 relative.
inline double inverse(const OrliczSpec& spec, double v) {
  if (v < 0.0) throw std::invalid_argument("inverse: negative value");
  if (v == 0.0) return 0.0;
  const double lv = std::log(v);
  double lo = 0.0, hi = 0.0;
  int guard = 0;
  while (spec.log_eval(lo) > lv) {
    lo -= 4.0;
    if (++guard > 4000) throw std::runtime_error("inverse: bracket expansion failed (low)");
  }
  guard = 0;
  while (spec.log_eval(hi) < lv) {
    hi += 4.0;
    if (++guard > 4000) throw std::runtime_error("inverse: bracket expansion failed (high)");
  }
  for (int i = 0; i < 160; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (spec.log_eval(mid) >= lv)
      hi = mid;
    else
      lo = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

struct ConjugateResult {
  double value = 0.0;
  bool diverged = false;
};

/// Young conjugate sup_{t>0} (u t - value(t)), by coarse log scan plus
/// ternary refinement (the objective is concave in t).
inline ConjugateResult conjugate(const OrliczSpec& spec, double u) {
  ConjugateResult out;
  if (u < 0.0) throw std::invalid_argument("conjugate: negative argument");
  if (u == 0.0) return out;
  const auto grid = detail::log_grid(1e-12, 1e12, 8);
  auto obj = [&](double t) { return u * t - spec.value(t); };
  std::size_t best = 0;
  double best_v = obj(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double v = obj(grid[i]);
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  if (best + 1 == grid.size()) {
    // still rising at the top of the representable range
    out.diverged = true;
    out.value = best_v;
    return out;
  }
  double a = grid[best == 0 ? 0 : best - 1];
  double b = grid[best + 1];
  for (int i = 0; i < 200; ++i) {
    const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
    if (obj(m1) < obj(m2))
      a = m1;
    else
      b = m2;
  }
  out.value = std::max(0.0, obj(0.5 * (a + b)));
  return out;
}

struct Delta2Result {
  double value = 0.0;
  double argmax = 0.0;
  bool unbounded = false;
};

/// sup over the regime grid of value(2u)/value(u), with a growth-trend flag:
/// "unbounded" when the per-decade maxima keep rising across the last three
/// decades by more than 5% each.
inline Delta2Result delta2_constant(const OrliczSpec& spec, Regime regime) {
  std::vector<double> grid;
  switch (regime) {
    case Regime::AtZero:
      grid = detail::log_grid(1e-14, 0.5, 16);
      break;
    case Regime::AtInfinity:
      grid = detail::log_grid(1.0, 5e11, 16);
      break;
    case Regime::Global: {
      grid = detail::log_grid(1e-14, 5e11, 16);
      break;
    }
  }
  Delta2Result out;
  std::vector<double> decade_max;
  double cur_decade = std::floor(std::log10(grid.front()));
  double cur_max = 0.0;
  static const double kLn2 = std::log(2.0);
  for (double u : grid) {
    const double lu = std::log(u);
    const double r = std::exp(spec.log_eval(lu + kLn2) - spec.log_eval(lu));
    if (r > out.value) {
      out.value = r;
      out.argmax = u;
    }
    const double d = std::floor(std::log10(u));
    if (d != cur_decade) {
      decade_max.push_back(cur_max);
      cur_decade = d;
      cur_max = 0.0;
    }
    cur_max = std::max(cur_max, r);
  }
  decade_max.push_back(cur_max);
  const std::size_t n = decade_max.size();
  if (n >= 4) {
    bool growing = true;
    for (std::size_t i = n - 3; i < n; ++i)
      if (decade_max[i] <= decade_max[i - 1] * 1.05) growing = false;
    out.unbounded = growing;
  }
  return out;
}

struct PConvexityResult {
  bool holds = false;
  double C = 0.0;
  double growth = 0.0;  // trend exponent of the grid sup under range refinement
  double witness_s = 0.0;
  double witness_t = 0.0;
};

/// Grid certificate for psi(st) <= C s^p psi(t) on (0,1]^2 (p-convexity at
/// zero), or the dual s^p psi(t) <= C psi(st) when concave = true. The sup is
/// recomputed on deeper and deeper ranges; "holds" means it saturates.
inline PConvexityResult p_convexity_check(const OrliczSpec& spec, double p,
                                          bool concave = false) {
  if (!(p >= 1.0)) throw std::invalid_argument("p_convexity_check: need p >= 1");
  PConvexityResult out;
  std::vector<double> ks = {4, 6, 8, 10, 12};
  std::vector<double> sups;
  for (double k : ks) {
    const auto grid = detail::log_grid(std::pow(10.0, -k), 1.0, 6);
    double sup = 0.0;
    for (double s : grid) {
      const double ls = std::log(s);
      for (double t : grid) {
        const double lt = std::log(t);
        double lr = spec.log_eval(ls + lt) - p * ls - spec.log_eval(lt);
        if (concave) lr = -lr;
        const double r = std::exp(lr);
        if (r > sup) {
          sup = r;
          if (k == ks.back()) {
            out.witness_s = s;
            out.witness_t = t;
          }
        }
      }
    }
    sups.push_back(std::log(std::max(sup, 1e-300)));
  }
  std::vector<double> xs;
  for (double k : ks) xs.push_back(k * std::log(10.0));
  const auto fit = detail::fit_line(std::span(xs).subspan(2), std::span(sups).subspan(2));
  out.growth = fit.slope;
  out.C = std::exp(sups.back());
  out.holds = std::isfinite(out.C) && out.growth < 0.05;
  return out;
}

/// Regularization M(t) = int_0^t raw(u) du/u, which is convex whenever the
/// integrand raw(u)/u is nondecreasing. Raw shapes whose quotient dips in a
/// bounded mid-range (asymptotic forms like u^p ln^{-2}(e+u) do) are first
/// lifted to the running-max envelope of the quotient — the minimal change
/// restoring the invariant, at the price of a pointwise factor no larger
/// than the dip. Dips beyond 10x mean the shape is not equivalent to any
/// convex function in this scheme and are rejected, as is an unbounded
/// Δ₂ constant. Power shapes pass through unchanged; everything else
/// becomes Tabulated (normalized).
inline OrliczSpec regularize(const OrliczSpec& raw, double delta2_cap = 1e6) {
  if (auto p = raw.power_exponent()) return OrliczSpec::power(*p);

  const auto d2 = delta2_constant(raw, Regime::Global);
  if (d2.unbounded || d2.value > delta2_cap)
    throw std::runtime_error("regularize: Delta2 constant exceeds cap, not regularizable");

  const auto grid = detail::log_grid(1e-12, 1e12, 64);
  std::vector<double> ls(grid.size()), q(grid.size());
  double dip = 0.0, run = detail::kNegInf;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ls[i] = std::log(grid[i]);
    const double qi = raw.log_eval(ls[i]) - ls[i];
    run = std::max(run, qi);
    dip = std::max(dip, run - qi);
    q[i] = run;  // envelope of ln(raw(u)/u)
  }
  if (dip > std::log(10.0))
    throw std::invalid_argument("regularize: raw(u)/u dips by more than 10x, not regularizable");

  const double slope0 = (q[8] + ls[8] - q[0] - ls[0]) / (ls[8] - ls[0]);  // log-log slope at bottom
  if (!(slope0 > 1e-6)) throw std::runtime_error("regularize: flat shape at zero");
  std::vector<double> vals(grid.size());
  vals[0] = std::exp(q[0] + ls[0]) / slope0;  // head: raw ~ c u^slope0 below the grid
  for (std::size_t i = 1; i < grid.size(); ++i) {
    // trapezoid in s = ln u of the envelope integrand e^{q(s)+s}
    const double h = ls[i] - ls[i - 1];
    vals[i] = vals[i - 1] + 0.5 * h * (std::exp(q[i - 1] + ls[i - 1]) + std::exp(q[i] + ls[i]));
  }
  const double ext_low = slope0;
  const double ext_high =
      (std::log(vals[vals.size() - 1]) - std::log(vals[vals.size() - 2])) /
      (ls[ls.size() - 1] - ls[ls.size() - 2]);
  return OrliczSpec::tabulated(grid, vals, ext_low, ext_high);
}

/// Midpoint convexity scan in the original (not log) coordinates.
inline bool midpoint_convex_on_grid(const OrliczSpec& spec, double lo, double hi,
                                    double tol = 1e-9, int per_decade = 16) {
  const auto g = detail::log_grid(lo, hi, per_decade);
  for (std::size_t i = 0; i + 2 < g.size(); ++i) {
    const double a = g[i], b = g[i + 2], m = 0.5 * (a + b);
    const double lhs = spec.value(m);
    const double rhs = 0.5 * (spec.value(a) + spec.value(b));
    if (lhs > rhs * (1.0 + tol) + tol) return false;
  }
  return true;
}

}  // namespace orlicz
