#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace orlicz::detail {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Log-spaced grid from lo to hi (inclusive endpoints).
inline std::vector<double> log_grid(double lo, double hi, int per_decade) {
  if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("log_grid: need 0 < lo < hi");
  const double llo = std::log10(lo), lhi = std::log10(hi);
  const int n = std::max(2, static_cast<int>(std::ceil((lhi - llo) * per_decade)) + 1);
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    g[static_cast<std::size_t>(i)] = std::pow(10.0, llo + (lhi - llo) * i / (n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double rms = 0.0;
};

inline LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 2) throw std::invalid_argument("fit_line: need two matched points");
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / static_cast<double>(n), my = sy / static_cast<double>(n);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx <= 0) throw std::invalid_argument("fit_line: degenerate abscissae");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss += r * r;
  }
  f.rms = std::sqrt(ss / static_cast<double>(n));
  f.slope_stderr = n > 2 ? std::sqrt(ss / static_cast<double>(n - 2) / sxx) : f.rms / std::sqrt(sxx);
  return f;
}

// Least squares for y = slope·x + g·ln|x| + c. The ln|x| regressor absorbs
// the slowly-varying correction that power-times-log shapes contribute, so
// the fitted slope converges to the asymptotic exponent at modest |x|.
inline LineFit fit_line_logcorr(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 4) throw std::invalid_argument("fit_line_logcorr: need 4 points");
  double A[3][3] = {{0}}, b[3] = {0};
  auto row = [&](double xi) { return std::array<double, 3>{xi, std::log(std::abs(xi)), 1.0}; };
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = row(x[i]);
    for (int p = 0; p < 3; ++p) {
      for (int q = 0; q < 3; ++q) A[p][q] += r[p] * r[q];
      b[p] += r[p] * y[i];
    }
  }
  // Gaussian elimination with partial pivoting on the 3x3 normal equations,
  // keeping the inverse's (0,0) entry for the slope variance.
  double M[3][6] = {{0}};
  for (int p = 0; p < 3; ++p) {
    for (int q = 0; q < 3; ++q) M[p][q] = A[p][q];
    M[p][3 + p] = 1.0;
  }
  for (int c = 0; c < 3; ++c) {
    int piv = c;
    for (int r2 = c + 1; r2 < 3; ++r2)
      if (std::abs(M[r2][c]) > std::abs(M[piv][c])) piv = r2;
    if (M[piv][c] == 0.0) throw std::invalid_argument("fit_line_logcorr: singular design");
    std::swap(M[piv], M[c]);
    const double d = M[c][c];
    for (int q = 0; q < 6; ++q) M[c][q] /= d;
    for (int r2 = 0; r2 < 3; ++r2) {
      if (r2 == c) continue;
      const double m = M[r2][c];
      for (int q = 0; q < 6; ++q) M[r2][q] -= m * M[c][q];
    }
  }
  double beta[3];
  for (int p = 0; p < 3; ++p) beta[p] = M[p][3] * b[0] + M[p][4] * b[1] + M[p][5] * b[2];
  LineFit f;
  f.slope = beta[0];
  f.intercept = beta[2];
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = row(x[i]);
    const double pred = beta[0] * r[0] + beta[1] * r[1] + beta[2] * r[2];
    ss += (y[i] - pred) * (y[i] - pred);
  }
  f.rms = std::sqrt(ss / static_cast<double>(n));
  const double s2 = n > 3 ? ss / static_cast<double>(n - 3) : ss;
  f.slope_stderr = std::sqrt(std::max(0.0, s2 * M[0][3]));
  return f;
}

// Composite Simpson over [a,b], n subintervals (rounded up to even).
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (b == a) return 0.0;
  if (n % 2 != 0) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + h * i) * (i % 2 == 1 ? 4.0 : 2.0);
  return s * h / 3.0;
}

struct Integral {
  double value = 0.0;
  bool diverged = false;
  bool truncated = false;
};

// \int_0^1 G(t) dt where the integrand is supplied in log form:
// log_G(log_t) = ln G(e^{log_t}), -inf meaning G = 0.
//
// Substitutes t = e^{-s} and integrates the decaying integrand over
// geometrically growing s-panels, so power-times-log singularities at t = 0
// (including ones whose mass decays only logarithmically) are resolved.
// A power-law tail fit absorbs what remains past the last panel.
inline Integral integrate01_log(const std::function<double(double)>& log_G,
                                double rel_tol = 1e-6) {
  Integral out;
  auto H = [&](double s) -> double {
    const double lg = log_G(-s);
    if (lg == kNegInf) return 0.0;
    const double e = lg - s;
    if (e > 700.0) return kInf;
    return std::exp(e);
  };

  auto panel_value = [&](double s0, double s1, int n) -> double {
    // integrate H over [s0,s1] in w = ln s coordinates when s0 > 0
    if (s0 <= 0.0) return simpson(H, s0, s1, n);
    auto Hw = [&](double w) {
      const double s = std::exp(w);
      return H(s) * s;
    };
    return simpson(Hw, std::log(s0), std::log(s1), n);
  };

  double total = panel_value(0.0, 1.0, 48);
  if (!std::isfinite(total)) {
    out.diverged = true;
    return out;
  }
  // Panel masses may grow for a while (the integrand's turnover point can sit
  // deep inside the substituted range); only the terminal behavior decides
  // divergence. For H ~ s^{-a} the panel ratio tends to 2^{1-a}, so ratios
  // at or above 1 mean a <= 1: divergent (or unreachably slow).
  constexpr int kPanels = 26;  // s up to 2^26, i.e. t down to exp(-6.7e7)
  std::vector<double> panels;
  double s_lo = 1.0;
  for (int k = 0; k < kPanels; ++k) {
    const double s_hi = s_lo * 2.0;
    const double p = panel_value(s_lo, s_hi, 32);
    if (!std::isfinite(p)) {
      out.diverged = true;
      return out;
    }
    total += p;
    panels.push_back(p);
    if (std::abs(total) > 0.0 && p <= rel_tol * std::abs(total) && panels.size() >= 2 &&
        panels[panels.size() - 2] <= rel_tol * std::abs(total)) {
      out.value = total;
      return out;
    }
    s_lo = s_hi;
  }
  const double last = panels.back(), prev = panels[panels.size() - 2];
  if (prev > 0.0 && last > 0.0) {
    const double r = last / prev;
    if (r >= 0.98) {
      out.diverged = true;
      out.value = total;
      return out;
    }
    // geometric tail: panels shrink by a near-constant factor per doubling
    const double tail = last * r / (1.0 - r);
    total += tail;
    out.truncated = tail > 1e-3 * std::abs(total);
  }
  out.value = total;
  return out;
}

// Smallest x in [lo,hi] with pred(x) true; pred monotone (false then true).
inline double bisect_pred(const std::function<bool(double)>& pred, double lo, double hi,
                          int iters = 120) {
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (pred(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

inline double sq(double x) { return x * x; }

}  // namespace orlicz::detail
