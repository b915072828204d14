#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "orlicz/mc_sim.hpp"
#include "orlicz/orlicz_spec.hpp"
#include "orlicz/sampled_function.hpp"

namespace orlicz {

/// Named (M, f) pairs used by the reproduction pipelines. Parameters default
/// to p = 1.5 and alpha = 0.3 and can be overridden where meaningful.
struct Preset {
  std::string name;
  OrliczSpec M = OrliczSpec::power(2.0);
  SampledRealFunction f = SampledRealFunction::constant(1.0);
  double p = 1.5;
  double alpha = 0.3;
};

/// M = u^p, f = t^{-1/p} ln^{-3/(2p)}(e/t): the span norm ψ and the space
/// function φ separate by a log factor and the subspace is not strongly
/// embedded.
inline Preset preset_example1(double p = 1.5) {
  if (!(p > 1.0 && p < 2.0)) throw std::invalid_argument("example1: need 1 < p < 2");
  Preset pr;
  pr.name = "example1";
  pr.p = p;
  pr.M = OrliczSpec::power(p);
  pr.f = SampledRealFunction::power_decay(1.0 / p, -1.5 / p);
  return pr;
}

/// M = u^p ln^{-2}(e+u) at infinity, f = t^{-1/p} ln^{alpha}(e/t): strongly
/// embedded with equicontinuous norms; 1/ψ^{-1} tracks f.
inline Preset preset_example2(double p = 1.5, double alpha = 0.3) {
  if (!(p > 1.0 && p < 2.0)) throw std::invalid_argument("example2: need 1 < p < 2");
  if (!(alpha > 0.0 && alpha < 1.0 / p))
    throw std::invalid_argument("example2: need 0 < alpha < 1/p");
  Preset pr;
  pr.name = "example2";
  pr.p = p;
  pr.alpha = alpha;
  pr.M = OrliczSpec::power_log(p, 0.0, -2.0);
  pr.f = SampledRealFunction::power_decay(1.0 / p, alpha);
  return pr;
}

/// The example-2 profile truncated at level f(t_c) so it lands in L², paired
/// with M = u². The span norm ψ is then exactly quadratic and the sequence
/// fundamental function grows like √n.
inline Preset preset_l2_theorem(double p = 1.5, double alpha = 0.3, double t_c = 1e-12) {
  Preset base = preset_example2(p, alpha);
  Preset pr;
  pr.name = "l2-theorem";
  pr.p = 2.0;
  pr.alpha = alpha;
  pr.M = OrliczSpec::power(2.0);
  const double cap = base.f.log_value(std::log(t_c));
  const SampledRealFunction f2 = base.f;
  pr.f = SampledRealFunction::from_log_form(
      Domain::UnitInterval, [f2, cap](double log_t) { return std::min(f2.log_value(log_t), cap); },
      /*nonincreasing=*/true);
  return pr;
}

/// Identically-one copies (Rademacher signs) with M = u².
inline Preset preset_rademacher() {
  Preset pr;
  pr.name = "rademacher";
  pr.p = 2.0;
  pr.M = OrliczSpec::power(2.0);
  pr.f = SampledRealFunction::constant(1.0);
  return pr;
}

inline Preset preset_by_name(const std::string& name) {
  if (name == "example1") return preset_example1();
  if (name == "example2") return preset_example2();
  if (name == "l2-theorem") return preset_l2_theorem();
  if (name == "rademacher") return preset_rademacher();
  throw std::invalid_argument("unknown preset '" + name +
                              "' (expected example1 | example2 | l2-theorem | rademacher)");
}

}  // namespace orlicz
