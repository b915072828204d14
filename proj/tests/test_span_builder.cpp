#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "orlicz/indices.hpp"
#include "orlicz/presets.hpp"
#include "orlicz/span_builder.hpp"

using namespace orlicz;

TEST_CASE("build_theta passes u^2 through and splices otherwise") {
  CHECK(build_theta(OrliczSpec::power(2.0)).is_power());
  const auto th = build_theta(OrliczSpec::power(1.5));
  // below 1: quadratic; above 1: exponent 1.5 (up to the smoothing)
  CHECK(std::log(th.value(0.01) / th.value(0.001)) / std::log(10.0) ==
        doctest::Approx(2.0).epsilon(0.02));
  CHECK(std::log(th.value(1e6) / th.value(1e5)) / std::log(10.0) ==
        doctest::Approx(1.5).epsilon(0.02));
}

TEST_CASE("build_psi of the unit indicator reproduces theta") {
  const auto M = OrliczSpec::power(1.5);
  const auto theta = build_theta(M);
  const auto psi = build_psi(M, SampledRealFunction::constant(1.0));
  for (double u : detail::log_grid(1e-6, 1.0, 4))
    CHECK(psi.value(u) == doctest::Approx(theta.value(u)).epsilon(0.01));
}

TEST_CASE("build_psi recovers the power for a stable-like profile") {
  // M = u^p, f = t^{-1/q} with p < q < 2 gives psi equivalent to u^q
  const double p = 1.5, q = 1.8;
  const auto psi = build_psi(OrliczSpec::power(p), SampledRealFunction::power_decay(1.0 / q));
  const auto idx = index_at_zero(psi);
  CHECK(idx.alpha.point == doctest::Approx(q).epsilon(0.03));
  CHECK(idx.beta.point == doctest::Approx(q).epsilon(0.03));
}

TEST_CASE("build_psi rejects profiles outside the Orlicz class") {
  // f = t^{-1} is not integrable against theta ~ u^p at the origin
  CHECK_THROWS(build_psi(OrliczSpec::power(1.5), SampledRealFunction::power_decay(1.0)));
}

TEST_CASE("psi inverse tracks the reciprocal profile for the second example") {
  const auto pr = preset_example2();
  const auto psi = build_psi(pr.M, pr.f);
  double rmin = detail::kInf, rmax = detail::kNegInf;
  for (double t : detail::log_grid(1e-8, 0.5, 8)) {
    const double r = std::log(inverse(psi, t)) - (-pr.f.log_value(std::log(t)));
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
  }
  CHECK(std::exp(rmax - rmin) <= 3.0);
}

TEST_CASE("luxem2 equivalence holds for both worked examples") {
  for (const auto& pr : {preset_example1(), preset_example2()}) {
    const auto psi = build_psi(pr.M, pr.f);
    const auto rep = luxem2_check(pr.M, psi, pr.f, /*max_k=*/16);
    CHECK(rep.verdict == EquivVerdict::Equivalent);
    CHECK(rep.ratio_max / rep.ratio_min <= 10.0);
  }
}

TEST_CASE("luxem1 equivalence over a small coefficient corpus") {
  const auto pr = preset_example2();
  const auto psi = build_psi(pr.M, pr.f);
  std::vector<CoeffSeq> corpus = {
      {1.0}, {1.0, 1.0}, {1.0, -1.0, 1.0, -1.0}, {3.0, 2.0, 1.0}, {0.1, 0.1, 5.0}};
  const auto rep = luxem1_check(pr.M, psi, pr.f, corpus);
  CHECK(rep.ratio_max / rep.ratio_min <= 10.0);
}

TEST_CASE("distribution match for an exactly self-dual pair") {
  // psi = u^2, f = 1/psi^{-1} = t^{-1/2}: n_f(tau) = psi(1/tau) exactly
  const auto psi = OrliczSpec::power(2.0);
  const auto f = SampledRealFunction::power_decay(0.5);
  const auto rep = distribution_match(f, psi);
  CHECK(rep.verdict == EquivVerdict::Equivalent);
  CHECK(rep.ratio_max / rep.ratio_min <= 1.01);
}

TEST_CASE("equivalence report verdicts track the trend direction") {
  std::vector<double> param, lhs, rhs;
  for (int k = 0; k <= 10; ++k) {
    const double n = std::pow(2.0, k);
    param.push_back(n);
    lhs.push_back(1.0);
    rhs.push_back(std::pow(n, 0.1));
  }
  CHECK(make_equivalence_report(param, lhs, rhs).verdict == EquivVerdict::LhsDominated);
  CHECK(make_equivalence_report(param, rhs, lhs).verdict == EquivVerdict::RhsDominated);
  CHECK(make_equivalence_report(param, lhs, lhs).verdict == EquivVerdict::Equivalent);
}
