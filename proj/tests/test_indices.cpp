#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "orlicz/indices.hpp"

using namespace orlicz;

TEST_CASE("index calibration: powers are exact") {
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    const auto M = OrliczSpec::power(p);
    const auto z = index_at_zero(M);
    const auto i = index_at_infinity(M);
    CHECK(std::abs(z.alpha.point - p) <= 1e-6);
    CHECK(std::abs(z.beta.point - p) <= 1e-6);
    CHECK(std::abs(i.alpha.point - p) <= 1e-6);
    CHECK(std::abs(i.beta.point - p) <= 1e-6);
    CHECK(std::abs(z.alpha.rigorous_bound - p) <= 1e-6);
    CHECK(std::abs(i.beta.rigorous_bound - p) <= 1e-6);
  }
}

TEST_CASE("log factors do not move the indices") {
  // u^p ln(e/u) at zero still has alpha = beta = p
  const auto Mz = OrliczSpec::power_log(1.5, 1.0, 0.0);
  const auto z = index_at_zero(Mz);
  CHECK(z.alpha.point == doctest::Approx(1.5).epsilon(0.04));
  CHECK(z.beta.point == doctest::Approx(1.5).epsilon(0.04));
  // u^p ln^{-2}(e+u) at infinity likewise
  const auto Mi = OrliczSpec::power_log(1.5, 0.0, -2.0);
  const auto i = index_at_infinity(Mi);
  CHECK(i.alpha.point == doctest::Approx(1.5).epsilon(0.04));
  CHECK(i.beta.point == doctest::Approx(1.5).epsilon(0.04));
}

TEST_CASE("rigorous bounds bracket the point estimates from the stated side") {
  const auto M = OrliczSpec::power_log(1.5, 0.0, -2.0);
  const auto i = index_at_infinity(M);
  CHECK(i.alpha.side == BoundSide::Lower);
  CHECK(i.beta.side == BoundSide::Upper);
  // one-sided with respect to the truncated dilation family:
  // alpha's bound never exceeds the true index, beta's never undershoots it
  CHECK(i.alpha.rigorous_bound <= 1.5 + 1e-9);
  CHECK(i.beta.rigorous_bound >= 1.5 - 0.2);
}

TEST_CASE("alpha <= beta on a closed-form corpus") {
  std::vector<OrliczSpec> corpus;
  for (double p : {1.0, 1.3, 2.0, 2.7}) corpus.push_back(OrliczSpec::power(p));
  corpus.push_back(OrliczSpec::power_log(1.5, 0.0, -2.0));
  corpus.push_back(OrliczSpec::power_log(1.8, 0.7, 0.5));
  for (const auto& M : corpus) {
    const auto z = index_at_zero(M);
    const auto i = index_at_infinity(M);
    // point estimates on power-times-log shapes carry ~0.03 window bias in
    // opposite directions for the two indices, so allow that much crossing
    CHECK(z.alpha.point <= z.beta.point + 0.05);
    CHECK(i.alpha.point <= i.beta.point + 0.05);
  }
}

TEST_CASE("spliced shapes separate the two regimes") {
  const auto M = OrliczSpec::spliced(OrliczSpec::power(1.2), OrliczSpec::power(2.5), 1.0);
  CHECK(index_at_zero(M).alpha.point == doctest::Approx(1.2).epsilon(0.02));
  CHECK(index_at_infinity(M).beta.point == doctest::Approx(2.5).epsilon(0.02));
}

TEST_CASE("degenerate inputs are flagged, not mis-estimated") {
  std::vector<double> ls = {0.0}, lD = {0.0};
  const auto e = detail_idx::from_dilation(ls, lD, BoundSide::Lower);
  CHECK(e.degenerate);
}
