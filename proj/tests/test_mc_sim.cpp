#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "orlicz/mc_sim.hpp"
#include "orlicz/presets.hpp"

using namespace orlicz;

TEST_CASE("sampling is bitwise reproducible under a fixed seed") {
  CopySpec spec;
  const auto b1 = sample_copies(spec, 10000, 4, 99);
  const auto b2 = sample_copies(spec, 10000, 4, 99);
  CHECK(b1.data == b2.data);
  const auto b3 = sample_copies(spec, 10000, 4, 100);
  CHECK(b1.data != b3.data);
}

TEST_CASE("a shorter batch is a prefix of a longer one") {
  CopySpec spec;
  spec.base = SampledRealFunction::power_decay(0.3);
  const auto small = sample_copies(spec, 3000, 2, 7);
  const auto big = sample_copies(spec, 9000, 2, 7);
  for (std::size_t i = 0; i < 3000; ++i)
    for (std::size_t k = 0; k < 2; ++k) CHECK(small.at(i, k) == big.at(i, k));
}

TEST_CASE("Khintchine: empirical L2 norm of a Rademacher sum is the l2 norm") {
  CopySpec spec;
  const auto batch = sample_copies(spec, 100000, 8, 42);
  const auto M2 = OrliczSpec::power(2.0);
  for (const CoeffSeq& a : {CoeffSeq{3.0, 4.0}, CoeffSeq{1, 1, 1, 1}, CoeffSeq{2, -1, 0, 0, 5}}) {
    double l2 = 0.0;
    for (double c : a) l2 += c * c;
    l2 = std::sqrt(l2);
    const auto e = empirical_luxemburg(M2, a, batch);
    CHECK(std::abs(e.norm.value - l2) <= 3.0 * e.se + 0.02 * l2);
  }
}

TEST_CASE("Khintchine band in L^1.5") {
  // any Lp norm of a Rademacher sum is equivalent to ||a||_2
  CopySpec spec;
  const auto batch = sample_copies(spec, 100000, 6, 11);
  const auto M = OrliczSpec::power(1.5);
  for (const CoeffSeq& a : {CoeffSeq{1, 1, 1, 1, 1, 1}, CoeffSeq{5, 1, 0.5}}) {
    double l2 = 0.0;
    for (double c : a) l2 += c * c;
    l2 = std::sqrt(l2);
    const double r = empirical_luxemburg(M, a, batch).norm.value / l2;
    CHECK(r >= 0.5);
    CHECK(r <= 1.5);
  }
}

TEST_CASE("empirical norm of a single bounded copy matches the direct norm") {
  const auto f = SampledRealFunction::indicator(2.0, 0.25);
  const auto M = OrliczSpec::power_log(1.5, 0.0, -1.0);
  CopySpec spec;
  spec.base = rearrangement(f);
  const auto batch = sample_copies(spec, 200000, 1, 5);
  const auto e = empirical_luxemburg(M, CoeffSeq{1.0}, batch);
  const auto direct = luxemburg_norm(M, f);
  CHECK(e.norm.value == doctest::Approx(direct.value).epsilon(0.05));
}

TEST_CASE("counterexample modulus stays bounded below with no decay trend") {
  const std::size_t copies = 12;
  const auto spec = counterexample_spec(copies);
  const auto M2 = OrliczSpec::power(2.0);
  std::vector<CoeffSeq> profiles;
  for (std::size_t k = 0; k < copies; ++k) {
    CoeffSeq a(copies, 0.0);
    a[k] = 1.0 / std::sqrt(1.5);
    profiles.push_back(a);
  }
  std::vector<double> deltas;
  for (int j = 1; j <= 12; ++j) deltas.push_back(std::pow(2.0, -j));
  const auto curve = equicontinuity_modulus(M2, spec, profiles, deltas, 1 << 18, 123);
  std::vector<double> xs, ys;
  for (const auto& [d, m] : curve) {
    CHECK(m >= 0.3);
    xs.push_back(std::log(d));
    ys.push_back(std::log(m));
  }
  CHECK(detail::fit_line(xs, ys).slope >= -0.01);
}

TEST_CASE("identically distributed square-integrable copies have decaying modulus") {
  // f = t^{-0.3} has an integrability margin under M, so the tail norm decays
  // at a visible power rate (a barely-integrable f would decay only
  // logarithmically and the 10x bar would be unreachable at any sample size)
  const auto M = OrliczSpec::power_log(1.5, 0.0, -2.0);
  CopySpec spec;
  spec.base = SampledRealFunction::power_decay(0.3);
  const std::vector<CoeffSeq> profiles{{1.0}};
  const std::vector<double> deltas{0.5, std::pow(2.0, -14.0)};
  const auto curve = equicontinuity_modulus(M, spec, profiles, deltas, 1 << 18, 9);
  CHECK(curve[0].second / std::max(curve[1].second, 1e-12) >= 10.0);
}

TEST_CASE("profile corpus is deterministic and well-formed") {
  const auto c1 = make_profile_corpus(5, 8, 77);
  const auto c2 = make_profile_corpus(5, 8, 77);
  REQUIRE(c1.size() == 15);
  CHECK(c1 == c2);
  for (const auto& a : c1) {
    CHECK(a.size() == 8);
    double mx = 0.0;
    for (double x : a) mx = std::max(mx, std::abs(x));
    CHECK(mx > 0.0);
  }
}

TEST_CASE("js check: empirical sums track the disjoint-sum functional") {
  const auto pr = preset_example2();
  const std::vector<CoeffSeq> corpus{{1.0}, {1.0, 1.0, 1.0}, {2.0, -1.0}};
  const auto rep = js_check(pr.M, pr.f, corpus, 30000, 31);
  CHECK(rep.ratio_max / rep.ratio_min <= 10.0);
  for (std::size_t i = 0; i < rep.lhs.size(); ++i)
    CHECK(rep.lhs[i] / rep.rhs[i] >= 0.2);
}
