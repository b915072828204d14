#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "orlicz/detail/numeric.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/orlicz_spec.hpp"
#include "orlicz/sampled_function.hpp"
#include "orlicz/span_builder.hpp"

namespace orlicz {

/// Specification of a sequence of independent mean-zero copies. Identical
/// copies are ε·f*(U) with U uniform on (0,1] and ε a fair sign; the
/// two_valued list overrides this per copy with |value| = big on measure
/// m_big and small elsewhere (still sign-symmetrized), which is how the
/// non-identically-distributed counterexample sequence is expressed.
struct CopySpec {
  SampledRealFunction base = SampledRealFunction::constant(1.0);
  bool symmetrize = true;
  struct TwoValued {
    double big = 1.0;
    double m_big = 0.5;
    double small = 0.0;
  };
  std::vector<TwoValued> two_valued;  // when non-empty, copy k uses entry k
};

namespace detail_mc {

inline std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t copy, std::uint64_t block) {
  return splitmix(splitmix(splitmix(seed) ^ copy) ^ (block << 1 | 1));
}

inline double to_unit(std::uint64_t bits) {
  // (0,1]: 53-bit mantissa, never exactly 0
  return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

}  // namespace detail_mc

/// Deterministic per-(seed, copy) value stream, reseeded every block so that
/// block-parallel and serial generation agree bit for bit.
class SampleStream {
 public:
  static constexpr std::size_t kBlock = 4096;

  SampleStream(const CopySpec& spec, std::uint64_t seed, std::size_t copy)
      : spec_(&spec), seed_(seed), copy_(copy) {}

  double next() {
    if (i_ % kBlock == 0) eng_.seed(detail_mc::stream_seed(seed_, copy_, i_ / kBlock));
    const double u = detail_mc::to_unit(eng_());
    const double sign_bits = detail_mc::to_unit(eng_());
    ++i_;
    double v;
    if (!spec_->two_valued.empty()) {
      const auto& tv = spec_->two_valued.at(copy_);
      v = u <= tv.m_big ? tv.big : tv.small;
    } else {
      v = std::exp(spec_->base.log_value(std::log(u)));
    }
    if (spec_->symmetrize && sign_bits <= 0.5) v = -v;
    return v;
  }

 private:
  const CopySpec* spec_;
  std::uint64_t seed_;
  std::size_t copy_;
  std::size_t i_ = 0;
  std::mt19937_64 eng_;
};

/// N paths × k copies, flat row-major storage. Bitwise reproducible under
/// fixed (seed, N, k, spec).
struct SampleBatch {
  std::size_t paths = 0;
  std::size_t copies = 0;
  std::uint64_t seed = 0;
  std::vector<double> data;  // data[i*copies + k]

  double at(std::size_t path, std::size_t copy) const { return data[path * copies + copy]; }
};

inline SampleBatch sample_copies(const CopySpec& spec, std::size_t paths, std::size_t copies,
                                 std::uint64_t seed) {
  if (paths == 0 || copies == 0) throw std::invalid_argument("sample_copies: empty batch");
  SampleBatch b;
  b.paths = paths;
  b.copies = copies;
  b.seed = seed;
  b.data.resize(paths * copies);
  for (std::size_t k = 0; k < copies; ++k) {
    SampleStream s(spec, seed, k);
    for (std::size_t i = 0; i < paths; ++i) b.data[i * copies + k] = s.next();
  }
  return b;
}

struct EmpiricalNorm {
  NormResult norm;
  double se = 0.0;         // bootstrap standard error
  double tail_loss = 0.0;  // relative mass clamped at the top quantile
};

namespace detail_mc {

// Luxemburg bisection against a weighted empirical sum (1/N)·Σ w_b·M(s_b/λ).
inline double weighted_lux(const OrliczSpec& M, const std::vector<double>& s,
                           const std::vector<double>& w, double n_total) {
  double smax = 0.0, l1 = 0.0;
  for (std::size_t b = 0; b < s.size(); ++b) {
    if (w[b] <= 0.0) continue;
    smax = std::max(smax, s[b]);
    l1 += w[b] * s[b];
  }
  l1 /= n_total;
  if (smax <= 0.0) return 0.0;
  auto Phi = [&](double log_lam) {
    double acc = 0.0;
    for (std::size_t b = 0; b < s.size(); ++b) {
      if (w[b] <= 0.0 || s[b] <= 0.0) continue;
      acc += w[b] * std::exp(M.log_eval(std::log(s[b]) - log_lam));
    }
    return acc / n_total;
  };
  double lhi = std::log(smax);  // Phi <= M(1)·(mass fraction) <= 1
  double llo = std::log(std::max(l1, smax * 1e-12));
  if (Phi(llo) <= 1.0) llo = lhi - 40.0;  // partial mass: push the bracket down
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (llo + lhi);
    if (Phi(mid) <= 1.0)
      lhi = mid;
    else
      llo = mid;
  }
  return std::exp(lhi);
}

}  // namespace detail_mc

/// Empirical Luxemburg norm of S = Σ a_k f_k over the batch, with a binned
/// bootstrap standard error (B resamples over ~2000 geometric magnitude
/// bins — resampling bins instead of paths keeps the cost independent of N).
/// The top 1e-8 quantile is clamped to guard heavy tails; the clamped mass
/// is reported.
inline EmpiricalNorm empirical_luxemburg(const OrliczSpec& M, const CoeffSeq& a,
                                         const SampleBatch& batch, int B = 100) {
  if (a.size() > batch.copies) throw std::invalid_argument("empirical_luxemburg: batch too narrow");
  EmpiricalNorm out;
  const std::size_t N = batch.paths;
  std::vector<double> S(N, 0.0);
  for (std::size_t i = 0; i < N; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
      if (a[k] != 0.0) acc += a[k] * batch.at(i, k);
    S[i] = std::abs(acc);
  }
  // clamp at the 1 - 1e-8 quantile
  {
    std::vector<double> tmp = S;
    const std::size_t q = std::min(N - 1, static_cast<std::size_t>(
                                              std::ceil((1.0 - 1e-8) * static_cast<double>(N))));
    std::nth_element(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(q), tmp.end());
    const double cap = tmp[q];
    double lost = 0.0, total = 0.0;
    for (auto& x : S) {
      total += x;
      if (x > cap) {
        lost += x - cap;
        x = cap;
      }
    }
    out.tail_loss = total > 0.0 ? lost / total : 0.0;
  }
  double smin = detail::kInf, smax = 0.0;
  std::size_t zeros = 0;
  for (double x : S) {
    if (x <= 0.0) {
      ++zeros;
      continue;
    }
    smin = std::min(smin, x);
    smax = std::max(smax, x);
  }
  if (zeros == N) {
    out.norm.flag = NormFlag::Zero;
    return out;
  }
  // geometric bins over [smin, smax]
  const std::size_t nbins = 2000;
  const double la = std::log(smin), lb = std::log(smax * (1.0 + 1e-12));
  const double width = std::max(lb - la, 1e-12);
  std::vector<double> bin_w(nbins, 0.0), bin_sum(nbins, 0.0);
  for (double x : S) {
    if (x <= 0.0) continue;
    std::size_t b = static_cast<std::size_t>((std::log(x) - la) / width * static_cast<double>(nbins));
    b = std::min(b, nbins - 1);
    bin_w[b] += 1.0;
    bin_sum[b] += x;
  }
  std::vector<double> bin_s(nbins, 0.0);
  for (std::size_t b = 0; b < nbins; ++b)
    if (bin_w[b] > 0.0) bin_s[b] = bin_sum[b] / bin_w[b];
  const double value =
      detail_mc::weighted_lux(M, bin_s, bin_w, static_cast<double>(N));
  out.norm.value = value;
  out.norm.bracket_lo = out.norm.bracket_hi = value;
  // bootstrap over bins: multinomial counts via a binomial chain
  std::mt19937_64 rng(detail_mc::stream_seed(batch.seed, 0xb007ULL, 7));
  std::vector<double> resampled;
  std::vector<double> w(nbins);
  for (int rep = 0; rep < B; ++rep) {
    std::size_t remaining = N;
    double prob_left = 1.0;
    for (std::size_t b = 0; b < nbins; ++b) {
      const double p_b = bin_w[b] / static_cast<double>(N);
      if (remaining == 0 || prob_left <= 0.0) {
        w[b] = 0.0;
        continue;
      }
      std::binomial_distribution<std::size_t> bin(remaining, std::min(1.0, p_b / prob_left));
      const std::size_t c = bin(rng);
      w[b] = static_cast<double>(c);
      remaining -= c;
      prob_left -= p_b;
    }
    resampled.push_back(detail_mc::weighted_lux(M, bin_s, w, static_cast<double>(N)));
  }
  double mean = 0.0;
  for (double x : resampled) mean += x;
  mean /= static_cast<double>(resampled.size());
  double var = 0.0;
  for (double x : resampled) var += (x - mean) * (x - mean);
  out.se = std::sqrt(var / static_cast<double>(resampled.size() - 1));
  return out;
}

/// Empirical side of the independent-sum equivalence: compares the Monte
/// Carlo norm of Σ a_k f_k with the deterministic disjoint-sum functional
/// over a coefficient corpus.
inline EquivalenceReport js_check(const OrliczSpec& M, const SampledRealFunction& f,
                                  const std::vector<CoeffSeq>& corpus, std::size_t N,
                                  std::uint64_t seed, double band_limit = 10.0,
                                  std::vector<double>* out_se = nullptr) {
  std::size_t kmax = 0;
  for (const auto& a : corpus) kmax = std::max(kmax, a.size());
  CopySpec spec;
  spec.base = rearrangement(f);
  const auto batch = sample_copies(spec, N, kmax, seed);
  std::vector<double> idx, lhs, rhs;
  for (std::size_t j = 0; j < corpus.size(); ++j) {
    const auto& a = corpus[j];
    const auto emp = empirical_luxemburg(M, a, batch);
    if (emp.norm.flag == NormFlag::Zero) continue;
    const auto body = luxem1_body(M, a, f);
    const auto tail = l2_tail(a, f);
    idx.push_back(static_cast<double>(j + 1));
    lhs.push_back(emp.norm.value);
    rhs.push_back(body.value + tail.value);
    if (out_se) out_se->push_back(emp.se);
  }
  return make_equivalence_report(std::move(idx), std::move(lhs), std::move(rhs), band_limit,
                                 /*slope_tol=*/1.0);
}

/// One point of the sampled equicontinuity curve: the empirical norm of the
/// worst set of measure δ is the norm of the top ⌊δN⌋ order statistics of
/// |x| (upper level sets are the worst sets for a symmetric norm). Returns
/// inf{λ: (1/N)·Σ_top M(s_j/λ) <= 1}; 0 when δN < 1 — the curve is a
/// sampled lower envelope of the true modulus.
inline double tail_norm_sorted(const OrliczSpec& M, const std::vector<double>& sorted_desc,
                               double delta) {
  const std::size_t N = sorted_desc.size();
  const std::size_t m = static_cast<std::size_t>(delta * static_cast<double>(N));
  if (m == 0) return 0.0;
  // bin the top-m block geometrically so the bisection cost stays O(bins)
  const double top = sorted_desc.front();
  if (!(top > 0.0)) return 0.0;
  double bot = top;
  for (std::size_t i = 0; i < m; ++i)
    if (sorted_desc[i] > 0.0) bot = sorted_desc[i];
  const std::size_t nbins = 2000;
  const double la = std::log(bot), width = std::max(std::log(top) - la, 1e-12) * (1.0 + 1e-12);
  std::vector<double> w(nbins, 0.0), sum(nbins, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double x = sorted_desc[i];
    if (!(x > 0.0)) break;
    std::size_t b = static_cast<std::size_t>((std::log(x) - la) / width * static_cast<double>(nbins));
    b = std::min(b, nbins - 1);
    w[b] += 1.0;
    sum[b] += x;
  }
  std::vector<double> s(nbins, 0.0);
  for (std::size_t b = 0; b < nbins; ++b)
    if (w[b] > 0.0) s[b] = sum[b] / w[b];
  return detail_mc::weighted_lux(M, s, w, static_cast<double>(N));
}

/// Sampled equicontinuity modulus over a set of coefficient profiles
/// (normalize them to the ψ unit ball upstream): modulus(δ) = max over
/// profiles of the empirical worst-δ-set norm. Streams one profile at a
/// time, drawing only the copies with nonzero coefficients.
inline std::vector<std::pair<double, double>> equicontinuity_modulus(
    const OrliczSpec& M, const CopySpec& spec, const std::vector<CoeffSeq>& profiles,
    const std::vector<double>& delta_grid, std::size_t N, std::uint64_t seed) {
  std::vector<std::pair<double, double>> curve;
  for (double d : delta_grid) curve.emplace_back(d, 0.0);
  std::vector<double> S(N);
  for (const auto& a : profiles) {
    std::fill(S.begin(), S.end(), 0.0);
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (a[k] == 0.0) continue;
      SampleStream st(spec, seed, k);
      for (std::size_t i = 0; i < N; ++i) S[i] += a[k] * st.next();
    }
    for (auto& x : S) x = std::abs(x);
    std::sort(S.begin(), S.end(), std::greater<double>());
    for (auto& [d, m] : curve) m = std::max(m, tail_norm_sorted(M, S, d));
  }
  return curve;
}

/// Coefficient corpus: dense Gaussian-profile, sparse, and geometric-decay
/// families (count per family), deterministic under the seed.
inline std::vector<CoeffSeq> make_profile_corpus(std::size_t per_family, std::size_t max_len,
                                                 std::uint64_t seed) {
  std::mt19937_64 rng(detail_mc::splitmix(seed ^ 0xc0de5eedULL));
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::normal_distribution<double> G(0.0, 1.0);
  std::vector<CoeffSeq> corpus;
  for (std::size_t i = 0; i < per_family; ++i) {  // dense Gaussian
    CoeffSeq a(max_len);
    for (auto& x : a) x = G(rng);
    corpus.push_back(a);
  }
  for (std::size_t i = 0; i < per_family; ++i) {  // sparse
    CoeffSeq a(max_len, 0.0);
    const std::size_t nnz = 1 + static_cast<std::size_t>(U(rng) * 3.0);
    for (std::size_t j = 0; j < nnz; ++j)
      a[static_cast<std::size_t>(U(rng) * static_cast<double>(max_len))] = 2.0 * U(rng) - 1.0;
    if (a == CoeffSeq(max_len, 0.0)) a[0] = 1.0;
    corpus.push_back(a);
  }
  for (std::size_t i = 0; i < per_family; ++i) {  // geometric decay
    CoeffSeq a(max_len);
    const double r = 0.3 + 0.65 * U(rng);
    double c = 1.0;
    for (auto& x : a) {
      x = c * (U(rng) < 0.5 ? -1.0 : 1.0);
      c *= r;
    }
    corpus.push_back(a);
  }
  return corpus;
}

/// The two-valued non-identical counterexample family: |f_k| = 2^{k/2} on a
/// set of measure 2^{-k-1} and 1 elsewhere, symmetrized.
inline CopySpec counterexample_spec(std::size_t copies) {
  CopySpec spec;
  spec.symmetrize = true;
  for (std::size_t k = 1; k <= copies; ++k) {
    CopySpec::TwoValued tv;
    tv.big = std::pow(2.0, static_cast<double>(k) / 2.0);
    tv.m_big = std::pow(2.0, -static_cast<double>(k) - 1.0);
    tv.small = 1.0;
    spec.two_valued.push_back(tv);
  }
  return spec;
}

}  // namespace orlicz
