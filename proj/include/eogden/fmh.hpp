#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "eogden/error.hpp"
#include "eogden/signal.hpp"

namespace eogden {

struct FmhConfig {
  std::size_t half_len = 16;                      // L
  std::array<double, 5> weights{1, 1, 1, 1, 1};   // w1..w5
  std::vector<double> fir_taps;                   // h, length L; empty means uniform 1/L

  void validate() const {
    if (half_len < 2) throw Error(ErrorKind::Parameter, "FMH half length L must be >= 2");
    for (double w : weights) {
      if (!(w > 0.0)) throw Error(ErrorKind::Parameter, "FMH weights must be positive");
    }
    if (!fir_taps.empty() && fir_taps.size() != half_len) {
      throw Error(ErrorKind::Parameter, "FMH FIR taps must have length L = " + std::to_string(half_len));
    }
  }

  std::vector<double> taps() const {
    if (!fir_taps.empty()) return fir_taps;
    return std::vector<double>(half_len, 1.0 / static_cast<double>(half_len));
  }
};

struct SubfilterOutputs {
  double p1 = 0, p2 = 0, p3 = 0, p4 = 0, p5 = 0;

  std::array<double, 5> as_array() const { return {p1, p2, p3, p4, p5}; }
};

namespace detail {

// Caller guarantees L <= n < x.size() - L.
inline SubfilterOutputs subfilters_unchecked(std::span<const double> x, std::size_t n, std::size_t L,
                                             std::span<const double> h) {
  SubfilterOutputs p;
  double fwd = 0.0, bwd = 0.0, fwd_fir = 0.0, bwd_fir = 0.0;
  for (std::size_t i = 0; i < L; ++i) {
    fwd += x[n + 1 + i];
    bwd += x[n - 1 - i];
    fwd_fir += h[i] * x[n + 1 + i];
    bwd_fir += h[i] * x[n - 1 - i];
  }
  const double inv = 1.0 / static_cast<double>(L);
  p.p1 = fwd * inv;
  p.p2 = bwd_fir;
  p.p3 = x[n];
  p.p4 = fwd_fir;
  p.p5 = bwd * inv;
  return p;
}

}  // namespace detail

// p1 forward mean of x[n+1..n+L], p2 backward FIR over x[n-1-i], p3 the centre
// sample, p4 forward FIR over x[n+1+i], p5 backward mean of x[n-L..n-1].
inline SubfilterOutputs subfilter_outputs(std::span<const double> x, std::size_t n, const FmhConfig& cfg) {
  cfg.validate();
  const std::size_t L = cfg.half_len;
  if (n < L || n + L >= x.size()) {
    throw Error(ErrorKind::Parameter, "index " + std::to_string(n) + " is not interior for L = " + std::to_string(L));
  }
  const auto h = cfg.taps();
  return detail::subfilters_unchecked(x, n, L, h);
}

// Plain sample median of the five products w_i * p_i (third order statistic).
inline double weighted_median5(const std::array<double, 5>& values, const std::array<double, 5>& weights) {
  std::array<double, 5> v{};
  for (std::size_t i = 0; i < 5; ++i) v[i] = weights[i] * values[i];
  std::nth_element(v.begin(), v.begin() + 2, v.end());
  return v[2];
}

inline std::size_t fmh_min_length(const FmhConfig& cfg) { return 2 * cfg.half_len + 1; }

// The input is extended by L samples of half-sample symmetric reflection on
// each side so every output sample sees full subfilter windows.
inline std::vector<double> fmh_filter(std::span<const double> x, const FmhConfig& cfg) {
  cfg.validate();
  const std::size_t L = cfg.half_len;
  if (x.size() < fmh_min_length(cfg)) {
    throw Error(ErrorKind::TooShort, "FMH needs at least 2L+1 = " + std::to_string(fmh_min_length(cfg)) + " samples");
  }
  const std::size_t n = x.size();
  std::vector<double> ext(n + 2 * L);
  for (std::size_t i = 0; i < L; ++i) {
    ext[L - 1 - i] = x[i];
    ext[L + n + i] = x[n - 1 - i];
  }
  std::copy(x.begin(), x.end(), ext.begin() + static_cast<std::ptrdiff_t>(L));

  const auto h = cfg.taps();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto p = detail::subfilters_unchecked(ext, i + L, L, h);
    y[i] = weighted_median5(p.as_array(), cfg.weights);
  }
  return y;
}

inline SampledSignal fmh_filter(const SampledSignal& signal, const FmhConfig& cfg) {
  return signal.with_samples(fmh_filter(signal.samples(), cfg));
}

}  // namespace eogden
