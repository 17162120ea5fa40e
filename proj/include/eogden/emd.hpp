#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "eogden/error.hpp"
#include "eogden/signal.hpp"
#include "eogden/spline.hpp"

namespace eogden {

struct Extrema {
  std::vector<std::size_t> maxima;
  std::vector<std::size_t> minima;
};

// Interior local extrema. A flat run that is higher (lower) than both of its
// neighbours counts once, at its first index. Runs touching either end of the
// array are never extrema.
inline Extrema find_extrema(std::span<const double> x) {
  if (x.size() < 3) throw Error(ErrorKind::TooShort, "extrema need at least 3 samples");
  Extrema e;
  const std::size_t n = x.size();
  std::size_t i = 1;
  while (i + 1 < n) {
    std::size_t j = i;
    while (j + 1 < n && x[j + 1] == x[i]) ++j;
    if (j + 1 >= n) break;
    const double before = x[i - 1];
    const double after = x[j + 1];
    if (before < x[i] && after < x[i]) {
      e.maxima.push_back(i);
    } else if (before > x[i] && after > x[i]) {
      e.minima.push_back(i);
    }
    i = j + 1;
  }
  return e;
}

enum class EnvelopeBoundary {
  Mirror,  // reflect the two extrema nearest each end about that end sample
  None,    // spline through the given extrema only
};

// Natural cubic spline through (index, x[index]) knots, evaluated at every
// sample index.
inline std::vector<double> envelope(std::span<const double> x, std::span<const std::size_t> extrema,
                                    EnvelopeBoundary boundary = EnvelopeBoundary::Mirror) {
  std::vector<double> kx, ky;
  const std::size_t n = x.size();
  kx.reserve(extrema.size() + 4);
  ky.reserve(extrema.size() + 4);
  const bool mirror = boundary == EnvelopeBoundary::Mirror && !extrema.empty();
  if (mirror) {
    for (std::size_t k = std::min<std::size_t>(2, extrema.size()); k-- > 0;) {
      kx.push_back(-static_cast<double>(extrema[k]));
      ky.push_back(x[extrema[k]]);
    }
  }
  for (std::size_t idx : extrema) {
    if (idx >= n) throw Error(ErrorKind::Shape, "extremum index out of range");
    kx.push_back(static_cast<double>(idx));
    ky.push_back(x[idx]);
  }
  if (mirror) {
    const double end = static_cast<double>(n - 1);
    const std::size_t cnt = std::min<std::size_t>(2, extrema.size());
    for (std::size_t k = 0; k < cnt; ++k) {
      const std::size_t idx = extrema[extrema.size() - 1 - k];
      kx.push_back(2.0 * end - static_cast<double>(idx));
      ky.push_back(x[idx]);
    }
  }
  if (kx.size() < 2) {
    throw Error(ErrorKind::DegenerateEnvelope, "envelope needs at least two knots, got " + std::to_string(kx.size()));
  }
  return NaturalCubicSpline(kx, ky).sample_grid(n);
}

struct SiftResult {
  std::vector<double> imf;
  int iterations = 0;
};

namespace detail {

inline bool has_oscillation(const Extrema& e) { return e.maxima.size() >= 2 && e.minima.size() >= 2; }

}  // namespace detail

// Repeatedly subtracts the mean of the upper and lower envelopes. Stops when
// SD = sum (d_prev - d)^2 / (d_prev^2 + eps) falls below sd_threshold or after
// max_sift_iters passes; eps = 1e-12 * max(1, max|d_prev|^2).
// If the detail loses its oscillation after the first pass, the last valid
// detail is returned.
inline SiftResult sift(std::span<const double> x, double sd_threshold = 0.3, int max_sift_iters = 10) {
  if (max_sift_iters < 1) throw Error(ErrorKind::Parameter, "max_sift_iters must be >= 1");
  std::vector<double> h(x.begin(), x.end());
  if (h.size() < 3 || !detail::has_oscillation(find_extrema(h))) {
    throw Error(ErrorKind::DegenerateEnvelope, "sifting needs at least two maxima and two minima");
  }
  SiftResult res;
  std::vector<double> next(h.size());
  for (int it = 1; it <= max_sift_iters; ++it) {
    const Extrema e = find_extrema(h);
    if (!detail::has_oscillation(e)) break;
    const auto upper = envelope(h, e.maxima);
    const auto lower = envelope(h, e.minima);

    double peak = 0.0;
    for (double v : h) peak = std::max(peak, std::abs(v));
    const double eps = 1e-12 * std::max(1.0, peak * peak);
    double sd = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
      next[i] = h[i] - 0.5 * (upper[i] + lower[i]);
      const double diff = h[i] - next[i];
      sd += diff * diff / (h[i] * h[i] + eps);
    }
    h.swap(next);
    res.iterations = it;
    if (sd < sd_threshold) break;
  }
  res.imf = std::move(h);
  return res;
}

struct EmdOptions {
  int max_imfs = 11;
  double sd_threshold = 0.3;
  int max_sift_iters = 10;
};

struct ImfSet {
  std::vector<std::vector<double>> imfs;
  std::vector<double> residual;
  std::vector<int> sift_counts;
  double sample_rate = kDefaultSampleRate;

  std::size_t count() const noexcept { return imfs.size(); }
};

inline constexpr std::size_t kMinEmdLength = 16;

inline ImfSet decompose(std::span<const double> x, const EmdOptions& opt = {}, double sample_rate = kDefaultSampleRate) {
  if (x.size() < kMinEmdLength) {
    throw Error(ErrorKind::TooShort, "EMD needs at least " + std::to_string(kMinEmdLength) + " samples");
  }
  if (opt.max_imfs < 0) throw Error(ErrorKind::Parameter, "max_imfs must be non-negative");
  ImfSet set;
  set.sample_rate = sample_rate;
  set.residual.assign(x.begin(), x.end());
  while (static_cast<int>(set.imfs.size()) < opt.max_imfs) {
    if (!detail::has_oscillation(find_extrema(set.residual))) break;
    SiftResult s = sift(set.residual, opt.sd_threshold, opt.max_sift_iters);
    for (std::size_t i = 0; i < s.imf.size(); ++i) set.residual[i] -= s.imf[i];
    set.sift_counts.push_back(s.iterations);
    set.imfs.push_back(std::move(s.imf));
  }
  return set;
}

inline ImfSet decompose(const SampledSignal& signal, const EmdOptions& opt = {}) {
  return decompose(signal.samples(), opt, signal.sample_rate());
}

// One-based inclusive IMF index range, e.g. imf_range(2, 9).
inline std::vector<std::size_t> imf_range(std::size_t first, std::size_t last) {
  std::vector<std::size_t> out;
  for (std::size_t k = first; k <= last; ++k) out.push_back(k);
  return out;
}

// Sum of the selected IMFs (one-based); indices past the available count are
// skipped, the residual is never included.
inline SampledSignal reconstruct(const ImfSet& set, std::span<const std::size_t> keep) {
  std::vector<double> out(set.residual.size(), 0.0);
  std::size_t used = 0;
  for (std::size_t k : keep) {
    if (k == 0) throw Error(ErrorKind::Parameter, "IMF indices are one-based");
    if (k > set.imfs.size()) continue;
    const auto& imf = set.imfs[k - 1];
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += imf[i];
    ++used;
  }
  if (used == 0) {
    throw Error(ErrorKind::EmptySelection, "no IMF selected out of " + std::to_string(set.imfs.size()));
  }
  return SampledSignal(std::move(out), set.sample_rate);
}

inline std::size_t count_zero_crossings(std::span<const double> x) {
  std::size_t count = 0;
  double prev = 0.0;
  for (double v : x) {
    if (v == 0.0) continue;
    if (prev != 0.0 && (v > 0.0) != (prev > 0.0)) ++count;
    prev = v;
  }
  return count;
}

// Defining IMF property: extrema and zero-crossing counts differ by at most one.
inline bool satisfies_imf_count_rule(std::span<const double> x) {
  const Extrema e = find_extrema(x);
  const auto extrema = static_cast<long long>(e.maxima.size() + e.minima.size());
  const auto zc = static_cast<long long>(count_zero_crossings(x));
  return std::llabs(extrema - zc) <= 1;
}

}  // namespace eogden
