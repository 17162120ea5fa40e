#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eogden/error.hpp"
#include "eogden/signal.hpp"
#include "eogden/wavelets.hpp"

namespace eogden {

enum class Extension { Periodic };

// Undecimated wavelet coefficients. details[0] is the finest level; every
// array has the padded length.
struct SwtDecomposition {
  std::vector<std::vector<double>> details;
  std::vector<double> approximation;
  Wavelet wavelet = Wavelet::Db4;
  std::size_t original_len = 0;
  Extension extension = Extension::Periodic;
  double sample_rate = kDefaultSampleRate;

  int levels() const noexcept { return static_cast<int>(details.size()); }
  std::size_t padded_len() const noexcept { return approximation.size(); }
};

inline std::size_t swt_padded_length(std::size_t n, int levels) {
  const std::size_t block = std::size_t{1} << levels;
  return ((n + block - 1) / block) * block;
}

namespace detail {

// out[n] = sum_k f[k] in[(n + k*stride) mod N]
inline void atrous_analysis(std::span<const double> in, std::span<const double> f, std::size_t stride,
                            std::vector<double>& out) {
  const std::size_t n = in.size();
  out.assign(n, 0.0);
  for (std::size_t k = 0; k < f.size(); ++k) {
    const std::size_t off = (k * stride) % n;
    const double c = f[k];
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t j = i + off;
      if (j >= n) j -= n;
      out[i] += c * in[j];
    }
  }
}

// Adjoint of atrous_analysis, accumulated into out:
// out[m] += sum_k f[k] in[(m - k*stride) mod N]
inline void atrous_synthesis_add(std::span<const double> in, std::span<const double> f, std::size_t stride,
                                 std::vector<double>& out) {
  const std::size_t n = in.size();
  for (std::size_t k = 0; k < f.size(); ++k) {
    const std::size_t off = (k * stride) % n;
    const double c = f[k];
    for (std::size_t m = 0; m < n; ++m) {
      const std::size_t j = m >= off ? m - off : m + n - off;
      out[m] += c * in[j];
    }
  }
}

}  // namespace detail

inline SwtDecomposition swt_decompose(std::span<const double> x, int levels = 6, Wavelet wavelet = Wavelet::Db4,
                                      double sample_rate = kDefaultSampleRate) {
  if (levels < 1 || levels > 30) throw Error(ErrorKind::Parameter, "levels must be in [1, 30]");
  if (x.empty()) throw Error(ErrorKind::EmptyInput, "cannot decompose an empty signal");

  SwtDecomposition dec;
  dec.wavelet = wavelet;
  dec.original_len = x.size();
  dec.sample_rate = sample_rate;
  const std::size_t padded = swt_padded_length(x.size(), levels);
  std::vector<double> approx(padded);
  for (std::size_t i = 0; i < padded; ++i) approx[i] = x[i % x.size()];

  const auto lo = lowpass_filter(wavelet);
  const auto hi = highpass_filter(wavelet);
  std::vector<double> next;
  for (int j = 1; j <= levels; ++j) {
    const std::size_t stride = std::size_t{1} << (j - 1);
    std::vector<double> band;
    detail::atrous_analysis(approx, hi, stride, band);
    detail::atrous_analysis(approx, lo, stride, next);
    dec.details.push_back(std::move(band));
    approx.swap(next);
  }
  dec.approximation = std::move(approx);
  return dec;
}

inline SwtDecomposition swt_decompose(const SampledSignal& signal, int levels = 6, Wavelet wavelet = Wavelet::Db4) {
  return swt_decompose(signal.samples(), levels, wavelet, signal.sample_rate());
}

enum class ThresholdMode { Soft, Hard };

constexpr std::string_view to_string(ThresholdMode m) noexcept { return m == ThresholdMode::Soft ? "soft" : "hard"; }

inline double soft_threshold(double c, double t) noexcept {
  const double mag = std::abs(c) - t;
  return mag > 0.0 ? std::copysign(mag, c) : 0.0;
}

inline double hard_threshold(double c, double t) noexcept { return std::abs(c) > t ? c : 0.0; }

inline double median_abs(std::span<const double> v) {
  if (v.empty()) throw Error(ErrorKind::EmptyInput, "median of an empty sequence");
  std::vector<double> a(v.size());
  std::transform(v.begin(), v.end(), a.begin(), [](double c) { return std::abs(c); });
  const std::size_t mid = a.size() / 2;
  std::nth_element(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(mid), a.end());
  const double upper = a[mid];
  if (a.size() % 2 == 1) return upper;
  const double lower = *std::max_element(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

// multiplier * sigma * sqrt(2 ln N), sigma = median|finest detail| / 0.6745.
inline double universal_threshold(const SwtDecomposition& dec, double multiplier = 1.0) {
  if (dec.details.empty()) throw Error(ErrorKind::Shape, "decomposition has no detail levels");
  const double sigma = median_abs(dec.details.front()) / 0.6745;
  const double n = static_cast<double>(dec.padded_len());
  return multiplier * sigma * std::sqrt(2.0 * std::log(n));
}

// Shrinks every detail level with one global threshold; the approximation is
// left untouched.
inline SwtDecomposition threshold_coeffs(SwtDecomposition dec, ThresholdMode mode, double multiplier = 1.0) {
  if (multiplier < 0.0) throw Error(ErrorKind::Parameter, "threshold multiplier must be non-negative");
  const double t = universal_threshold(dec, multiplier);
  for (auto& level : dec.details) {
    for (double& c : level) c = mode == ThresholdMode::Soft ? soft_threshold(c, t) : hard_threshold(c, t);
  }
  return dec;
}

// Inverse a-trous transform. Each level averages the two decimation-phase
// inverses: a_{j-1} = (A^T a_j + D^T d_j) / 2.
inline SampledSignal iswt_reconstruct(const SwtDecomposition& dec) {
  const std::size_t n = dec.approximation.size();
  if (dec.details.empty()) throw Error(ErrorKind::Shape, "decomposition has no detail levels");
  if (n == 0 || n % (std::size_t{1} << dec.levels()) != 0) {
    throw Error(ErrorKind::Shape, "coefficient length is not a multiple of 2^levels");
  }
  for (const auto& d : dec.details) {
    if (d.size() != n) throw Error(ErrorKind::Shape, "detail and approximation lengths differ");
  }
  if (dec.original_len == 0 || dec.original_len > n) throw Error(ErrorKind::Shape, "original length out of range");

  const auto lo = lowpass_filter(dec.wavelet);
  const auto hi = highpass_filter(dec.wavelet);
  std::vector<double> approx = dec.approximation;
  std::vector<double> prev;
  for (int j = dec.levels(); j >= 1; --j) {
    const std::size_t stride = std::size_t{1} << (j - 1);
    prev.assign(n, 0.0);
    detail::atrous_synthesis_add(approx, lo, stride, prev);
    detail::atrous_synthesis_add(dec.details[static_cast<std::size_t>(j - 1)], hi, stride, prev);
    for (double& v : prev) v *= 0.5;
    approx.swap(prev);
  }
  approx.resize(dec.original_len);
  return SampledSignal(std::move(approx), dec.sample_rate);
}

struct SwtOptions {
  int levels = 6;
  Wavelet wavelet = Wavelet::Db4;
  ThresholdMode mode = ThresholdMode::Soft;
  double multiplier = 1.0;
};

inline std::vector<double> swt_denoise(std::span<const double> x, const SwtOptions& opt = {}) {
  auto dec = threshold_coeffs(swt_decompose(x, opt.levels, opt.wavelet), opt.mode, opt.multiplier);
  return iswt_reconstruct(dec).values();
}

}  // namespace eogden
