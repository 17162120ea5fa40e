#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eogden/error.hpp"
#include "eogden/signal.hpp"

namespace eogden {

// Width of the don't-care region centred on each band edge (Nyquist-normalised).
inline constexpr double kFirTransitionWidth = 0.01;

struct FirCoefficients {
  std::vector<double> taps;
  int order = 0;
  double low = 0.0;
  double high = 0.0;

  static FirCoefficients from_taps(std::vector<double> taps) {
    if (taps.empty()) throw Error(ErrorKind::EmptyInput, "filter needs at least one tap");
    const int order = static_cast<int>(taps.size()) - 1;
    return {std::move(taps), order, 0.0, 0.0};
  }
};

namespace detail {

// Integral of cos(pi n f) over [a, b].
inline double cos_integral(int n, double a, double b) {
  if (n == 0) return b - a;
  const double w = std::numbers::pi * n;
  return (std::sin(w * b) - std::sin(w * a)) / w;
}

}  // namespace detail

// Least-squares linear-phase (type I) bandpass. Band edges are fractions of
// Nyquist. The amplitude response A(f) = sum_k b_k cos(pi k f) minimises the
// unweighted squared error against 0 / 1 / 0 over the stopband, passband and
// stopband, with a don't-care gap of kFirTransitionWidth centred on each edge.
// No taper is applied to the solution.
inline FirCoefficients design_firls(int order, double low, double high) {
  if (order < 2 || order % 2 != 0) {
    throw Error(ErrorKind::UnsupportedOrder, "order must be even and >= 2, got " + std::to_string(order));
  }
  if (!(low > 0.0 && low < high && high < 1.0)) {
    throw Error(ErrorKind::Band, "band edges must satisfy 0 < low < high < 1");
  }
  const double half = kFirTransitionWidth / 2.0;
  if (high - low <= kFirTransitionWidth) {
    throw Error(ErrorKind::Band, "passband narrower than the transition regions");
  }

  struct Band {
    double from, to, desired;
  };
  std::vector<Band> bands;
  if (low - half > 0.0) bands.push_back({0.0, low - half, 0.0});
  bands.push_back({low + half, high - half, 1.0});
  if (high + half < 1.0) bands.push_back({high + half, 1.0, 0.0});

  const int m = order / 2;
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(m + 1, m + 1);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
  for (const Band& b : bands) {
    for (int k = 0; k <= m; ++k) {
      for (int l = 0; l <= m; ++l) {
        gram(k, l) += 0.5 * (detail::cos_integral(k - l, b.from, b.to) + detail::cos_integral(k + l, b.from, b.to));
      }
      rhs(k) += b.desired * detail::cos_integral(k, b.from, b.to);
    }
  }
  const Eigen::VectorXd coef = gram.ldlt().solve(rhs);

  FirCoefficients fir;
  fir.order = order;
  fir.low = low;
  fir.high = high;
  fir.taps.assign(static_cast<std::size_t>(order) + 1, 0.0);
  fir.taps[m] = coef(0);
  for (int k = 1; k <= m; ++k) {
    fir.taps[m - k] = coef(k) / 2.0;
    fir.taps[m + k] = coef(k) / 2.0;
  }
  return fir;
}

// Causal direct-form convolution, zero initial conditions, output trimmed to
// the input length.
inline std::vector<double> convolve(std::span<const double> x, std::span<const double> h) {
  if (x.empty()) throw Error(ErrorKind::EmptyInput, "convolution input is empty");
  if (h.empty()) throw Error(ErrorKind::EmptyInput, "convolution kernel is empty");
  std::vector<double> y(x.size(), 0.0);
  for (std::size_t n = 0; n < x.size(); ++n) {
    const std::size_t kmax = std::min(h.size() - 1, n);
    double acc = 0.0;
    for (std::size_t k = 0; k <= kmax; ++k) acc += h[k] * x[n - k];
    y[n] = acc;
  }
  return y;
}

inline SampledSignal convolve(const SampledSignal& signal, const FirCoefficients& h) {
  return signal.with_samples(convolve(signal.samples(), h.taps));
}

// Undo the order/2 group delay of a linear-phase filter: shift left, hold the
// last sample over the vacated tail.
inline std::vector<double> compensate_delay(std::span<const double> x, int order) {
  if (order < 0) throw Error(ErrorKind::Parameter, "order must be non-negative");
  const auto shift = static_cast<std::size_t>(order / 2);
  if (x.size() <= shift) {
    throw Error(ErrorKind::Shape, "signal of length " + std::to_string(x.size()) + " too short to remove a delay of " +
                                      std::to_string(shift));
  }
  std::vector<double> y(x.size(), x.back());
  std::copy(x.begin() + static_cast<std::ptrdiff_t>(shift), x.end(), y.begin());
  return y;
}

inline SampledSignal compensate_delay(const SampledSignal& signal, int order) {
  return signal.with_samples(compensate_delay(signal.samples(), order));
}

}  // namespace eogden
