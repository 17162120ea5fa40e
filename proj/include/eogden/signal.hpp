#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eogden/error.hpp"

namespace eogden {

inline constexpr double kDefaultSampleRate = 256.0;

// Uniformly sampled real-valued sequence (amplitudes in microvolts).
// Construction validates that every sample is finite and the rate positive,
// so any SampledSignal that exists is usable by every filter.
class SampledSignal {
 public:
  SampledSignal() = default;

  explicit SampledSignal(std::vector<double> samples, double sample_rate = kDefaultSampleRate)
      : samples_(std::move(samples)), sample_rate_(sample_rate) {
    if (!(sample_rate_ > 0.0) || !std::isfinite(sample_rate_)) {
      throw Error(ErrorKind::InvalidSignal, "sample rate must be a positive finite number");
    }
    for (std::size_t i = 0; i < samples_.size(); ++i) {
      if (!std::isfinite(samples_[i])) {
        throw Error(ErrorKind::InvalidSignal, "non-finite sample at index " + std::to_string(i));
      }
    }
  }

  std::span<const double> samples() const noexcept { return samples_; }
  const std::vector<double>& values() const noexcept { return samples_; }
  double sample_rate() const noexcept { return sample_rate_; }
  std::size_t size() const noexcept { return samples_.size(); }
  bool empty() const noexcept { return samples_.empty(); }
  double operator[](std::size_t i) const { return samples_[i]; }

  // Same rate, new samples.
  SampledSignal with_samples(std::vector<double> samples) const {
    return SampledSignal(std::move(samples), sample_rate_);
  }

  friend bool operator==(const SampledSignal&, const SampledSignal&) = default;

 private:
  std::vector<double> samples_;
  double sample_rate_ = kDefaultSampleRate;
};

// Half-open sample interval [start, end).
struct IndexRange {
  std::size_t start = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - start; }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

struct WindowPlan {
  std::size_t window_len = 256;
  double overlap_fraction = 0.25;

  void validate() const {
    if (window_len == 0) throw Error(ErrorKind::Parameter, "window length must be positive");
    if (!(overlap_fraction >= 0.0 && overlap_fraction < 1.0)) {
      throw Error(ErrorKind::Parameter, "overlap fraction must lie in [0, 1)");
    }
  }

  std::size_t hop() const {
    validate();
    const auto raw = std::llround(static_cast<double>(window_len) * (1.0 - overlap_fraction));
    return std::clamp<std::size_t>(static_cast<std::size_t>(std::max<long long>(raw, 1)), 1, window_len);
  }
};

// Windows start every hop samples; the last one is truncated at the signal end.
inline std::vector<IndexRange> plan_windows(std::size_t signal_len, const WindowPlan& plan) {
  if (signal_len == 0) throw Error(ErrorKind::EmptyInput, "cannot plan windows over an empty signal");
  const std::size_t hop = plan.hop();
  std::vector<IndexRange> ranges;
  for (std::size_t start = 0;; start += hop) {
    const std::size_t end = std::min(start + plan.window_len, signal_len);
    ranges.push_back({start, end});
    if (end == signal_len) break;
  }
  return ranges;
}

inline double mean_of(std::span<const double> x) {
  if (x.empty()) throw Error(ErrorKind::EmptyInput, "mean of an empty sequence");
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

// x_s(n) = x(n) - mean of the window.
inline std::vector<double> remove_mean(std::span<const double> window) {
  const double mu = mean_of(window);
  std::vector<double> out(window.size());
  std::transform(window.begin(), window.end(), out.begin(), [mu](double v) { return v - mu; });
  return out;
}

inline std::vector<double> slice(std::span<const double> x, IndexRange r) {
  return {x.begin() + static_cast<std::ptrdiff_t>(r.start), x.begin() + static_cast<std::ptrdiff_t>(r.end)};
}

// Merges processed windows back into one signal. Where two windows overlap on
// k samples the later window's weight ramps (j+1)/(k+1) for j = 0..k-1 and the
// earlier one's ramps down complementarily; samples covered by one window are
// copied. Deeper overlaps (overlap fraction above one half) are normalised by
// the total weight.
inline std::vector<double> reassemble(std::span<const std::vector<double>> windows,
                                      std::span<const IndexRange> ranges, std::size_t signal_len) {
  if (windows.size() != ranges.size()) {
    throw Error(ErrorKind::Shape, "window count " + std::to_string(windows.size()) +
                                      " does not match range count " + std::to_string(ranges.size()));
  }
  std::vector<double> acc(signal_len, 0.0);
  std::vector<double> weight(signal_len, 0.0);
  for (std::size_t w = 0; w < windows.size(); ++w) {
    const IndexRange r = ranges[w];
    if (r.end > signal_len || r.start >= r.end) throw Error(ErrorKind::Shape, "invalid window range");
    if (windows[w].size() != r.size()) {
      throw Error(ErrorKind::Shape, "window " + std::to_string(w) + " has " + std::to_string(windows[w].size()) +
                                        " samples, range expects " + std::to_string(r.size()));
    }
    if (w > 0 && ranges[w - 1].start >= r.start) throw Error(ErrorKind::Shape, "ranges must be sorted by start");

    const bool has_prev = w > 0 && ranges[w - 1].end > r.start;
    const bool has_next = w + 1 < ranges.size() && ranges[w + 1].start < r.end;
    const std::size_t head = has_prev ? std::min(ranges[w - 1].end, r.end) - r.start : 0;
    const std::size_t tail_start = has_next ? ranges[w + 1].start : r.end;
    const double tail_k = static_cast<double>(r.end - tail_start);

    for (std::size_t t = r.start; t < r.end; ++t) {
      double wt = 1.0;
      if (t - r.start < head) wt *= static_cast<double>(t - r.start + 1) / static_cast<double>(head + 1);
      if (t >= tail_start) wt *= static_cast<double>(r.end - t) / (tail_k + 1.0);
      acc[t] += wt * windows[w][t - r.start];
      weight[t] += wt;
    }
  }
  for (std::size_t t = 0; t < signal_len; ++t) {
    if (weight[t] <= 0.0) throw Error(ErrorKind::Shape, "index " + std::to_string(t) + " not covered by any window");
    acc[t] = weight[t] == 1.0 ? acc[t] : acc[t] / weight[t];
  }
  return acc;
}

// Segment, remove the per-window mean, process and reassemble. `fn` maps a
// mean-removed window to a window of the same length.
template <class WindowFn>
std::vector<double> process_windowed(std::span<const double> x, const WindowPlan& plan, WindowFn&& fn) {
  const auto ranges = plan_windows(x.size(), plan);
  std::vector<std::vector<double>> out;
  out.reserve(ranges.size());
  for (const auto& r : ranges) {
    auto processed = fn(remove_mean(slice(x, r)), r);
    if (processed.size() != r.size()) throw Error(ErrorKind::Shape, "window processor changed the window length");
    out.push_back(std::move(processed));
  }
  return reassemble(out, ranges, x.size());
}

// Windowed mean removal alone: the stationary approximation of the input.
inline std::vector<double> windowed_mean_removal(std::span<const double> x, const WindowPlan& plan) {
  return process_windowed(x, plan, [](std::vector<double> w, IndexRange) { return w; });
}

}  // namespace eogden
