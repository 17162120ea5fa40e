#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "eogden/error.hpp"
#include "eogden/signal.hpp"

namespace eogden {

// Seeded generator with a fully specified output sequence: std::mt19937_64
// for raw bits, 53-bit uniform doubles and Box-Muller normals computed here
// (the standard distributions are implementation-defined).
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    if (spare_) {
      const double v = *spare_;
      spare_.reset();
      return v;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    return r * std::cos(theta);
  }

  double exponential(double rate) { return -std::log(1.0 - uniform()) / rate; }

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

// SplitMix64 finaliser; derives independent stream seeds from (seed, index, tag).
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index, std::uint64_t tag) noexcept {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1) + 0xD1B54A32D192ED03ull * (tag + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

struct AmplitudeRange {
  double lo = 0.0;
  double hi = 0.0;
};

inline constexpr double kEogAmplitudeLimitUv = 3500.0;

struct EogSceneConfig {
  double duration_s = 10.0;
  double sample_rate = kDefaultSampleRate;
  double saccade_rate = 2.0;                       // events per second
  AmplitudeRange saccade_amplitude_uv{100.0, 400.0};
  AmplitudeRange saccade_transition_s{0.020, 0.060};  // 10-90 % rise time
  double max_gaze_uv = 600.0;                      // gaze potential stays within +-this
  double blink_rate = 12.0;                        // events per minute
  AmplitudeRange blink_amplitude_uv{150.0, 350.0};
  AmplitudeRange blink_duration_s{0.200, 0.400};
  double drift_amplitude_uv = 20.0;
  double drift_max_hz = 0.5;
  double noise_sigma_uv = 0.0;
  std::optional<double> target_snr_db;  // overrides noise_sigma_uv when set
  std::uint64_t seed = 1;

  void validate() const {
    if (!(duration_s > 0.0)) throw Error(ErrorKind::Parameter, "duration must be positive");
    if (!(sample_rate > 0.0)) throw Error(ErrorKind::Parameter, "sample rate must be positive");
    for (double v : {saccade_rate, blink_rate, drift_amplitude_uv, noise_sigma_uv, max_gaze_uv,
                     saccade_amplitude_uv.lo, blink_amplitude_uv.lo}) {
      if (v < 0.0) throw Error(ErrorKind::Parameter, "rates and amplitudes must be non-negative");
    }
    if (saccade_amplitude_uv.hi < saccade_amplitude_uv.lo || blink_amplitude_uv.hi < blink_amplitude_uv.lo ||
        saccade_transition_s.lo <= 0.0 || saccade_transition_s.hi < saccade_transition_s.lo ||
        blink_duration_s.lo <= 0.0 || blink_duration_s.hi < blink_duration_s.lo) {
      throw Error(ErrorKind::Parameter, "invalid range in scene configuration");
    }
  }

  std::size_t sample_count() const {
    return static_cast<std::size_t>(std::llround(duration_s * sample_rate));
  }
};

struct CleanEog {
  SampledSignal signal;
  std::vector<double> saccade_onsets_s;
  std::vector<double> blink_onsets_s;
};

namespace detail {

inline std::vector<double> poisson_onsets(PortableRng& rng, double rate_per_s, double duration_s) {
  std::vector<double> t;
  if (rate_per_s <= 0.0) return t;
  for (double now = rng.exponential(rate_per_s); now < duration_s; now += rng.exponential(rate_per_s)) {
    t.push_back(now);
  }
  return t;
}

}  // namespace detail

// Saccades are logistic steps of the gaze potential, blinks raised-cosine
// bumps, drift a single slow sinusoid. Event times are Poisson.
inline CleanEog gen_clean_eog_with_events(const EogSceneConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.sample_count();
  const double fs = cfg.sample_rate;
  PortableRng rng(mix_seed(cfg.seed, 0, 0));
  std::vector<double> y(n, 0.0);
  CleanEog out;

  out.saccade_onsets_s = detail::poisson_onsets(rng, cfg.saccade_rate, cfg.duration_s);
  double level = 0.0;
  for (double t0 : out.saccade_onsets_s) {
    double step = rng.uniform(cfg.saccade_amplitude_uv.lo, cfg.saccade_amplitude_uv.hi);
    if (rng.uniform() < 0.5) step = -step;
    if (std::abs(level + step) > cfg.max_gaze_uv) step = -step;
    level += step;
    // 10-90 % rise of a logistic with scale tau is 2 ln 9 tau.
    const double tau = rng.uniform(cfg.saccade_transition_s.lo, cfg.saccade_transition_s.hi) / (2.0 * std::log(9.0));
    for (std::size_t i = 0; i < n; ++i) {
      const double z = (static_cast<double>(i) / fs - t0) / tau;
      y[i] += step * 0.5 * (1.0 + std::tanh(0.5 * z));
    }
  }

  out.blink_onsets_s = detail::poisson_onsets(rng, cfg.blink_rate / 60.0, cfg.duration_s);
  for (double t0 : out.blink_onsets_s) {
    const double amp = rng.uniform(cfg.blink_amplitude_uv.lo, cfg.blink_amplitude_uv.hi);
    const double dur = rng.uniform(cfg.blink_duration_s.lo, cfg.blink_duration_s.hi);
    const auto first = static_cast<std::size_t>(std::ceil(t0 * fs));
    for (std::size_t i = first; i < n; ++i) {
      const double u = (static_cast<double>(i) / fs - t0) / dur;
      if (u >= 1.0) break;
      y[i] += amp * 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * u));
    }
  }

  if (cfg.drift_amplitude_uv > 0.0) {
    const double f = rng.uniform(0.05, cfg.drift_max_hz);
    const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] += cfg.drift_amplitude_uv * std::sin(2.0 * std::numbers::pi * f * static_cast<double>(i) / fs + phase);
    }
  }

  for (double& v : y) v = std::clamp(v, -kEogAmplitudeLimitUv, kEogAmplitudeLimitUv);
  out.signal = SampledSignal(std::move(y), fs);
  return out;
}

inline SampledSignal gen_clean_eog(const EogSceneConfig& cfg) { return gen_clean_eog_with_events(cfg).signal; }

// clean + N(0, sigma^2) i.i.d. draws.
inline SampledSignal add_white_noise(const SampledSignal& clean, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw Error(ErrorKind::Parameter, "noise sigma must be non-negative");
  std::vector<double> out = clean.values();
  if (sigma == 0.0) return clean;
  PortableRng rng(mix_seed(seed, 0, 1));
  for (double& v : out) v += sigma * rng.normal();
  return clean.with_samples(std::move(out));
}

// Variance about the mean; the "sample power" used for SNR targets.
inline double sample_power(std::span<const double> x) {
  const double mu = mean_of(x);
  double acc = 0.0;
  for (double v : x) acc += (v - mu) * (v - mu);
  return acc / static_cast<double>(x.size());
}

// 10 log10(P_clean / P_noise) with noise = noisy - clean.
inline double sample_power_snr_db(const SampledSignal& clean, const SampledSignal& noisy) {
  if (clean.size() != noisy.size()) throw Error(ErrorKind::Shape, "clean and noisy lengths differ");
  std::vector<double> noise(clean.size());
  for (std::size_t i = 0; i < noise.size(); ++i) noise[i] = noisy[i] - clean[i];
  return 10.0 * std::log10(sample_power(clean.samples()) / sample_power(noise));
}

inline double sigma_for_snr(const SampledSignal& clean, double snr_db) {
  return std::sqrt(sample_power(clean.samples()) / std::pow(10.0, snr_db / 10.0));
}

struct CorpusPair {
  SampledSignal clean;
  SampledSignal noisy;
  std::uint64_t seed = 0;
  double noise_sigma_uv = 0.0;
};

inline constexpr std::size_t kDefaultCorpusSize = 20;

// Signal i draws its scene from mix_seed(base, i, 2) and its noise from
// mix_seed(base, i, 3), where base is the template seed.
inline std::vector<CorpusPair> gen_corpus(std::size_t n_signals, const EogSceneConfig& tmpl) {
  if (n_signals == 0) throw Error(ErrorKind::Parameter, "corpus needs at least one signal");
  tmpl.validate();
  std::vector<CorpusPair> corpus;
  corpus.reserve(n_signals);
  for (std::size_t i = 0; i < n_signals; ++i) {
    EogSceneConfig cfg = tmpl;
    cfg.seed = mix_seed(tmpl.seed, i, 2);
    CorpusPair pair;
    pair.seed = cfg.seed;
    pair.clean = gen_clean_eog(cfg);
    pair.noise_sigma_uv = cfg.target_snr_db ? sigma_for_snr(pair.clean, *cfg.target_snr_db) : cfg.noise_sigma_uv;
    pair.noisy = add_white_noise(pair.clean, pair.noise_sigma_uv, mix_seed(tmpl.seed, i, 3));
    corpus.push_back(std::move(pair));
  }
  return corpus;
}

}  // namespace eogden
