#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <exception>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "eogden/emd.hpp"
#include "eogden/error.hpp"
#include "eogden/fir.hpp"
#include "eogden/fmh.hpp"
#include "eogden/io.hpp"
#include "eogden/signal.hpp"
#include "eogden/snr.hpp"
#include "eogden/swt.hpp"
#include "eogden/synth.hpp"

namespace eogden {

inline constexpr std::string_view kVersion = "1.0.0";

enum class Method { Fir, Emd, Swt, Fmh };

inline constexpr std::array<Method, 4> kAllMethods = {Method::Fir, Method::Emd, Method::Swt, Method::Fmh};

constexpr std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::Fir: return "fir";
    case Method::Emd: return "emd";
    case Method::Swt: return "swt";
    case Method::Fmh: return "fmh";
  }
  return "unknown";
}

constexpr std::string_view display_name(Method m) noexcept {
  switch (m) {
    case Method::Fir: return "Band Pass FIR";
    case Method::Emd: return "EMD";
    case Method::Swt: return "SWT";
    case Method::Fmh: return "FIR Median Hybrid Filter";
  }
  return "unknown";
}

inline std::optional<Method> parse_method(std::string_view name) {
  for (Method m : kAllMethods) {
    if (name == to_string(m)) return m;
  }
  return std::nullopt;
}

struct MethodParams {
  int fir_order = 10;
  double fir_low = 0.02;
  double fir_high = 0.5;
  EmdOptions emd;
  std::vector<std::size_t> emd_keep = imf_range(2, 9);
  SwtOptions swt;
  FmhConfig fmh;

  std::vector<std::pair<std::string, std::string>> describe(Method m) const {
    auto num = [](double v) {
      std::ostringstream os;
      os << v;
      return os.str();
    };
    switch (m) {
      case Method::Fir:
        return {{"order", std::to_string(fir_order)}, {"band", num(fir_low) + "," + num(fir_high)}};
      case Method::Emd: {
        std::string keep;
        for (std::size_t k : emd_keep) keep += (keep.empty() ? "" : ",") + std::to_string(k);
        return {{"keep", keep},
                {"max_imfs", std::to_string(emd.max_imfs)},
                {"sd_threshold", num(emd.sd_threshold)},
                {"max_sift_iters", std::to_string(emd.max_sift_iters)}};
      }
      case Method::Swt:
        return {{"wavelet", std::string(to_string(swt.wavelet))},
                {"levels", std::to_string(swt.levels)},
                {"mode", std::string(to_string(swt.mode))},
                {"multiplier", num(swt.multiplier)}};
      case Method::Fmh:
        return {{"L", std::to_string(fmh.half_len)}};
    }
    return {};
  }
};

// One configured denoising method, applied to mean-removed windows.
class Denoiser {
 public:
  Denoiser(Method method, MethodParams params) : method_(method), params_(std::move(params)) {
    if (method_ == Method::Fir) fir_ = design_firls(params_.fir_order, params_.fir_low, params_.fir_high);
    if (method_ == Method::Fmh) params_.fmh.validate();
  }

  Method method() const noexcept { return method_; }
  const MethodParams& params() const noexcept { return params_; }

  std::vector<double> operator()(std::span<const double> window) const {
    switch (method_) {
      case Method::Fir: return convolve(window, fir_.taps);
      case Method::Emd: return reconstruct(decompose(window, params_.emd), params_.emd_keep).values();
      case Method::Swt: return swt_denoise(window, params_.swt);
      case Method::Fmh: return fmh_filter(window, params_.fmh);
    }
    throw Error(ErrorKind::Parameter, "unknown method");
  }

  // Delay to remove after reassembly (FIR group delay only).
  int delay_order() const noexcept { return method_ == Method::Fir ? fir_.order : 0; }

 private:
  Method method_;
  MethodParams params_;
  FirCoefficients fir_;
};

struct WindowStats {
  std::size_t windows = 0;
  std::size_t failed = 0;
  double filter_ms = 0.0;  // wall clock spent inside the filter calls only

  double ms_per_window() const { return windows == 0 ? 0.0 : filter_ms / static_cast<double>(windows); }
};

// window -> mean-remove -> filter -> reassemble -> delay-compensate. A window
// the filter rejects is passed through mean-removed and counted as failed.
inline SampledSignal denoise_signal(const Denoiser& denoiser, const SampledSignal& noisy, const WindowPlan& plan,
                                    WindowStats* stats = nullptr) {
  WindowStats local;
  auto out = process_windowed(noisy.samples(), plan, [&](std::vector<double> w, IndexRange) {
    ++local.windows;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      auto y = denoiser(w);
      local.filter_ms += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      return y;
    } catch (const Error&) {
      local.filter_ms += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      ++local.failed;
      return w;
    }
  });
  if (denoiser.delay_order() > 0) out = compensate_delay(out, denoiser.delay_order());
  if (stats != nullptr) *stats = local;
  return noisy.with_samples(std::move(out));
}

struct SynthSpec {
  EogSceneConfig scene = [] {
    EogSceneConfig s;
    s.target_snr_db = 10.0;
    return s;
  }();
  std::size_t n_signals = kDefaultCorpusSize;
};

struct RunConfig {
  std::optional<std::filesystem::path> input_path;      // otherwise synthesise
  std::optional<std::filesystem::path> reference_path;  // clean companion of input_path
  std::optional<double> input_fs;
  SynthSpec synth;
  std::vector<Method> methods{kAllMethods.begin(), kAllMethods.end()};
  MethodParams params;
  WindowPlan window;
  SnrMode snr_mode = SnrMode::TrueNoise;
  std::size_t embed_m = kDefaultEmbedding;
  std::size_t workers = 0;  // 0 = hardware concurrency
  bool measure_timing = true;

  void validate() const {
    if (methods.empty()) throw Error(ErrorKind::Parameter, "at least one method must be selected");
    window.validate();
    if (embed_m == 0) throw Error(ErrorKind::Parameter, "embedding dimension must be positive");
    if (input_path && !std::filesystem::exists(*input_path)) {
      throw Error(ErrorKind::Io, "input file not found: " + input_path->string());
    }
    if (reference_path && !std::filesystem::exists(*reference_path)) {
      throw Error(ErrorKind::Io, "reference file not found: " + reference_path->string());
    }
    if (input_path && !reference_path && snr_mode == SnrMode::TrueNoise) {
      throw Error(ErrorKind::Parameter, "true-noise scoring of a recording needs a clean reference");
    }
  }

  std::size_t resolved_workers() const {
    if (workers > 0) return workers;
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
  }
};

struct Recording {
  SampledSignal noisy;
  std::optional<SampledSignal> clean;
};

struct MethodRow {
  Method method = Method::Fir;
  std::optional<double> snr_db_mean;
  std::optional<double> snr_db_std;
  double runtime_ms_mean = 0.0;
  std::size_t n_signals = 0;
  std::size_t n_scored = 0;
  std::size_t n_snr_failures = 0;
  std::size_t n_windows = 0;
  std::size_t n_failed_windows = 0;
  std::vector<SnrReport> per_signal;
};

struct BaselineRow {
  std::optional<double> snr_db_mean;
  std::optional<double> snr_db_std;
  std::size_t n_scored = 0;
};

struct BenchmarkReport {
  std::vector<MethodRow> rows;
  BaselineRow baseline;
  std::string corpus;
  std::string version{kVersion};
  SnrMode mode = SnrMode::TrueNoise;
  std::size_t window_len = 256;
  bool timing_measured = true;
  std::vector<std::pair<std::string, std::string>> config;

  // No row without a single scored signal.
  bool has_global_failure() const {
    return std::any_of(rows.begin(), rows.end(), [](const MethodRow& r) { return !r.snr_db_mean; });
  }

  // Methods sorted by mean SNR, best first; unscored methods last.
  std::vector<Method> ranking() const {
    std::vector<const MethodRow*> sorted;
    for (const auto& r : rows) sorted.push_back(&r);
    std::stable_sort(sorted.begin(), sorted.end(), [](const MethodRow* a, const MethodRow* b) {
      const double sa = a->snr_db_mean.value_or(-INFINITY), sb = b->snr_db_mean.value_or(-INFINITY);
      return sa > sb;
    });
    std::vector<Method> out;
    for (const auto* r : sorted) out.push_back(r->method);
    return out;
  }
};

// Ordering of the four methods reported for the original recordings.
inline constexpr std::array<Method, 4> kReferenceRanking = {Method::Emd, Method::Fmh, Method::Swt, Method::Fir};

inline std::string describe_timing_scope(std::size_t window_len) {
  return "mean filtering wall-clock per " + std::to_string(window_len) +
         "-sample window, single-threaded, after one discarded warm-up pass";
}

namespace detail {

inline void mean_std(const std::vector<double>& v, std::optional<double>& mean, std::optional<double>& sd) {
  if (v.empty()) return;
  double m = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  mean = m;
  sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
}

// Runs fn(i) for i in [0, count) on `workers` threads; results must be written
// to per-index slots so the outcome is independent of scheduling.
template <class Fn>
void parallel_for(std::size_t count, std::size_t workers, Fn&& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < count; i = next++) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
        next = count;
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace detail

struct ScoredSignal {
  SampledSignal stationary;                 // windowed mean removal of the noisy input
  std::optional<SampledSignal> reference;   // same preprocessing applied to the clean signal
};

inline ScoredSignal prepare_for_scoring(const Recording& rec, const WindowPlan& plan) {
  ScoredSignal s{rec.noisy.with_samples(windowed_mean_removal(rec.noisy.samples(), plan)), std::nullopt};
  if (rec.clean) s.reference = rec.clean->with_samples(windowed_mean_removal(rec.clean->samples(), plan));
  return s;
}

// Denoise and score every recording with every selected method. SNR values
// depend only on (config, data); timings come from a separate single-threaded
// pass.
inline BenchmarkReport run_benchmark(const std::vector<Recording>& recordings, const RunConfig& cfg,
                                     std::string corpus_descriptor) {
  cfg.validate();
  if (recordings.empty()) throw Error(ErrorKind::EmptyInput, "no recordings to benchmark");
  const bool use_truth = cfg.snr_mode == SnrMode::TrueNoise;
  for (const auto& r : recordings) {
    if (use_truth && !r.clean) throw Error(ErrorKind::Parameter, "true-noise mode requires clean references");
  }

  std::vector<Denoiser> denoisers;
  for (Method m : cfg.methods) denoisers.emplace_back(m, cfg.params);

  const std::size_t n = recordings.size();
  std::vector<std::vector<SnrReport>> reports(denoisers.size(), std::vector<SnrReport>(n));
  std::vector<std::vector<WindowStats>> stats(denoisers.size(), std::vector<WindowStats>(n));
  std::vector<SnrReport> baseline(n);

  detail::parallel_for(n, cfg.resolved_workers(), [&](std::size_t i) {
    const ScoredSignal prep = prepare_for_scoring(recordings[i], cfg.window);
    const SampledSignal* clean = use_truth ? &*prep.reference : nullptr;
    baseline[i] = evaluate_method(prep.stationary, prep.stationary, clean, cfg.embed_m);
    for (std::size_t d = 0; d < denoisers.size(); ++d) {
      const SampledSignal out = denoise_signal(denoisers[d], recordings[i].noisy, cfg.window, &stats[d][i]);
      SnrReport rep = evaluate_method(prep.stationary, out, clean, cfg.embed_m);
      rep.method = std::string(to_string(denoisers[d].method()));
      for (auto& [k, v] : cfg.params.describe(denoisers[d].method())) rep.params[k] = v;
      reports[d][i] = std::move(rep);
    }
  });

  if (cfg.measure_timing) {
    for (std::size_t d = 0; d < denoisers.size(); ++d) {
      denoise_signal(denoisers[d], recordings.front().noisy, cfg.window);  // warm-up, discarded
      for (std::size_t i = 0; i < n; ++i) {
        WindowStats ws;
        denoise_signal(denoisers[d], recordings[i].noisy, cfg.window, &ws);
        reports[d][i].runtime_ms = ws.ms_per_window();
      }
    }
  }

  BenchmarkReport report;
  report.corpus = std::move(corpus_descriptor);
  report.mode = cfg.snr_mode;
  report.window_len = cfg.window.window_len;
  report.timing_measured = cfg.measure_timing;
  for (std::size_t d = 0; d < denoisers.size(); ++d) {
    MethodRow row;
    row.method = denoisers[d].method();
    row.n_signals = n;
    std::vector<double> snrs;
    double runtime = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& rep = reports[d][i];
      if (rep.snr_db) {
        snrs.push_back(*rep.snr_db);
      } else {
        ++row.n_snr_failures;
      }
      runtime += rep.runtime_ms;
      row.n_windows += stats[d][i].windows;
      row.n_failed_windows += stats[d][i].failed;
    }
    row.n_scored = snrs.size();
    detail::mean_std(snrs, row.snr_db_mean, row.snr_db_std);
    row.runtime_ms_mean = runtime / static_cast<double>(n);
    row.per_signal = std::move(reports[d]);
    report.rows.push_back(std::move(row));
  }
  std::vector<double> base;
  for (const auto& b : baseline) {
    if (b.snr_db) base.push_back(*b.snr_db);
  }
  report.baseline.n_scored = base.size();
  detail::mean_std(base, report.baseline.snr_db_mean, report.baseline.snr_db_std);
  return report;
}

inline std::vector<std::pair<std::string, std::string>> describe_config(const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string methods;
  for (Method m : cfg.methods) methods += (methods.empty() ? "" : ",") + std::string(to_string(m));
  std::ostringstream overlap;
  overlap << cfg.window.overlap_fraction;
  out.emplace_back("methods", methods);
  out.emplace_back("window", std::to_string(cfg.window.window_len));
  out.emplace_back("overlap", overlap.str());
  out.emplace_back("snr_mode", std::string(to_string(cfg.snr_mode)));
  out.emplace_back("embed_m", std::to_string(cfg.embed_m));
  for (Method m : cfg.methods) {
    for (auto& [k, v] : cfg.params.describe(m)) out.emplace_back(std::string(to_string(m)) + "." + k, v);
  }
  if (!cfg.input_path) {
    std::ostringstream os;
    os << cfg.synth.scene.seed;
    out.emplace_back("seed", os.str());
  }
  return out;
}

// Recordings named by the config: a CSV file (plus optional clean reference)
// or a synthetic corpus.
inline std::vector<Recording> load_recordings(const RunConfig& cfg, std::string* descriptor = nullptr) {
  std::vector<Recording> recs;
  if (cfg.input_path) {
    Recording r{read_signal_csv(*cfg.input_path, cfg.input_fs), std::nullopt};
    if (cfg.reference_path) {
      r.clean = read_signal_csv(*cfg.reference_path, cfg.input_fs);
      if (r.clean->size() != r.noisy.size()) throw Error(ErrorKind::Shape, "reference and input lengths differ");
    }
    if (descriptor != nullptr) {
      *descriptor = "file " + cfg.input_path->filename().string() + " (" + std::to_string(r.noisy.size()) +
                    " samples at " + format_double(r.noisy.sample_rate()) + " Hz)";
    }
    recs.push_back(std::move(r));
    return recs;
  }
  for (auto& pair : gen_corpus(cfg.synth.n_signals, cfg.synth.scene)) {
    recs.push_back({std::move(pair.noisy), std::move(pair.clean)});
  }
  if (descriptor != nullptr) {
    const auto& sc = cfg.synth.scene;
    std::ostringstream os;
    os << "synthetic EOG corpus: " << cfg.synth.n_signals << " signals x " << sc.duration_s << " s at "
       << sc.sample_rate << " Hz, ";
    if (sc.target_snr_db) {
      os << "input SNR " << *sc.target_snr_db << " dB";
    } else {
      os << "noise sigma " << sc.noise_sigma_uv << " uV";
    }
    os << ", seed " << sc.seed;
    *descriptor = os.str();
  }
  return recs;
}

inline BenchmarkReport run_pipeline(const RunConfig& cfg) {
  cfg.validate();
  std::string descriptor;
  auto recs = load_recordings(cfg, &descriptor);
  auto report = run_benchmark(recs, cfg, std::move(descriptor));
  report.config = describe_config(cfg);
  return report;
}

}  // namespace eogden
