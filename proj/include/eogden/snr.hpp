#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "eogden/error.hpp"
#include "eogden/signal.hpp"

namespace eogden {

inline constexpr std::size_t kDefaultEmbedding = 32;

// eta(n) = y(n) - y_hat(n)
inline SampledSignal residual_noise(const SampledSignal& reference, const SampledSignal& estimate) {
  if (reference.size() != estimate.size()) {
    throw Error(ErrorKind::Shape, "reference has " + std::to_string(reference.size()) + " samples, estimate has " +
                                      std::to_string(estimate.size()));
  }
  if (reference.sample_rate() != estimate.sample_rate()) {
    throw Error(ErrorKind::Shape, "reference and estimate sample rates differ");
  }
  std::vector<double> out(reference.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = reference[i] - estimate[i];
  return reference.with_samples(std::move(out));
}

// C = X^T X / K for the K x m trajectory (Hankel) matrix whose row k is
// x[k .. k+m-1]. Built in O(n m + m^2): the first row by direct dot products,
// every further diagonal entry from its upper-left neighbour by dropping the
// leading product and adding the trailing one.
inline Eigen::MatrixXd covariance_matrix(std::span<const double> x, std::size_t m = kDefaultEmbedding) {
  if (m == 0) throw Error(ErrorKind::Parameter, "embedding dimension must be positive");
  if (x.size() < m) {
    throw Error(ErrorKind::TooShort, "signal of length " + std::to_string(x.size()) + " shorter than embedding " +
                                         std::to_string(m));
  }
  const std::size_t rows = x.size() - m + 1;
  Eigen::MatrixXd sums(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    double acc = 0.0;
    for (std::size_t k = 0; k < rows; ++k) acc += x[k] * x[k + j];
    sums(0, static_cast<Eigen::Index>(j)) = acc;
  }
  for (std::size_t i = 1; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      const auto r = static_cast<Eigen::Index>(i), c = static_cast<Eigen::Index>(j);
      sums(r, c) = sums(r - 1, c - 1) - x[i - 1] * x[j - 1] + x[rows + i - 1] * x[rows + j - 1];
    }
  }
  const double inv = 1.0 / static_cast<double>(rows);
  for (Eigen::Index i = 0; i < sums.rows(); ++i) {
    sums(i, i) *= inv;
    for (Eigen::Index j = i + 1; j < sums.cols(); ++j) {
      sums(i, j) *= inv;
      sums(j, i) = sums(i, j);
    }
  }
  return sums;
}

inline Eigen::MatrixXd covariance_matrix(const SampledSignal& s, std::size_t m = kDefaultEmbedding) {
  return covariance_matrix(s.samples(), m);
}

// Largest eigenvalue of a symmetric matrix. Asymmetry beyond
// 1e-9 * max(1, max|C|) is rejected.
inline double max_eigenvalue(const Eigen::MatrixXd& c) {
  if (c.rows() == 0) throw Error(ErrorKind::EmptyInput, "empty matrix");
  if (c.rows() != c.cols()) throw Error(ErrorKind::Shape, "matrix is not square");
  if (!c.allFinite()) throw Error(ErrorKind::Parameter, "matrix has non-finite entries");
  const double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
  if ((c - c.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw Error(ErrorKind::Shape, "matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(c, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::Parameter, "eigenvalue iteration did not converge");
  return solver.eigenvalues().maxCoeff();
}

// S = 10 log10((lambda_s - lambda_n) / lambda_n) with lambda the dominant
// eigenvalue of each mean-removed trajectory covariance.
inline double snr_db(std::span<const double> signal, std::span<const double> noise, std::size_t m = kDefaultEmbedding) {
  const double ls = max_eigenvalue(covariance_matrix(remove_mean(signal), m));
  const double ln = max_eigenvalue(covariance_matrix(remove_mean(noise), m));
  if (!(ln > 0.0)) throw Error(ErrorKind::ZeroNoise, "noise covariance vanishes; SNR is unbounded");
  if (!(ls > ln)) throw Error(ErrorKind::SignalWeakerThanNoise, "signal weaker than noise");
  return 10.0 * std::log10((ls - ln) / ln);
}

inline double snr_db(const SampledSignal& signal, const SampledSignal& noise, std::size_t m = kDefaultEmbedding) {
  return snr_db(signal.samples(), noise.samples(), m);
}

enum class SnrMode { TrueNoise, ResidualProxy };

constexpr std::string_view to_string(SnrMode m) noexcept {
  return m == SnrMode::TrueNoise ? "true-noise" : "residual-proxy";
}

enum class SnrOutcome { Ok, PerfectReconstruction, SignalWeakerThanNoise };

constexpr std::string_view to_string(SnrOutcome o) noexcept {
  switch (o) {
    case SnrOutcome::Ok: return "ok";
    case SnrOutcome::PerfectReconstruction: return "perfect-reconstruction";
    case SnrOutcome::SignalWeakerThanNoise: return "signal-weaker-than-noise";
  }
  return "unknown";
}

struct SnrReport {
  std::string method;
  std::optional<double> snr_db;  // empty unless outcome == Ok
  double runtime_ms = 0.0;
  SnrMode mode = SnrMode::TrueNoise;
  SnrOutcome outcome = SnrOutcome::Ok;
  std::map<std::string, std::string> params;
};

// True-noise mode when the clean reference is supplied (noise = clean -
// denoised, signal = clean); residual-proxy otherwise (noise = noisy -
// denoised, signal = denoised). Degenerate estimator outcomes are reported,
// not thrown. Runtime is filled in by the caller.
inline SnrReport evaluate_method(const SampledSignal& noisy, const SampledSignal& denoised, const SampledSignal* clean,
                                 std::size_t m = kDefaultEmbedding) {
  if (noisy.size() != denoised.size() || (clean != nullptr && clean->size() != noisy.size())) {
    throw Error(ErrorKind::Shape, "evaluation inputs differ in length");
  }
  SnrReport report;
  report.mode = clean != nullptr ? SnrMode::TrueNoise : SnrMode::ResidualProxy;
  const SampledSignal& signal = clean != nullptr ? *clean : denoised;
  const SampledSignal noise = residual_noise(clean != nullptr ? *clean : noisy, denoised);
  try {
    report.snr_db = snr_db(signal, noise, m);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ZeroNoise) {
      report.outcome = SnrOutcome::PerfectReconstruction;
    } else if (e.kind() == ErrorKind::SignalWeakerThanNoise) {
      report.outcome = SnrOutcome::SignalWeakerThanNoise;
    } else {
      throw;
    }
  }
  return report;
}

}  // namespace eogden
