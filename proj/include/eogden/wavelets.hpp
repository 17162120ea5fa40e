#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace eogden {

// Orthonormal wavelets available to the stationary transform. Daubechies
// names count vanishing moments (Db4 has 8 taps).
enum class Wavelet { Haar, Db2, Db4, Db8, Sym4 };

constexpr std::string_view to_string(Wavelet w) noexcept {
  switch (w) {
    case Wavelet::Haar: return "haar";
    case Wavelet::Db2: return "db2";
    case Wavelet::Db4: return "db4";
    case Wavelet::Db8: return "db8";
    case Wavelet::Sym4: return "sym4";
  }
  return "unknown";
}

inline std::optional<Wavelet> parse_wavelet(std::string_view name) {
  for (Wavelet w : {Wavelet::Haar, Wavelet::Db2, Wavelet::Db4, Wavelet::Db8, Wavelet::Sym4}) {
    if (name == to_string(w)) return w;
  }
  return std::nullopt;
}

namespace detail {

// Decomposition lowpass filters, sum = sqrt(2).
inline constexpr std::array<double, 2> kHaar = {0.70710678118654752440, 0.70710678118654752440};

inline constexpr std::array<double, 4> kDb2 = {
    -0.12940952255126038117, 0.22414386804201338103, 0.83651630373780790558, 0.48296291314453414337};

inline constexpr std::array<double, 8> kDb4 = {
    -0.010597401785069032105, 0.032883011666885199735, 0.030841381835560763627, -0.18703481171909308408,
    -0.027983769416859854211, 0.63088076792985890788,  0.71484657055291564709,  0.23037781330889650086};

inline constexpr std::array<double, 16> kDb8 = {
    -0.00011747678412476953373, 0.00067544940645056936637, -0.0003917403733769470463, -0.0048703529934515743104,
    0.0087460940474057767164,   0.013981027917398281649,   -0.044088253930794751507,  -0.01736930100180754617,
    0.12874742662047845886,     0.00047248457391328277036, -0.28401554296154692652,   -0.015829105256349305667,
    0.58535468365420671277,     0.67563073629728980681,    0.31287159091429997066,    0.054415842243104009955};

inline constexpr std::array<double, 8> kSym4 = {
    -0.075765714789502213228, -0.029635527646002491764, 0.49761866763277498998,  0.80373875180513208088,
    0.2978577956053060514,    -0.099219543576633532585, -0.012603967262031303754, 0.032223100604051467872};

}  // namespace detail

inline std::span<const double> lowpass_filter(Wavelet w) noexcept {
  switch (w) {
    case Wavelet::Haar: return detail::kHaar;
    case Wavelet::Db2: return detail::kDb2;
    case Wavelet::Db4: return detail::kDb4;
    case Wavelet::Db8: return detail::kDb8;
    case Wavelet::Sym4: return detail::kSym4;
  }
  return detail::kHaar;
}

// Quadrature mirror: g[k] = (-1)^k h[L-1-k].
inline std::vector<double> highpass_filter(Wavelet w) {
  const auto h = lowpass_filter(w);
  std::vector<double> g(h.size());
  for (std::size_t k = 0; k < h.size(); ++k) {
    g[k] = (k % 2 == 0 ? 1.0 : -1.0) * h[h.size() - 1 - k];
  }
  return g;
}

}  // namespace eogden
