#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <span>
#include <system_error>
#include <vector>

#include "eogden/error.hpp"
#include "eogden/signal.hpp"

namespace eogden {

inline constexpr std::string_view kSignalCsvHeader = "time_s,amplitude_uv";

// Shortest decimal text that parses back to exactly `v`.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    out.push_back(trim(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

inline std::optional<double> parse_number(std::string_view field) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace detail

// Two-column `time_s,amplitude_uv` (rate inferred from the timestamps, which
// must be uniform within 1 %) or one-column amplitudes with an explicit rate.
// The first line is always a header.
inline SampledSignal read_signal_csv(std::istream& in, std::optional<double> fs = std::nullopt,
                                     const std::string& source = "<stream>") {
  std::string line;
  std::size_t line_no = 0;
  std::size_t columns = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split_commas(line);
    if (detail::parse_number(fields.front())) {
      throw Error(ErrorKind::Parse, source + ":" + std::to_string(line_no) + ": missing header line");
    }
    columns = fields.size();
    break;
  }
  if (columns == 0) throw Error(ErrorKind::EmptyInput, source + ": no header and no data");
  if (columns > 2) throw Error(ErrorKind::Parse, source + ": expected one or two columns, got " + std::to_string(columns));

  std::vector<double> times, values;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split_commas(line);
    if (fields.size() != columns) {
      throw Error(ErrorKind::Parse, source + ":" + std::to_string(line_no) + ": expected " + std::to_string(columns) +
                                        " fields, got " + std::to_string(fields.size()));
    }
    std::vector<double> nums;
    for (auto f : fields) {
      const auto v = detail::parse_number(f);
      if (!v) {
        throw Error(ErrorKind::Parse,
                    source + ":" + std::to_string(line_no) + ": non-numeric value '" + std::string(f) + "'");
      }
      nums.push_back(*v);
    }
    if (columns == 2) times.push_back(nums[0]);
    values.push_back(nums.back());
  }
  if (values.empty()) throw Error(ErrorKind::EmptyInput, source + ": no data rows");

  if (columns == 1) {
    if (!fs) throw Error(ErrorKind::Parameter, source + ": one-column input needs an explicit sampling rate");
    return SampledSignal(std::move(values), *fs);
  }
  if (times.size() < 2) {
    if (!fs) throw Error(ErrorKind::Sampling, source + ": cannot infer a sampling rate from one timestamp");
    return SampledSignal(std::move(values), *fs);
  }
  const double mean_dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
  if (!(mean_dt > 0.0)) throw Error(ErrorKind::Sampling, source + ": timestamps are not increasing");
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double dt = times[i] - times[i - 1];
    if (std::abs(dt - mean_dt) > 0.01 * mean_dt) {
      throw Error(ErrorKind::Sampling, source + ": non-uniform sampling at data row " + std::to_string(i + 1));
    }
  }
  return SampledSignal(std::move(values), 1.0 / mean_dt);
}

inline SampledSignal read_signal_csv(const std::filesystem::path& path, std::optional<double> fs = std::nullopt) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return read_signal_csv(in, fs, path.string());
}

// time_s followed by one column per named series, all sharing `fs`.
inline void write_columns_csv(std::ostream& out, double fs, const std::vector<std::string>& names,
                              const std::vector<std::span<const double>>& columns) {
  if (names.size() != columns.size()) throw Error(ErrorKind::Shape, "column names and data differ in count");
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns) {
    if (c.size() != rows) throw Error(ErrorKind::Shape, "CSV columns differ in length");
  }
  out << "time_s";
  for (const auto& n : names) out << ',' << n;
  out << '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    out << format_double(static_cast<double>(i) / fs);
    for (const auto& c : columns) out << ',' << format_double(c[i]);
    out << '\n';
  }
}

inline void write_signal_csv(std::ostream& out, const SampledSignal& s) {
  write_columns_csv(out, s.sample_rate(), {"amplitude_uv"}, {s.samples()});
}

inline std::ofstream open_for_writing(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  return out;
}

inline void write_signal_csv(const std::filesystem::path& path, const SampledSignal& s) {
  auto out = open_for_writing(path);
  write_signal_csv(out, s);
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

}  // namespace eogden
