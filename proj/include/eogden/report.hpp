#pragma once

#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "eogden/error.hpp"
#include "eogden/io.hpp"
#include "eogden/pipeline.hpp"

namespace eogden {

enum class ReportFormat { Text, Csv, JsonLines };

inline std::optional<ReportFormat> parse_report_format(std::string_view s) {
  if (s == "text" || s == "text-table") return ReportFormat::Text;
  if (s == "csv") return ReportFormat::Csv;
  if (s == "jsonl" || s == "json-lines") return ReportFormat::JsonLines;
  return std::nullopt;
}

namespace detail {

inline std::string sig6(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

inline std::string opt_text(const std::optional<double>& v) { return v ? sig6(*v) : "n/a"; }

inline std::string opt_csv(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

inline std::optional<double> runtime_of(const BenchmarkReport& r, const MethodRow& row) {
  return r.timing_measured ? std::optional<double>(row.runtime_ms_mean) : std::nullopt;
}

inline std::string ranking_text(const std::vector<Method>& order) {
  std::string s;
  for (Method m : order) s += (s.empty() ? "" : " > ") + std::string(to_string(m));
  return s;
}

// Whether the relative order of the benchmarked methods agrees with the
// reference ordering restricted to those methods.
inline bool matches_reference(const BenchmarkReport& r) {
  std::vector<Method> expected;
  for (Method m : kReferenceRanking) {
    for (const auto& row : r.rows) {
      if (row.method == m) expected.push_back(m);
    }
  }
  return expected == r.ranking();
}

}  // namespace detail

// Method | SNR (dB) | Time (ms), one data row per method; metadata and the
// unfiltered baseline are '#' comment lines.
inline void write_report_text(std::ostream& out, const BenchmarkReport& r) {
  out << "# eogden " << r.version << "\n";
  out << "# corpus: " << r.corpus << "\n";
  out << "# snr mode: " << to_string(r.mode) << "\n";
  out << "# time: " << (r.timing_measured ? describe_timing_scope(r.window_len) : "not measured") << "\n";
  out << std::left << std::setw(28) << "Method" << std::right << std::setw(12) << "SNR (dB)" << std::setw(12)
      << "Time (ms)" << "\n";
  for (const auto& row : r.rows) {
    out << std::left << std::setw(28) << display_name(row.method) << std::right << std::setw(12)
        << detail::opt_text(row.snr_db_mean) << std::setw(12) << detail::opt_text(detail::runtime_of(r, row)) << "\n";
  }
  out << "# baseline (unfiltered): " << detail::opt_text(r.baseline.snr_db_mean) << " dB\n";
  for (const auto& row : r.rows) {
    if (row.n_snr_failures > 0 || row.n_failed_windows > 0) {
      out << "# " << to_string(row.method) << ": " << row.n_snr_failures << " unscored signals, "
          << row.n_failed_windows << " of " << row.n_windows << " windows passed through unfiltered\n";
    }
  }
  out << "# ranking: " << detail::ranking_text(r.ranking()) << "\n";
  out << "# reference ranking: " << detail::ranking_text({kReferenceRanking.begin(), kReferenceRanking.end()})
      << " (" << (detail::matches_reference(r) ? "matches" : "differs") << ", informative)\n";
}

inline constexpr std::string_view kReportCsvHeader =
    "role,method,snr_db_mean,snr_db_std,runtime_ms_mean,n_signals,n_scored,n_snr_failures,n_windows,n_failed_windows";

inline void write_report_csv(std::ostream& out, const BenchmarkReport& r) {
  out << kReportCsvHeader << "\n";
  for (const auto& row : r.rows) {
    out << "method," << to_string(row.method) << ',' << detail::opt_csv(row.snr_db_mean) << ','
        << detail::opt_csv(row.snr_db_std) << ',' << detail::opt_csv(detail::runtime_of(r, row)) << ',' << row.n_signals << ','
        << row.n_scored << ',' << row.n_snr_failures << ',' << row.n_windows << ',' << row.n_failed_windows << "\n";
  }
  out << "baseline,unfiltered," << detail::opt_csv(r.baseline.snr_db_mean) << ','
      << detail::opt_csv(r.baseline.snr_db_std) << ",,," << r.baseline.n_scored << ",,,\n";
}

// One JSON object per line: a header, one per method, the baseline.
inline void write_report_jsonl(std::ostream& out, const BenchmarkReport& r) {
  using nlohmann::ordered_json;
  auto opt = [](const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };

  ordered_json header;
  header["type"] = "header";
  header["version"] = r.version;
  header["corpus"] = r.corpus;
  header["snr_mode"] = std::string(to_string(r.mode));
  header["timing_scope"] = r.timing_measured ? describe_timing_scope(r.window_len) : "not measured";
  ordered_json cfg = ordered_json::object();
  for (const auto& [k, v] : r.config) cfg[k] = v;
  header["config"] = cfg;
  header["ranking"] = detail::ranking_text(r.ranking());
  header["reference_ranking"] = detail::ranking_text({kReferenceRanking.begin(), kReferenceRanking.end()});
  header["ranking_matches_reference"] = detail::matches_reference(r);
  out << header.dump() << "\n";

  for (const auto& row : r.rows) {
    ordered_json j;
    j["type"] = "method";
    j["method"] = std::string(to_string(row.method));
    j["snr_db_mean"] = opt(row.snr_db_mean);
    j["snr_db_std"] = opt(row.snr_db_std);
    j["runtime_ms_mean"] = opt(detail::runtime_of(r, row));
    j["n_signals"] = row.n_signals;
    j["n_scored"] = row.n_scored;
    j["n_snr_failures"] = row.n_snr_failures;
    j["n_windows"] = row.n_windows;
    j["n_failed_windows"] = row.n_failed_windows;
    ordered_json params = ordered_json::object();
    if (!row.per_signal.empty()) {
      for (const auto& [k, v] : row.per_signal.front().params) params[k] = v;
    }
    j["params"] = params;
    out << j.dump() << "\n";
  }
  ordered_json b;
  b["type"] = "baseline";
  b["method"] = "unfiltered";
  b["snr_db_mean"] = opt(r.baseline.snr_db_mean);
  b["snr_db_std"] = opt(r.baseline.snr_db_std);
  b["n_scored"] = r.baseline.n_scored;
  out << b.dump() << "\n";
}

inline void write_report(std::ostream& out, const BenchmarkReport& r, ReportFormat format) {
  switch (format) {
    case ReportFormat::Text: write_report_text(out, r); break;
    case ReportFormat::Csv: write_report_csv(out, r); break;
    case ReportFormat::JsonLines: write_report_jsonl(out, r); break;
  }
}

inline void write_report(const BenchmarkReport& r, const std::filesystem::path& path, ReportFormat format) {
  auto out = open_for_writing(path);
  write_report(out, r, format);
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

}  // namespace eogden
