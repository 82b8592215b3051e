#pragma once

// CSV tables (RFC 4180, 17 significant digits), the JSONL run summary and
// gnuplot scripts.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace brownloop::cli {

std::string format_number(double v);

class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  Table& row(std::vector<std::string> cells);
  std::size_t size() const { return rows_.size(); }
  const std::vector<std::string>& header() const { return header_; }

  /// Writes the table with CRLF line ends; throws std::runtime_error on I/O failure.
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Cell helpers.
inline std::string cell(double v) { return format_number(v); }
inline std::string cell(int v) { return std::to_string(v); }
inline std::string cell(long long v) { return std::to_string(v); }
inline std::string cell(bool v) { return v ? "true" : "false"; }
inline std::string cell(const std::string& v) { return v; }
inline std::string cell(const char* v) { return v; }

/// Appends one JSON object as a line of summary.jsonl.
void append_summary(const std::filesystem::path& dir, const nlohmann::json& record);

struct PlotSpec {
  std::string title;
  std::string x_column;
  std::vector<std::string> y_columns;
  bool log_x = false;
  bool log_y = false;
};

/// Writes <stem>.gp next to the CSV, plotting columns by header name.
void write_plot_script(const std::filesystem::path& csv, const Table& table, const PlotSpec& spec);

}  // namespace brownloop::cli
