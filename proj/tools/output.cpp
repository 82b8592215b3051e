#include "output.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <fmt/format.h>

namespace brownloop::cli {

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::ofstream open(const std::filesystem::path& path, std::ios::openmode mode) {
  std::ofstream f(path, mode | std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return f;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

Table& Table::row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw std::logic_error("row width does not match the header");
  rows_.push_back(std::move(cells));
  return *this;
}

void Table::write(const std::filesystem::path& path) const {
  std::ofstream f = open(path, std::ios::out | std::ios::trunc);
  auto line = [&f](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) f << (i ? "," : "") << quote(cells[i]);
    f << "\r\n";
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  if (!f) throw std::runtime_error("failed writing " + path.string());
}

void append_summary(const std::filesystem::path& dir, const nlohmann::json& record) {
  std::ofstream f = open(dir / "summary.jsonl", std::ios::out | std::ios::app);
  f << record.dump() << '\n';
  if (!f) throw std::runtime_error("failed writing summary.jsonl");
}

void write_plot_script(const std::filesystem::path& csv, const Table& table, const PlotSpec& spec) {
  const auto& h = table.header();
  auto column = [&h](const std::string& name) {
    const auto it = std::find(h.begin(), h.end(), name);
    if (it == h.end()) throw std::logic_error("no column " + name);
    return static_cast<int>(it - h.begin()) + 1;
  };
  std::filesystem::path gp = csv;
  gp.replace_extension(".gp");
  std::ofstream f = open(gp, std::ios::out | std::ios::trunc);
  f << "set datafile separator ','\n";
  f << "set key autotitle columnhead\n";
  f << "set title '" << spec.title << "'\n";
  f << "set xlabel '" << spec.x_column << "'\n";
  if (spec.log_x) f << "set logscale x\n";
  if (spec.log_y) f << "set logscale y\n";
  f << "plot ";
  for (std::size_t i = 0; i < spec.y_columns.size(); ++i) {
    f << (i ? ", \\\n     " : "") << "'" << csv.filename().string() << "' using " << column(spec.x_column) << ":"
      << column(spec.y_columns[i]) << " with linespoints";
  }
  f << "\npause -1\n";
}

}  // namespace brownloop::cli
