#include "csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace qfisim::csv {

std::string cell(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string cell(int v) { return std::to_string(v); }
std::string cell(std::int64_t v) { return std::to_string(v); }
std::string cell(std::uint64_t v) { return std::to_string(v); }

Table::Table(const std::vector<std::string>& header) : cols_(header.size()) {
  if (cols_ == 0) throw std::invalid_argument("csv::Table: empty header");
  add_row(header);
}

void Table::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != cols_)
    throw std::invalid_argument("csv::Table: row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) buf_ += ',';
    buf_ += cells[i];
  }
  buf_ += '\n';
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(content.data(), std::streamsize(content.size()));
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace qfisim::csv
