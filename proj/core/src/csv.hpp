#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qfisim::csv {

// 17 significant digits: enough to round-trip any double exactly.
std::string cell(double v);
std::string cell(int v);
std::string cell(std::int64_t v);
std::string cell(std::uint64_t v);

// Accumulates a fixed-width table as LF-terminated text. The body is built in
// memory and written in one shot, which keeps repeated runs byte-identical.
class Table {
 public:
  explicit Table(const std::vector<std::string>& header);
  void add_row(const std::vector<std::string>& cells);
  const std::string& text() const { return buf_; }

 private:
  std::string buf_;
  std::size_t cols_ = 0;
};

// Throws std::runtime_error on any IO failure.
void write_file(const std::string& path, const std::string& content);

}  // namespace qfisim::csv
