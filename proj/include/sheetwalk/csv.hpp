#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sheetwalk {

// Shortest round-trip decimal form, locale-independent ('.' decimal point).
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string format_u64(std::uint64_t v) {
  char buf[24];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string format_i64(std::int64_t v) {
  char buf[24];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Minimal CSV emitter: header row, LF line endings, no quoting (all values
// written through the formatters above contain no separators).
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& columns)
      : out_(path, std::ios::binary), width_(columns.size()) {
    if (!out_) throw std::runtime_error("CsvWriter: cannot open " + path);
    write_row(columns);
  }

  void write_row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) {
      throw std::invalid_argument("CsvWriter: row width mismatch");
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

  void flush() { out_.flush(); }

 private:
  std::ofstream out_;
  std::size_t width_;
};

}  // namespace sheetwalk
