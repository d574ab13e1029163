#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cachenet::cli {

// Comma-separated, UTF-8, LF line endings, numbers at full double
// precision (17 significant digits).
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
    if (!out_) throw std::domain_error("cannot open output file: " + path);
  }

  void header(const std::vector<std::string>& names) { row_of_strings(names); }

  void row(const std::vector<double>& values) {
    std::string line;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) line += ',';
      line += format(values[i]);
    }
    line += '\n';
    out_ << line;
  }

  static std::string format(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
  }

 private:
  void row_of_strings(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) line += ',';
      line += fields[i];
    }
    line += '\n';
    out_ << line;
  }

  std::ofstream out_;
};

}  // namespace cachenet::cli
