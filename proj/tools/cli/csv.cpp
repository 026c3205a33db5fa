#include "cli/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace goldilocks::cli {

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path) : to_stdout_(path == "-") {
  if (!to_stdout_) {
    file_.open(path);
    if (!file_) {
      throw std::invalid_argument("cannot open output file '" + path + "'");
    }
  }
}

std::ostream& CsvWriter::out() { return to_stdout_ ? std::cout : file_; }

void CsvWriter::comment(const std::string& text) { out() << "# " << text << "\n"; }

void CsvWriter::row(const std::vector<std::string>& cells) {
  std::ostream& o = out();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) o << ",";
    o << cells[i];
  }
  o << "\n";
}

}  // namespace goldilocks::cli
