#pragma once

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace goldilocks::cli {

/// Format with 17 significant digits (round-trip exact).
std::string num17(double v);

/// CSV emitter; header row always present, numbers via num17.
/// path "-" writes to stdout.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);

  void comment(const std::string& text);  // "# text" line
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& out();

  std::ofstream file_;
  bool to_stdout_ = false;
};

}  // namespace goldilocks::cli
