#pragma once

// CSV emission with fixed numeric formatting, so reruns of the same scenario
// produce byte-identical files. Cells containing commas, quotes, or newlines
// are quoted per RFC 4180; numbers go through num() (%.10g) everywhere.

#include <fstream>
#include <string>
#include <vector>

namespace sdice {

class CsvWriter {
  public:
    explicit CsvWriter(const std::string& path);

    void row(const std::vector<std::string>& cells);

    static std::string num(double v);

  private:
    std::ofstream out_;
    std::string path_;
};

}  // namespace sdice
