#include "sdice/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace sdice {

CsvWriter::CsvWriter(const std::string& path) : out_(path, std::ios::binary), path_(path) {
    if (!out_) throw std::runtime_error("csv: cannot open " + path);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const std::string& c = cells[i];
        const bool needs_quotes = c.find_first_of(",\"\n") != std::string::npos;
        if (i) out_ << ',';
        if (!needs_quotes) {
            out_ << c;
        } else {
            out_ << '"';
            for (char ch : c) {
                if (ch == '"') out_ << '"';
                out_ << ch;
            }
            out_ << '"';
        }
    }
    out_ << '\n';
    if (!out_) throw std::runtime_error("csv: write failed for " + path_);
}

std::string CsvWriter::num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace sdice
