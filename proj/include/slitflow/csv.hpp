/// @file csv.hpp
/// @brief Small CSV writer with fixed numeric formatting (17 significant
/// digits) so emitted files are byte-stable on a given platform.

#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace slitflow {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class CsvWriter {
  public:
    CsvWriter(const std::filesystem::path& path, const std::string& header) {
        std::filesystem::create_directories(path.parent_path());
        out_.open(path, std::ios::binary);
        if (!out_) throw std::runtime_error("CsvWriter: cannot open " + path.string());
        out_ << header << "\n";
    }

    /// One row; cells are written verbatim.
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ",";
            out_ << cells[i];
        }
        out_ << "\n";
    }

    void row_numbers(const std::vector<double>& vals) {
        std::vector<std::string> cells;
        cells.reserve(vals.size());
        for (double v : vals) cells.push_back(format_double(v));
        row(cells);
    }

  private:
    std::ofstream out_;
};

}  // namespace slitflow
