#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace fockslit {

// 17 significant digits, '.' decimal separator; round-trips binary64 exactly.
std::string format_double(double v);

// Minimal CSV emitter: '\n' line endings, no quoting (fields never contain
// commas here), numeric cells via format_double.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);
    bool is_open() const { return out_.is_open(); }
    void row(const std::vector<std::string>& cells);
    void close() { out_.close(); }

private:
    std::ofstream out_;
};

}  // namespace fockslit
