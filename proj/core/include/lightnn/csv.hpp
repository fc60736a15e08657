#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace lightnn {

/// Minimal CSV writer: UTF-8, comma separated, '.' decimal separator,
/// one header row. Numbers are written with enough digits to round-trip.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

    CsvWriter& cell(const std::string& value);
    CsvWriter& cell(double value);
    CsvWriter& cell(long value);
    CsvWriter& cell(int value) { return cell(static_cast<long>(value)); }
    /// Empty cell for absent optionals.
    CsvWriter& blank();
    void end_row();

private:
    std::ofstream out_;
    bool row_started_ = false;
    void sep();
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Reads a whole CSV file. `expected_header`, when nonempty, is validated
/// against the file's header row; a mismatch throws IoError (schema check).
CsvTable read_csv(const std::filesystem::path& path,
                  const std::vector<std::string>& expected_header = {});

} // namespace lightnn
