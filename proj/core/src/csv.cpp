#include "lightnn/csv.hpp"

#include <charconv>
#include <sstream>

#include "lightnn/errors.hpp"

namespace lightnn {

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : out_(path) {
    if (!out_) throw IoError("cannot open " + path.string() + " for writing");
    for (const auto& name : header) cell(name);
    end_row();
}

void CsvWriter::sep() {
    if (row_started_) out_ << ',';
    row_started_ = true;
}

CsvWriter& CsvWriter::cell(const std::string& value) {
    sep();
    out_ << value;
    return *this;
}

CsvWriter& CsvWriter::cell(double value) {
    sep();
    char buffer[32];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    out_.write(buffer, result.ptr - buffer);
    return *this;
}

CsvWriter& CsvWriter::cell(long value) {
    sep();
    out_ << value;
    return *this;
}

CsvWriter& CsvWriter::blank() {
    sep();
    return *this;
}

void CsvWriter::end_row() {
    out_ << '\n';
    row_started_ = false;
}

CsvTable read_csv(const std::filesystem::path& path,
                  const std::vector<std::string>& expected_header) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    CsvTable table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (!line.empty() && line.back() == ',') fields.emplace_back();
        if (first) {
            table.header = fields;
            if (!expected_header.empty() && fields != expected_header)
                throw IoError("CSV schema mismatch in " + path.string());
            first = false;
        } else {
            table.rows.push_back(std::move(fields));
        }
    }
    if (first) throw IoError("empty CSV file: " + path.string());
    return table;
}

} // namespace lightnn
