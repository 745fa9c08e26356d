#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

namespace dualweb {

// Minimal comma-separated reader for the project's flat file formats.
// None of them carry embedded commas, so no quoting is handled. Blank lines
// are skipped; a header row is recognized when the first field of the first
// row equals the expected first column name.

struct CsvRow {
    std::vector<std::string> fields;
    std::size_t line_no = 0;
};

class CsvReader {
public:
    // `source_name` is used in error messages only.
    CsvReader(std::istream& in, std::string source_name);

    // Returns false at end of input.
    bool next(CsvRow& row);

    const std::string& source_name() const { return source_name_; }

private:
    std::istream& in_;
    std::string source_name_;
    std::size_t line_no_ = 0;
};

std::vector<CsvRow> read_csv_file(const std::string& path, const std::string& expected_first_column);

std::string csv_join(const std::vector<std::string>& fields);

// Integer field parsing with line-number context in errors.
std::uint64_t parse_u64_field(const std::string& field, const CsvRow& row, const std::string& source);

} // namespace dualweb
