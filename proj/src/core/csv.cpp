#include "core/csv.hpp"

#include <charconv>
#include <fstream>

#include "core/error.hpp"
#include "core/strings.hpp"

namespace dualweb {

CsvReader::CsvReader(std::istream& in, std::string source_name)
    : in_(in), source_name_(std::move(source_name)) {}

bool CsvReader::next(CsvRow& row) {
    std::string line;
    while (std::getline(in_, line)) {
        ++line_no_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        row.fields = split(line, ',');
        for (auto& f : row.fields) f = std::string(trim(f));
        row.line_no = line_no_;
        return true;
    }
    return false;
}

std::vector<CsvRow> read_csv_file(const std::string& path, const std::string& expected_first_column) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw_io("cannot open for reading: " + path);
    CsvReader reader(in, path);
    std::vector<CsvRow> rows;
    CsvRow row;
    bool first = true;
    while (reader.next(row)) {
        if (first && !row.fields.empty() && row.fields[0] == expected_first_column) {
            first = false;
            continue; // header row
        }
        first = false;
        rows.push_back(row);
    }
    return rows;
}

std::string csv_join(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += fields[i];
    }
    return out;
}

std::uint64_t parse_u64_field(const std::string& field, const CsvRow& row, const std::string& source) {
    std::uint64_t value = 0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw_parse(source + ":" + std::to_string(row.line_no) + ": expected a nonnegative integer, got '" + field + "'");
    }
    return value;
}

} // namespace dualweb
