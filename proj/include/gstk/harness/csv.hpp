#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace gstk::harness {

/// Shortest round-trip decimal form; "-0" prints as "0" and infinities as
/// "inf"/"-inf".
std::string format_number(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column index by name; throws DomainError when absent.
    std::size_t column(const std::string& name) const;
    /// Parses a numeric cell; "inf" and "-inf" are accepted.
    double number(std::size_t row, std::size_t col) const;

    std::string to_string() const;
    static CsvTable parse(const std::string& text, const std::string& source);
    static CsvTable read(const std::filesystem::path& path);
};

/// Writes the text verbatim; throws IoError naming the path on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

} // namespace gstk::harness
