#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace ergm::cli {

// Empty cells become "" in CSV and null in JSON.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
};

enum class Format { Csv, Json };

// Fixed column order, %.17g floats, LF endings.  Throws NumericError on a
// non-finite double.
void write_csv(const Table& t, std::ostream& os);
// Array of objects keyed by column name.
void write_json(const Table& t, std::ostream& os);
void write_table(const Table& t, Format f, std::ostream& os);

// Writes to a sibling temp file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace ergm::cli
