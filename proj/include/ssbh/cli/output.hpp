// output.hpp: plot-ready tables with a metadata header, written as CSV or JSON

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "ssbh/cli/config.hpp"

namespace ssbh::cli {

inline constexpr int kSchemaVersion = 1;
const char* library_version() noexcept;

struct Table {
    std::string command;
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<double>>> rows;  // nullopt marks a failed value
    std::vector<std::string> notes;                         // one per row, empty when fine
    KeyValues config;                                       // fully resolved inputs
    std::vector<std::pair<std::string, std::string>> meta;  // extra ordered metadata
    std::vector<std::string> warnings;

    void add_row(std::vector<std::optional<double>> values, std::string note = {});
    std::size_t column(const std::string& name) const;  // index, throws if absent
};

enum class Format { Csv, Json };

// 17 significant digits, '#' metadata lines, header row.
void write_csv(std::ostream& out, const Table& table);
// {"schema_version", "meta", "columns", "rows"}
void write_json(std::ostream& out, const Table& table);
void write_table(std::ostream& out, const Table& table, Format format);

std::string format_number(double v);

}  // namespace ssbh::cli
