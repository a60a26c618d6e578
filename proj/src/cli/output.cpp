#include "ssbh/cli/output.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

#include "ssbh/error.hpp"

#ifndef SSBH_VERSION
#define SSBH_VERSION "0.0.0"
#endif

namespace ssbh::cli {

namespace {

constexpr const char* kUnits = "energies in units of omega0, time in units of 1/omega0";

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

const char* library_version() noexcept { return SSBH_VERSION; }

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void Table::add_row(std::vector<std::optional<double>> values, std::string note) {
    if (values.size() != columns.size())
        throw Error(ErrorCode::InvalidParameter, "row width does not match the column count");
    rows.push_back(std::move(values));
    notes.push_back(std::move(note));
}

std::size_t Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw Error(ErrorCode::InvalidParameter, "no column named '" + name + "'");
}

void write_csv(std::ostream& out, const Table& table) {
    out << "# ssbh " << library_version() << "\n";
    out << "# schema_version = " << kSchemaVersion << "\n";
    out << "# command = " << table.command << "\n";
    out << "# units = " << kUnits << "\n";
    for (const auto& [k, v] : table.config) out << "# config." << k << " = " << v << "\n";
    for (const auto& [k, v] : table.meta) out << "# " << k << " = " << v << "\n";
    for (const auto& w : table.warnings) out << "# warning = " << w << "\n";

    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
    out << ",note\n";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            if (row[i]) out << format_number(*row[i]);
        }
        out << ',' << csv_field(table.notes[r]) << "\n";
    }
}

void write_json(std::ostream& out, const Table& table) {
    nlohmann::ordered_json meta;
    meta["tool"] = "ssbh";
    meta["version"] = library_version();
    meta["command"] = table.command;
    meta["units"] = kUnits;
    meta["config"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : table.config) meta["config"][k] = v;
    for (const auto& [k, v] : table.meta) meta[k] = v;
    meta["warnings"] = table.warnings;

    nlohmann::ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["meta"] = meta;
    doc["columns"] = table.columns;
    doc["columns"].push_back("note");
    doc["rows"] = nlohmann::ordered_json::array();
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (const auto& v : table.rows[r]) {
            if (v && std::isfinite(*v)) row.push_back(*v);
            else row.push_back(nullptr);
        }
        row.push_back(table.notes[r]);
        doc["rows"].push_back(std::move(row));
    }
    out << doc.dump(1) << "\n";
}

void write_table(std::ostream& out, const Table& table, Format format) {
    if (format == Format::Csv) write_csv(out, table);
    else write_json(out, table);
}

}  // namespace ssbh::cli
