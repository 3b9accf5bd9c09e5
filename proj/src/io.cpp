#include "weakmeas/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace weakmeas {

OutFormat parse_format(const std::string& name) {
    if (name == "csv") return OutFormat::csv;
    if (name == "json") return OutFormat::json;
    throw std::invalid_argument("unknown output format: " + name);
}

namespace io {

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size())
        throw std::invalid_argument("row width does not match the column count");
    rows.push_back(std::move(row));
}

void Meta::add(std::string key, std::string value) {
    entries.emplace_back(std::move(key), std::move(value));
}

void Meta::add(std::string key, double value) {
    entries.emplace_back(std::move(key), format_double(value));
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string cell_text(const Cell& c) {
    if (const double* d = std::get_if<double>(&c)) return format_double(*d);
    return std::get<std::string>(c);
}

}  // namespace

void write_csv(std::ostream& os, const Table& table, const Meta& meta) {
    os << "# schema: " << meta.schema << '\n';
    for (const auto& [key, value] : meta.entries) os << "# " << key << ": " << value << '\n';
    for (std::size_t j = 0; j < table.columns.size(); ++j) {
        if (j) os << ',';
        os << csv_escape(table.columns[j]);
    }
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) os << ',';
            os << csv_escape(cell_text(row[j]));
        }
        os << '\n';
    }
}

void write_json(std::ostream& os, const Table& table, const Meta& meta) {
    nlohmann::ordered_json root;
    root["schema"] = meta.schema;
    nlohmann::ordered_json m = nlohmann::ordered_json::object();
    for (const auto& [key, value] : meta.entries) m[key] = value;
    root["meta"] = std::move(m);
    root["columns"] = table.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::array();
        for (const auto& cell : row) {
            if (const double* d = std::get_if<double>(&cell))
                r.push_back(*d);
            else
                r.push_back(std::get<std::string>(cell));
        }
        rows.push_back(std::move(r));
    }
    root["rows"] = std::move(rows);
    os << root.dump(2) << '\n';
}

void write_table(std::ostream& os, const Table& table, const Meta& meta, OutFormat format) {
    if (format == OutFormat::csv)
        write_csv(os, table, meta);
    else
        write_json(os, table, meta);
}

void write_table_file(const std::string& path, const Table& table, const Meta& meta,
                      OutFormat format) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file: " + path);
    write_table(os, table, meta, format);
    if (!os) throw std::runtime_error("write failed: " + path);
}

std::string summary_path(const std::string& out_path) {
    const std::filesystem::path p(out_path);
    std::filesystem::path result = p.parent_path();
    std::string name = p.stem().string() + ".summary";
    name += p.extension().string();
    result /= name;
    return result.string();
}

}  // namespace io
}  // namespace weakmeas
