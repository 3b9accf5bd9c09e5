#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

/* Deterministic tabular output. Doubles are printed with 17 significant
 * digits so reruns with the same seed are byte-identical and values
 * round-trip exactly. */

namespace weakmeas {

enum class OutFormat { csv, json };
OutFormat parse_format(const std::string& name);  // "csv" | "json"

namespace io {

using Cell = std::variant<double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    void add_row(std::vector<Cell> row);
};

/* Key/value header block echoed into every file (schema tag, configuration,
 * seed). Order is preserved. */
struct Meta {
    std::string schema = "weakmeas-1";
    std::vector<std::pair<std::string, std::string>> entries;
    void add(std::string key, std::string value);
    void add(std::string key, double value);
};

std::string format_double(double v);

void write_csv(std::ostream& os, const Table& table, const Meta& meta);
void write_json(std::ostream& os, const Table& table, const Meta& meta);
void write_table(std::ostream& os, const Table& table, const Meta& meta, OutFormat format);

/* Writes to the given path; throws std::runtime_error when the file cannot
 * be opened. */
void write_table_file(const std::string& path, const Table& table, const Meta& meta,
                      OutFormat format);

/* results/run.csv -> results/run.summary.csv */
std::string summary_path(const std::string& out_path);

}  // namespace io
}  // namespace weakmeas
