#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qom/fock.hpp"

namespace qom::cli {

// A table cell is an integer, a real, or a marker string ("undefined").
using Cell = std::variant<long long, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

// 17 significant digits, lowercase scientific; round-trips any finite double.
std::string format_real(double v);

// Header row + comma-separated cells, LF endings.
std::string to_csv(const Table& t);

// {"columns": [...], "rows": [[...], ...]} with reals as JSON numbers.
nlohmann::json to_json_table(const Table& t);

// Serializes per format ("csv" or "json") and writes; returns the file name
// actually written (extension follows the format).
std::string write_table(const Table& t, const std::string& directory, const std::string& stem,
                        const std::string& format);

void write_text(const std::string& path, const std::string& content);
void write_json(const std::string& path, const nlohmann::json& j);

// {"dim": D, "data": [[re, im], ...]} row-major.
nlohmann::json density_to_json(const fock::DensityMatrix& rho);

std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

}  // namespace qom::cli
