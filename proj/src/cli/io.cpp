#include "cli/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "qom/errors.hpp"

namespace qom::cli {

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

namespace {

std::string cell_csv(const Cell& c) {
    if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
    if (std::holds_alternative<double>(c)) return format_real(std::get<double>(c));
    return std::get<std::string>(c);
}

nlohmann::json cell_json(const Cell& c) {
    if (std::holds_alternative<long long>(c)) return std::get<long long>(c);
    if (std::holds_alternative<double>(c)) return std::get<double>(c);
    return std::get<std::string>(c);
}

}  // namespace

std::string to_csv(const Table& t) {
    std::string out;
    for (size_t i = 0; i < t.columns.size(); ++i) {
        if (i) out += ',';
        out += t.columns[i];
    }
    out += '\n';
    for (const auto& row : t.rows) {
        check_internal(row.size() == t.columns.size(), "table row width mismatch");
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += cell_csv(row[i]);
        }
        out += '\n';
    }
    return out;
}

nlohmann::json to_json_table(const Table& t) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : t.rows) {
        check_internal(row.size() == t.columns.size(), "table row width mismatch");
        nlohmann::json r = nlohmann::json::array();
        for (const auto& c : row) r.push_back(cell_json(c));
        rows.push_back(std::move(r));
    }
    return nlohmann::json{{"columns", t.columns}, {"rows", std::move(rows)}};
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    require(f.good(), "cannot open for writing: " + path);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.close();
    require(f.good(), "write failed: " + path);
}

void write_json(const std::string& path, const nlohmann::json& j) {
    write_text(path, j.dump(2) + "\n");
}

std::string write_table(const Table& t, const std::string& directory, const std::string& stem,
                        const std::string& format) {
    const std::string name = stem + (format == "json" ? ".json" : ".csv");
    const auto path = (std::filesystem::path(directory) / name).string();
    if (format == "json")
        write_json(path, to_json_table(t));
    else
        write_text(path, to_csv(t));
    return name;
}

nlohmann::json density_to_json(const fock::DensityMatrix& rho) {
    const int dim = static_cast<int>(rho.rows());
    nlohmann::json data = nlohmann::json::array();
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            data.push_back(nlohmann::json::array({rho(i, j).real(), rho(i, j).imag()}));
    return nlohmann::json{{"dim", dim}, {"data", std::move(data)}};
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string fnv1a64_hex(std::string_view bytes) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

}  // namespace qom::cli
