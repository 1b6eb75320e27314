#include "halfwave/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "halfwave/error.hpp"

namespace halfwave {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != header_.size()) throw InvalidArgument("CSV row width does not match header");
    rows_.push_back(std::move(cells));
}

void CsvTable::add_numbers(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_number(v));
    add_row(std::move(cells));
}

namespace {

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void append_line(std::string& out, const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
        if (k) out += ',';
        out += quote(cells[k]);
    }
    out += '\n';
}

}  // namespace

std::string CsvTable::str() const {
    std::string out;
    append_line(out, header_);
    for (const auto& r : rows_) append_line(out, r);
    return out;
}

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("cannot write '" + tmp.string() + "'");
        f << content;
        f.flush();
        if (!f) throw Error("write to '" + tmp.string() + "' failed");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw Error("cannot rename '" + tmp.string() + "' to '" + path + "': " + ec.message());
}

CsvTable field_table(const SampledField2D& u) {
    CsvTable t({"x", "t", "u"});
    for (std::size_t i = 0; i < u.grid.m(); ++i)
        for (std::size_t j = 0; j < u.grid.n(); ++j) t.add_numbers({u.grid.x(i), u.grid.t(j), u(i, j)});
    return t;
}

SampledField2D read_field_csv(const std::string& path, const SpaceTimeGrid& grid) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open field file '" + path + "'");
    std::string line;
    std::getline(f, line);  // header
    auto out = SampledField2D::zeros(grid);
    std::size_t k = 0;
    const double tol_x = 1e-9 * grid.dx(), tol_t = 1e-9 * grid.dt();
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        if (k >= grid.m() * grid.n()) throw Error("'" + path + "' has more samples than the grid");
        std::istringstream row(line);
        std::string cell;
        double v[3];
        for (double& c : v) {
            if (!std::getline(row, cell, ',')) throw Error("'" + path + "': short row");
            c = std::stod(cell);
        }
        const std::size_t i = k / grid.n(), j = k % grid.n();
        if (std::abs(v[0] - grid.x(i)) > tol_x || std::abs(v[1] - grid.t(j)) > tol_t) {
            throw Error("'" + path + "': sample " + std::to_string(k) + " is not at grid node (" +
                        std::to_string(i) + ", " + std::to_string(j) + ")");
        }
        out(i, j) = v[2];
        ++k;
    }
    if (k != grid.m() * grid.n()) throw Error("'" + path + "' has fewer samples than the grid");
    return out;
}

}  // namespace halfwave
