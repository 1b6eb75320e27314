#pragma once

#include <string>
#include <vector>

#include "halfwave/grid.hpp"

namespace halfwave {

/// 17 significant digits, enough for an exact round trip of a double.
std::string format_number(double v);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    void add_row(std::vector<std::string> cells);
    void add_numbers(const std::vector<double>& values);

    std::size_t rows() const noexcept { return rows_.size(); }
    std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Writes to a temporary file in the same directory and renames it over
/// `path`, so readers never see a partial file. Throws Error on failure.
void write_atomic(const std::string& path, const std::string& content);

/// x, t, u rows in space-major order.
CsvTable field_table(const SampledField2D& u);

/// Reads a table written by field_table onto `grid`. Throws Error if the
/// sample count or coordinates do not match the grid.
SampledField2D read_field_csv(const std::string& path, const SpaceTimeGrid& grid);

}  // namespace halfwave
