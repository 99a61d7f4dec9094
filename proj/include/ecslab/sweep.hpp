#pragma once

#include <string>
#include <vector>

namespace ecslab {

// Flat table of numeric sweep results behind the CSV outputs.
struct SweepTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

// Locale-independent formatting with 12 significant digits.
std::string format_double(double v);

std::string to_csv(const SweepTable& table);

// Throws std::runtime_error when the path cannot be written.
void write_csv(const SweepTable& table, const std::string& path);

}  // namespace ecslab
