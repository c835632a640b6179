#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "blochgauge/analysis.hpp"

namespace blochgauge {

// Shortest exact decimal for a double ("%.17g"); infinities print as "inf".
std::string format_value(double v);

// JSON-safe value: infinities become the string "infinity".
nlohmann::json json_value(double v);

std::string criteria_csv(const CriteriaReport& report);

struct MarginRow {
    int k = 0;
    int j = 0;
    double dz = 0.0;
    double margin = 0.0;
};
std::string margins_csv(const std::vector<MarginRow>& rows);

struct QuantityRow {
    int k = 0;
    int j = 0;
    double dz = 0.0;
    double value = 0.0;
};
std::string quantities_csv(const std::vector<QuantityRow>& rows, const char* column);

std::string sequence_csv(const std::vector<double>& q);

void write_file(const std::string& path, const std::string& content);

} // namespace blochgauge
