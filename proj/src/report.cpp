#include "blochgauge/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace blochgauge {

std::string format_value(double v) {
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

nlohmann::json json_value(double v) {
    if (std::isinf(v))
        return v > 0 ? "infinity" : "-infinity";
    return v;
}

std::string criteria_csv(const CriteriaReport& report) {
    std::string out = "k,j,d_z,in_E,lhs_i,lhs_ii,lhs_iii,lhs_iv\n";
    for (const CriteriaRow& r : report.rows) {
        out += std::to_string(r.k) + "," + std::to_string(r.j) + "," + format_value(r.dz) +
               "," + (r.in_e ? "1" : "0");
        for (double v : r.lhs)
            out += "," + format_value(v);
        out += "\n";
    }
    return out;
}

std::string margins_csv(const std::vector<MarginRow>& rows) {
    std::string out = "k,j,d_z,margin\n";
    for (const MarginRow& r : rows)
        out += std::to_string(r.k) + "," + std::to_string(r.j) + "," + format_value(r.dz) +
               "," + format_value(r.margin) + "\n";
    return out;
}

std::string quantities_csv(const std::vector<QuantityRow>& rows, const char* column) {
    std::string out = "k,j,d_z," + std::string(column) + "\n";
    for (const QuantityRow& r : rows)
        out += std::to_string(r.k) + "," + std::to_string(r.j) + "," + format_value(r.dz) +
               "," + format_value(r.value) + "\n";
    return out;
}

std::string sequence_csv(const std::vector<double>& q) {
    std::string out = "k,Q\n";
    for (std::size_t i = 0; i < q.size(); ++i)
        out += std::to_string(i + 1) + "," + format_value(q[i]) + "\n";
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw config_error("cannot write output file '" + path + "'");
    out << content;
    if (!out)
        throw config_error("failed writing output file '" + path + "'");
}

} // namespace blochgauge
