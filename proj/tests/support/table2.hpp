#pragma once

// Published propagation results for the composition argument, per scenario
// column, as (b, d, u) at two decimals.

#include <array>
#include <string>
#include <vector>

namespace table2 {

struct Row {
    std::string label;  ///< node id, or "G1|A1"
    std::array<double, 3> full_uncertainty;
    std::array<double, 3> full_confidence;
    std::array<double, 3> partial;
};

inline const std::vector<Row>& rows() {
    static const std::vector<Row> kRows{
        {"G1", {0, 0, 1}, {0.86, 0.00, 0.14}, {0.74, 0.05, 0.21}},
        {"G1|A1", {0, 0, 1}, {0.86, 0.00, 0.14}, {0.74, 0.05, 0.21}},
        {"G2", {0, 0, 1}, {0.91, 0.00, 0.09}, {0.82, 0.00, 0.18}},
        {"G3", {0, 0, 1}, {0.95, 0.00, 0.05}, {0.85, 0.05, 0.10}},
        {"G4", {0, 0, 1}, {0.95, 0.00, 0.05}, {0.86, 0.00, 0.14}},
        {"G5", {0, 0, 1}, {0.00, 0.00, 1.00}, {0.00, 0.00, 1.00}},
        {"G6", {0, 0, 1}, {0.95, 0.00, 0.05}, {0.76, 0.10, 0.14}},
        {"G7", {0, 0, 1}, {0.95, 0.00, 0.05}, {0.57, 0.30, 0.13}},
    };
    return kRows;
}

inline const std::array<double, 3>& column(const Row& r, const std::string& scenario) {
    if (scenario == "full-uncertainty") return r.full_uncertainty;
    if (scenario == "full-confidence") return r.full_confidence;
    return r.partial;
}

inline const std::array<std::string, 3>& scenarios() {
    static const std::array<std::string, 3> kNames{"full-uncertainty", "full-confidence",
                                                   "partial"};
    return kNames;
}

}  // namespace table2
