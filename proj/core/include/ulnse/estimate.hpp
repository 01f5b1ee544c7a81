#pragma once

#include <map>
#include <string>

namespace ulnse {

/// Measured sides of one inequality. `skipped` marks degenerate cases where
/// both sides vanish and no ratio is meaningful.
struct EstimateReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    std::map<std::string, double> params;
    bool skipped = false;

    static EstimateReport make(std::string name, double lhs, double rhs);
    std::string csv_row() const;
};

std::string estimate_csv_header();

}  // namespace ulnse
