#include "ulnse/estimate.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <utility>

namespace ulnse {

namespace {
std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}
}  // namespace

EstimateReport EstimateReport::make(std::string name, double lhs, double rhs) {
    EstimateReport r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    if (rhs > 0.0) {
        r.ratio = lhs / rhs;
    } else {
        // A positive lhs against a vanishing rhs is a genuine violation.
        r.skipped = lhs == 0.0;
        r.ratio = r.skipped ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return r;
}

std::string estimate_csv_header() { return "name,lhs,rhs,ratio,params"; }

std::string EstimateReport::csv_row() const {
    std::string row = name + "," + fmt(lhs) + "," + fmt(rhs) + "," + (skipped ? std::string("skipped") : fmt(ratio)) + ",";
    bool first = true;
    for (const auto& [k, v] : params) {
        if (!first) row += ";";
        row += k + "=" + fmt(v);
        first = false;
    }
    return row;
}

}  // namespace ulnse
