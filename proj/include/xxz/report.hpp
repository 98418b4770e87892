#pragma once

#include <string>
#include <vector>

namespace xxz {

// One verified identity: absolute residual, the scale it is measured
// against, the relative tolerance, and the resulting pass flag.
struct CheckRecord {
    std::string suite;
    std::string name;
    std::string anchor; // which identity the residual certifies
    double residual = 0.0;
    double scale = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct CheckReport {
    std::vector<CheckRecord> checks;

    void add(std::string suite, std::string name, std::string anchor,
             double residual, double scale, double tolerance);
    void merge(const CheckReport& other);
    bool all_pass() const;
    std::size_t fail_count() const;
    // residual / (tolerance * scale) of the worst check; < 1 iff all pass
    double worst_margin() const;
};

} // namespace xxz
