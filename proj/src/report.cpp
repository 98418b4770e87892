#include "xxz/report.hpp"

#include <algorithm>
#include <limits>

namespace xxz {

void CheckReport::add(std::string suite, std::string name, std::string anchor,
                      double residual, double scale, double tolerance) {
    CheckRecord rec;
    rec.suite = std::move(suite);
    rec.name = std::move(name);
    rec.anchor = std::move(anchor);
    rec.residual = residual;
    rec.scale = scale;
    rec.tolerance = tolerance;
    rec.pass = residual <= tolerance * scale;
    checks.push_back(std::move(rec));
}

void CheckReport::merge(const CheckReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

bool CheckReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.pass; });
}

std::size_t CheckReport::fail_count() const {
    std::size_t n = 0;
    for (const auto& c : checks)
        if (!c.pass) ++n;
    return n;
}

double CheckReport::worst_margin() const {
    double worst = 0.0;
    for (const auto& c : checks) {
        const double denom = c.tolerance * c.scale;
        const double margin = (denom > 0.0) ? c.residual / denom
                                            : (c.residual > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
        worst = std::max(worst, margin);
    }
    return worst;
}

} // namespace xxz
