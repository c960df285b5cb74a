// fit.hpp: log-log least squares for O(k^p) trends

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace landau {

struct SlopeFit {
    std::vector<std::pair<double, double>> pairs;  // (k, value)
    double slope = 0, intercept = 0, r2 = 0;
    double expected = 0, band = 0;
    bool pass = false;
};

inline SlopeFit fit_slope(const std::vector<std::pair<double, double>>& pairs, double expected = 0, double band = 0) {
    if (pairs.size() < 4) throw std::invalid_argument("fit_slope: need at least 4 (k, value) pairs, got " + std::to_string(pairs.size()));
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& [k, v] : pairs) {
        if (!(k > 0) || !(v > 0)) throw std::invalid_argument("fit_slope: values must be positive");
        double x = std::log(k), y = std::log(v);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    double n = static_cast<double>(pairs.size());
    double den = n * sxx - sx * sx;
    if (den <= 0) throw std::invalid_argument("fit_slope: need at least two distinct k");
    SlopeFit f;
    f.pairs = pairs;
    f.slope = (n * sxy - sx * sy) / den;
    f.intercept = (sy - f.slope * sx) / n;
    double ybar = sy / n, ss_tot = 0, ss_res = 0;
    for (auto& [k, v] : pairs) {
        double y = std::log(v), yh = f.intercept + f.slope * std::log(k);
        ss_tot += (y - ybar) * (y - ybar);
        ss_res += (y - yh) * (y - yh);
    }
    f.r2 = ss_tot > 0 ? 1 - ss_res / ss_tot : 1.0;
    f.expected = expected;
    f.band = band;
    f.pass = std::abs(f.slope - expected) <= band;
    return f;
}

}  // namespace landau
