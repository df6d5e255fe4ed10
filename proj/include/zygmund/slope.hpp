#pragma once

#include <cmath>
#include <vector>

#include "zygmund/bigint.hpp"

namespace zygmund {

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // max |log y - fit| over the points
};

/// Least-squares slope of log y against log x. Needs >= 3 points with
/// strictly increasing positive x and positive y.
inline SlopeFit fit_loglog_slope(const std::vector<std::pair<double, double>>& pts) {
    if (pts.size() < 3) throw Error("fit_loglog_slope: need at least 3 points");
    for (size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].first <= 0 || pts[i].second <= 0)
            throw Error("fit_loglog_slope: points must be positive");
        if (i > 0 && pts[i].first <= pts[i - 1].first)
            throw Error("fit_loglog_slope: x must be strictly increasing");
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(pts.size());
    for (const auto& [x, y] : pts) {
        double lx = std::log(x), ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0) throw Error("fit_loglog_slope: degenerate abscissae");
    SlopeFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    for (const auto& [x, y] : pts) {
        double err = std::abs(std::log(y) - (fit.intercept + fit.slope * std::log(x)));
        fit.residual = std::max(fit.residual, err);
    }
    return fit;
}

}  // namespace zygmund
