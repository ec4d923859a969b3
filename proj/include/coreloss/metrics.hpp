#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "coreloss/errors.hpp"

namespace coreloss {

inline void check_same_length(std::span<const double> y, std::span<const double> y_hat,
                              const char* what) {
    if (y.size() != y_hat.size())
        throw DataError(std::string(what) + ": length mismatch (" + std::to_string(y.size()) +
                        " vs " + std::to_string(y_hat.size()) + ")");
    if (y.empty()) throw DataError(std::string(what) + ": empty input");
}

/// Mean absolute percentage error, in percent. Rejects zero truth values.
inline double mape(std::span<const double> y, std::span<const double> y_hat) {
    check_same_length(y, y_hat, "mape");
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] == 0.0) throw DataError("mape: true value at index " + std::to_string(i) +
                                         " is zero");
        s += std::fabs((y[i] - y_hat[i]) / y[i]);
    }
    return 100.0 * s / static_cast<double>(y.size());
}

/// Coefficient of determination. Rejects constant truth.
inline double r2(std::span<const double> y, std::span<const double> y_hat) {
    check_same_length(y, y_hat, "r2");
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(y.size());
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        ss_res += (y[i] - y_hat[i]) * (y[i] - y_hat[i]);
        ss_tot += (y[i] - mean) * (y[i] - mean);
    }
    if (ss_tot == 0.0) throw DataError("r2: true values are constant");
    return 1.0 - ss_res / ss_tot;
}

inline double mse(std::span<const double> y, std::span<const double> y_hat) {
    check_same_length(y, y_hat, "mse");
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) s += (y[i] - y_hat[i]) * (y[i] - y_hat[i]);
    return s / static_cast<double>(y.size());
}

struct MetricsReport {
    double mse = 0.0;
    double mape_percent = 0.0;
    double max_ape_percent = 0.0;
    double r2 = 0.0;
    std::size_t count = 0;
    std::vector<double> ape_percent;  // per-sample absolute percentage errors
};

inline MetricsReport compute_metrics(std::span<const double> y,
                                     std::span<const double> y_hat) {
    MetricsReport rep;
    rep.mse = mse(y, y_hat);
    rep.mape_percent = mape(y, y_hat);
    rep.r2 = r2(y, y_hat);
    rep.count = y.size();
    rep.ape_percent.reserve(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        rep.ape_percent.push_back(100.0 * std::fabs((y[i] - y_hat[i]) / y[i]));
    rep.max_ape_percent = *std::max_element(rep.ape_percent.begin(), rep.ape_percent.end());
    return rep;
}

/// Counts of absolute percentage errors in [0,w), [w,2w), ... up to 50%,
/// plus a final overflow bin.
struct ErrorHistogram {
    double bin_width_percent = 5.0;
    std::vector<std::size_t> counts;  // counts.back() is the overflow bin

    double bin_low(std::size_t i) const { return bin_width_percent * static_cast<double>(i); }
};

inline ErrorHistogram error_histogram(std::span<const double> y,
                                      std::span<const double> y_hat,
                                      double bin_width_percent = 5.0) {
    check_same_length(y, y_hat, "error_histogram");
    if (!(bin_width_percent > 0.0)) throw DataError("error_histogram: bin width must be positive");
    ErrorHistogram h;
    h.bin_width_percent = bin_width_percent;
    const std::size_t n_bins =
        static_cast<std::size_t>(std::ceil(50.0 / bin_width_percent - 1e-12));
    h.counts.assign(n_bins + 1, 0);
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] == 0.0)
            throw DataError("error_histogram: true value at index " + std::to_string(i) +
                            " is zero");
        const double ape = 100.0 * std::fabs((y[i] - y_hat[i]) / y[i]);
        const std::size_t bin = std::min(
            n_bins, static_cast<std::size_t>(std::floor(ape / bin_width_percent)));
        ++h.counts[bin];
    }
    return h;
}

}  // namespace coreloss
