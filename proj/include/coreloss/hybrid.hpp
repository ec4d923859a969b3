#pragma once

#include <span>
#include <vector>

#include "coreloss/metrics.hpp"

namespace coreloss {

/// Convex blend of two predictors: w1 * a + w2 * b with w1 + w2 = 1.
struct HybridWeights {
    double w1 = 0.0;
    double w2 = 1.0;
    double validation_mse = 0.0;
};

inline std::vector<double> hybrid_blend(const HybridWeights& w, std::span<const double> pred_a,
                                        std::span<const double> pred_b) {
    check_same_length(pred_a, pred_b, "hybrid_blend");
    std::vector<double> out(pred_a.size());
    for (std::size_t i = 0; i < pred_a.size(); ++i)
        out[i] = w.w1 * pred_a[i] + w.w2 * pred_b[i];
    return out;
}

inline constexpr int kHybridGridSteps = 10000;  // step 1e-4, endpoints included

/// Scans w1 over {0, 1e-4, ..., 1} minimizing the blend's MSE against y.
/// Ties break toward the smallest w1; endpoint inclusion guarantees the
/// result is no worse than either input predictor.
inline HybridWeights fit_hybrid_weights(std::span<const double> pred_a,
                                        std::span<const double> pred_b,
                                        std::span<const double> y) {
    check_same_length(pred_a, pred_b, "fit_hybrid_weights");
    check_same_length(pred_a, y, "fit_hybrid_weights");

    HybridWeights best;
    bool have_best = false;
    for (int step = 0; step <= kHybridGridSteps; ++step) {
        const double w1 = static_cast<double>(step) / kHybridGridSteps;
        const double w2 = 1.0 - w1;
        double sse = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            const double r = w1 * pred_a[i] + w2 * pred_b[i] - y[i];
            sse += r * r;
        }
        const double cur = sse / static_cast<double>(y.size());
        if (!have_best || cur < best.validation_mse) {
            have_best = true;
            best.w1 = w1;
            best.w2 = w2;
            best.validation_mse = cur;
        }
    }
    return best;
}

}  // namespace coreloss
