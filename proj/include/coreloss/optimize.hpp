#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

namespace coreloss {

struct NelderMeadOptions {
    int max_iterations = 2000;
    double simplex_tolerance = 1e-8;  // max vertex spread in parameter space
};

struct NelderMeadResult {
    std::vector<double> x;
    double fx = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Downhill-simplex minimizer with the standard reflection/expansion/
/// contraction/shrink coefficients (1, 2, 0.5, 0.5). Deterministic: vertex
/// ordering ties break on index.
inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                    const std::vector<double>& x0,
                                    const std::vector<double>& initial_steps,
                                    const NelderMeadOptions& opt = {}) {
    const std::size_t dim = x0.size();
    std::vector<std::vector<double>> verts(dim + 1, x0);
    for (std::size_t i = 0; i < dim; ++i) verts[i + 1][i] += initial_steps[i];
    std::vector<double> fv(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) fv[i] = f(verts[i]);

    std::vector<std::size_t> order(dim + 1);
    NelderMeadResult res;
    for (res.iterations = 0; res.iterations < opt.max_iterations; ++res.iterations) {
        std::iota(order.begin(), order.end(), 0u);
        std::stable_sort(order.begin(), order.end(),
                         [&fv](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t best = order[0], worst = order[dim], second_worst = order[dim - 1];

        double spread = 0.0;
        for (std::size_t i = 0; i <= dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                spread = std::max(spread, std::fabs(verts[i][j] - verts[best][j]));
        if (spread < opt.simplex_tolerance) {
            res.converged = true;
            break;
        }

        std::vector<double> centroid(dim, 0.0);
        for (std::size_t i = 0; i <= dim; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < dim; ++j) centroid[j] += verts[i][j];
        }
        for (double& c : centroid) c /= static_cast<double>(dim);

        auto blend = [&](double t) {
            std::vector<double> p(dim);
            for (std::size_t j = 0; j < dim; ++j)
                p[j] = centroid[j] + t * (verts[worst][j] - centroid[j]);
            return p;
        };

        std::vector<double> reflected = blend(-1.0);
        const double fr = f(reflected);
        if (fr < fv[best]) {
            std::vector<double> expanded = blend(-2.0);
            const double fe = f(expanded);
            if (fe < fr) {
                verts[worst] = std::move(expanded);
                fv[worst] = fe;
            } else {
                verts[worst] = std::move(reflected);
                fv[worst] = fr;
            }
        } else if (fr < fv[second_worst]) {
            verts[worst] = std::move(reflected);
            fv[worst] = fr;
        } else {
            const bool outside = fr < fv[worst];
            std::vector<double> contracted = blend(outside ? -0.5 : 0.5);
            const double fc = f(contracted);
            if (fc < std::min(fr, fv[worst])) {
                verts[worst] = std::move(contracted);
                fv[worst] = fc;
            } else {
                for (std::size_t i = 0; i <= dim; ++i) {
                    if (i == best) continue;
                    for (std::size_t j = 0; j < dim; ++j)
                        verts[i][j] = verts[best][j] + 0.5 * (verts[i][j] - verts[best][j]);
                    fv[i] = f(verts[i]);
                }
            }
        }
    }

    const std::size_t best = static_cast<std::size_t>(
        std::min_element(fv.begin(), fv.end()) - fv.begin());
    res.x = verts[best];
    res.fx = fv[best];
    return res;
}

}  // namespace coreloss
