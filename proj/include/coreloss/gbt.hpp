#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "coreloss/errors.hpp"
#include "coreloss/matrix.hpp"
#include "coreloss/tree.hpp"

namespace coreloss {

struct GbtParams {
    int num_boost_round = 10000;
    int early_stopping_rounds = 50;
    int max_depth = 6;
    double learning_rate = 0.01;
    double lambda = 1.0;  // L2 penalty on leaf weights
    double gamma = 0.0;   // minimum gain to split
};

/// Second-order gradient boosting for squared error: g = pred - y, h = 1,
/// leaf weight -G/(H+lambda), exact greedy splits.
struct GbtModel {
    GbtParams params;
    std::uint64_t seed = 0;
    std::size_t n_features = 0;
    double base_prediction = 0.0;  // mean of the training target
    std::vector<DecisionTree> trees;  // truncated to the best iteration
    int best_iteration = 0;           // number of trees in the selected model
    std::vector<double> train_mse_history;       // per boosting round
    std::vector<double> validation_mse_history;  // per boosting round

    double predict(std::span<const double> x) const {
        if (x.size() != n_features)
            throw DataError("gbt predict: expected " + std::to_string(n_features) +
                            " features, got " + std::to_string(x.size()));
        double p = base_prediction;
        for (const auto& t : trees) p += params.learning_rate * t.predict(x);
        return p;
    }
};

namespace detail {

struct GbtNodeStats {
    double g = 0.0;
    double h = 0.0;
    std::size_t n = 0;
};

struct GbtBestSplit {
    double gain = 0.0;
    int feature = -1;
    double threshold = 0.0;
    bool found = false;
};

struct GbtScanState {
    double g = 0.0;
    double h = 0.0;
    std::size_t n = 0;
    double prev = 0.0;
    bool started = false;
};

}  // namespace detail

inline GbtModel gbt_train(const Matrix& X, const std::vector<double>& y, const Matrix& X_val,
                          const std::vector<double>& y_val, const GbtParams& params,
                          std::uint64_t seed = 0) {
    if (X.rows == 0) throw DataError("gbt_train: empty training data");
    if (X.rows != y.size()) throw DataError("gbt_train: X and y row counts differ");
    if (X_val.rows == 0)
        throw DataError("gbt_train: early stopping requires a non-empty validation set");
    if (X_val.rows != y_val.size()) throw DataError("gbt_train: X_val and y_val differ");
    if (X_val.cols != X.cols) throw DataError("gbt_train: train/validation width mismatch");

    GbtModel model;
    model.params = params;
    model.seed = seed;  // recorded for provenance; exact greedy draws no randomness
    model.n_features = X.cols;
    model.base_prediction =
        std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());

    const std::size_t n = X.rows;
    const std::size_t m = X.cols;

    // Row order per feature, computed once and reused across rounds.
    std::vector<std::vector<std::uint32_t>> sorted(m);
    for (std::size_t f = 0; f < m; ++f) {
        auto& idx = sorted[f];
        idx.resize(n);
        std::iota(idx.begin(), idx.end(), 0u);
        std::sort(idx.begin(), idx.end(), [&X, f](std::uint32_t a, std::uint32_t b) {
            const double va = X.at(a, f), vb = X.at(b, f);
            if (va != vb) return va < vb;
            return a < b;
        });
    }

    std::vector<double> pred(n, model.base_prediction);
    std::vector<double> pred_val(X_val.rows, model.base_prediction);

    const auto mse_of = [](const std::vector<double>& p, const std::vector<double>& t) {
        double s = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) s += (p[i] - t[i]) * (p[i] - t[i]);
        return s / static_cast<double>(p.size());
    };

    double best_val_mse = mse_of(pred_val, y_val);  // iteration 0: base only
    int best_iteration = 0;
    int rounds_since_best = 0;

    std::vector<std::int32_t> node_of(n, 0);
    std::vector<double> grad(n);

    for (int round = 0; round < params.num_boost_round; ++round) {
        for (std::size_t i = 0; i < n; ++i) grad[i] = pred[i] - y[i];

        DecisionTree tree;
        tree.nodes.emplace_back();
        std::vector<detail::GbtNodeStats> stats(1);
        for (std::size_t i = 0; i < n; ++i) {
            node_of[i] = 0;
            stats[0].g += grad[i];
            stats[0].h += 1.0;
            stats[0].n += 1;
        }

        std::vector<std::int32_t> active = {0};
        for (int depth = 0; depth < params.max_depth && !active.empty(); ++depth) {
            std::vector<detail::GbtBestSplit> best(tree.nodes.size());
            std::vector<char> is_active(tree.nodes.size(), 0);
            for (std::int32_t id : active) is_active[static_cast<std::size_t>(id)] = 1;

            std::vector<detail::GbtScanState> scan(tree.nodes.size());
            for (std::size_t f = 0; f < m; ++f) {
                for (std::int32_t id : active) scan[static_cast<std::size_t>(id)] = {};
                for (std::uint32_t i : sorted[f]) {
                    const std::int32_t id = node_of[i];
                    if (!is_active[static_cast<std::size_t>(id)]) continue;
                    auto& st = scan[static_cast<std::size_t>(id)];
                    const double v = X.at(i, f);
                    const auto& tot = stats[static_cast<std::size_t>(id)];
                    if (st.started && v != st.prev && st.n >= 1 && tot.n - st.n >= 1) {
                        const double gl = st.g, hl = st.h;
                        const double gr = tot.g - gl, hr = tot.h - hl;
                        const double gain =
                            0.5 * (gl * gl / (hl + params.lambda) + gr * gr / (hr + params.lambda) -
                                   tot.g * tot.g / (tot.h + params.lambda)) -
                            params.gamma;
                        auto& b = best[static_cast<std::size_t>(id)];
                        if (gain > 0.0 && (!b.found || gain > b.gain)) {
                            b.found = true;
                            b.gain = gain;
                            b.feature = static_cast<int>(f);
                            b.threshold = 0.5 * (st.prev + v);
                        }
                    }
                    st.g += grad[i];
                    st.h += 1.0;
                    st.n += 1;
                    st.prev = v;
                    st.started = true;
                }
            }

            std::vector<std::int32_t> next_active;
            for (std::int32_t id : active) {
                const auto& b = best[static_cast<std::size_t>(id)];
                if (!b.found) continue;  // stays a leaf
                const std::int32_t left_id = static_cast<std::int32_t>(tree.nodes.size());
                tree.nodes.emplace_back();
                tree.nodes.emplace_back();
                stats.emplace_back();
                stats.emplace_back();
                TreeNode& nd = tree.nodes[static_cast<std::size_t>(id)];
                nd.feature = b.feature;
                nd.threshold = b.threshold;
                nd.left = left_id;
                nd.right = left_id + 1;
                next_active.push_back(left_id);
                next_active.push_back(left_id + 1);
            }
            if (next_active.empty()) break;

            for (std::size_t i = 0; i < n; ++i) {
                const TreeNode& nd = tree.nodes[static_cast<std::size_t>(node_of[i])];
                if (nd.is_leaf()) continue;
                const std::int32_t child =
                    X.at(i, static_cast<std::size_t>(nd.feature)) < nd.threshold ? nd.left
                                                                                 : nd.right;
                node_of[i] = child;
                auto& cs = stats[static_cast<std::size_t>(child)];
                cs.g += grad[i];
                cs.h += 1.0;
                cs.n += 1;
            }
            active = std::move(next_active);
        }

        for (std::size_t id = 0; id < tree.nodes.size(); ++id) {
            TreeNode& nd = tree.nodes[id];
            if (nd.is_leaf()) nd.value = -stats[id].g / (stats[id].h + params.lambda);
        }

        for (std::size_t i = 0; i < n; ++i)
            pred[i] += params.learning_rate * tree.nodes[static_cast<std::size_t>(node_of[i])].value;
        for (std::size_t i = 0; i < X_val.rows; ++i)
            pred_val[i] += params.learning_rate * tree.predict(X_val.row(i));

        model.trees.push_back(std::move(tree));
        model.train_mse_history.push_back(mse_of(pred, y));
        const double val_mse = mse_of(pred_val, y_val);
        model.validation_mse_history.push_back(val_mse);

        if (val_mse < best_val_mse) {
            best_val_mse = val_mse;
            best_iteration = round + 1;
            rounds_since_best = 0;
        } else {
            ++rounds_since_best;
            if (rounds_since_best >= params.early_stopping_rounds) break;
        }
    }

    model.best_iteration = best_iteration;
    model.trees.resize(static_cast<std::size_t>(best_iteration));
    return model;
}

}  // namespace coreloss
