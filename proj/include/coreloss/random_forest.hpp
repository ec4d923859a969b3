#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "coreloss/errors.hpp"
#include "coreloss/matrix.hpp"
#include "coreloss/rng.hpp"
#include "coreloss/tree.hpp"

namespace coreloss {

struct RfParams {
    int n_estimators = 100;
    int min_samples_split = 2;
    int min_samples_leaf = 1;
    /// Features tried per split; 0 means the regression default max(1, m/3).
    int max_features = 0;
    bool bootstrap = true;

    int resolved_max_features(std::size_t n_features) const {
        if (max_features > 0) return std::min<int>(max_features, static_cast<int>(n_features));
        return std::max(1, static_cast<int>(n_features / 3));
    }
};

struct ForestModel {
    RfParams params;
    std::uint64_t seed = 0;
    std::size_t n_features = 0;
    std::vector<DecisionTree> trees;

    double predict(std::span<const double> x) const {
        if (trees.empty()) throw DataError("forest model has no trees");
        if (x.size() != n_features)
            throw DataError("forest predict: expected " + std::to_string(n_features) +
                            " features, got " + std::to_string(x.size()));
        double sum = 0.0;
        for (const auto& t : trees) sum += t.predict(x);
        return sum / static_cast<double>(trees.size());
    }
};

namespace detail {

struct CartBuilder {
    const Matrix& X;
    const std::vector<double>& y;
    const RfParams& params;
    int mtry;
    Rng& rng;
    DecisionTree tree;
    std::vector<int> feature_pool;        // partial-Fisher-Yates scratch
    std::vector<std::pair<double, double>> scratch;  // (x, y) per node

    CartBuilder(const Matrix& x_, const std::vector<double>& y_, const RfParams& p_, Rng& r_)
        : X(x_), y(y_), params(p_), mtry(p_.resolved_max_features(x_.cols)), rng(r_) {
        feature_pool.resize(X.cols);
        std::iota(feature_pool.begin(), feature_pool.end(), 0);
    }

    struct Split {
        int feature = -1;
        double threshold = 0.0;
        double score = -1.0;  // sum of per-side (sum y)^2 / n, larger is better
        bool found = false;
    };

    Split scan_feature(int feature, const std::vector<std::size_t>& members) {
        Split best;
        scratch.clear();
        double total = 0.0;
        for (std::size_t i : members) {
            scratch.emplace_back(X.at(i, static_cast<std::size_t>(feature)), y[i]);
            total += y[i];
        }
        std::sort(scratch.begin(), scratch.end());
        const std::size_t n = scratch.size();
        const std::size_t min_leaf = static_cast<std::size_t>(params.min_samples_leaf);
        double left_sum = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            left_sum += scratch[i].second;
            const std::size_t n_left = i + 1, n_right = n - n_left;
            if (n_left < min_leaf || n_right < min_leaf) continue;
            if (scratch[i].first == scratch[i + 1].first) continue;
            const double right_sum = total - left_sum;
            const double score = left_sum * left_sum / static_cast<double>(n_left) +
                                 right_sum * right_sum / static_cast<double>(n_right);
            if (!best.found || score > best.score) {
                best.found = true;
                best.score = score;
                best.feature = feature;
                best.threshold = 0.5 * (scratch[i].first + scratch[i + 1].first);
            }
        }
        return best;
    }

    int build(std::vector<std::size_t>& members) {
        const int node_id = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();

        double sum = 0.0;
        bool pure = true;
        for (std::size_t i : members) {
            sum += y[i];
            if (y[i] != y[members.front()]) pure = false;
        }
        const double mean = sum / static_cast<double>(members.size());

        if (pure || members.size() < static_cast<std::size_t>(params.min_samples_split)) {
            tree.nodes[static_cast<std::size_t>(node_id)].value = mean;
            return node_id;
        }

        // Random feature subset; if none of them admits a split, fall back to
        // scanning every feature so impure nodes keep growing toward purity.
        Split best;
        for (int i = 0; i < mtry; ++i) {
            const std::size_t j =
                static_cast<std::size_t>(i) + rng.uniform_index(feature_pool.size() - i);
            std::swap(feature_pool[static_cast<std::size_t>(i)], feature_pool[j]);
            const Split s = scan_feature(feature_pool[static_cast<std::size_t>(i)], members);
            if (s.found && (!best.found || s.score > best.score)) best = s;
        }
        if (!best.found && mtry < static_cast<int>(X.cols)) {
            for (std::size_t f = 0; f < X.cols; ++f) {
                const Split s = scan_feature(static_cast<int>(f), members);
                if (s.found && (!best.found || s.score > best.score)) best = s;
            }
        }
        if (!best.found) {
            tree.nodes[static_cast<std::size_t>(node_id)].value = mean;
            return node_id;
        }

        std::vector<std::size_t> left, right;
        for (std::size_t i : members) {
            (X.at(i, static_cast<std::size_t>(best.feature)) < best.threshold ? left : right)
                .push_back(i);
        }
        members.clear();
        members.shrink_to_fit();

        const int left_id = build(left);
        const int right_id = build(right);
        TreeNode& node = tree.nodes[static_cast<std::size_t>(node_id)];
        node.feature = best.feature;
        node.threshold = best.threshold;
        node.left = left_id;
        node.right = right_id;
        return node_id;
    }
};

}  // namespace detail

/// Bagged CART forest with variance-reduction (MSE) splits and a random
/// feature subset per split. Trees grow to purity; deterministic per seed.
inline ForestModel rf_train(const Matrix& X, const std::vector<double>& y,
                            const RfParams& params, std::uint64_t seed) {
    if (X.rows == 0 || X.cols == 0) throw DataError("rf_train: empty training data");
    if (X.rows != y.size()) throw DataError("rf_train: X and y row counts differ");
    if (params.n_estimators <= 0) throw DataError("rf_train: need at least one tree");

    ForestModel model;
    model.params = params;
    model.seed = seed;
    model.n_features = X.cols;
    model.trees.reserve(static_cast<std::size_t>(params.n_estimators));

    Rng master(seed);
    std::vector<std::uint64_t> tree_seeds(static_cast<std::size_t>(params.n_estimators));
    for (auto& s : tree_seeds) s = master.derive_seed();

    for (std::uint64_t ts : tree_seeds) {
        Rng rng(ts);
        std::vector<std::size_t> members(X.rows);
        if (params.bootstrap) {
            for (auto& m : members) m = rng.uniform_index(X.rows);
        } else {
            std::iota(members.begin(), members.end(), std::size_t{0});
        }
        detail::CartBuilder builder(X, y, params, rng);
        builder.build(members);
        model.trees.push_back(std::move(builder.tree));
    }
    return model;
}

}  // namespace coreloss
