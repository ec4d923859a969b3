#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "coreloss/errors.hpp"

namespace coreloss {

/// One node of a binary regression tree, stored flat. Leaves carry feature -1.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;

    bool is_leaf() const { return feature < 0; }
};

struct DecisionTree {
    std::vector<TreeNode> nodes;  // nodes[0] is the root

    double predict(std::span<const double> x) const {
        int i = 0;
        while (!nodes[i].is_leaf())
            i = x[static_cast<std::size_t>(nodes[i].feature)] < nodes[i].threshold
                    ? nodes[i].left
                    : nodes[i].right;
        return nodes[i].value;
    }

    int depth() const {
        if (nodes.empty()) return 0;
        return depth_from(0);
    }

    void validate(std::size_t n_features) const {
        if (nodes.empty()) throw DataError("decision tree has no nodes");
        for (const auto& n : nodes) {
            if (n.is_leaf()) {
                if (!std::isfinite(n.value)) throw DataError("tree leaf value is non-finite");
                continue;
            }
            if (static_cast<std::size_t>(n.feature) >= n_features)
                throw DataError("tree split feature out of range");
            if (n.left < 0 || n.right < 0 ||
                n.left >= static_cast<int>(nodes.size()) ||
                n.right >= static_cast<int>(nodes.size()))
                throw DataError("tree child index out of range");
        }
    }

private:
    int depth_from(int i) const {
        if (nodes[static_cast<std::size_t>(i)].is_leaf()) return 0;
        return 1 + std::max(depth_from(nodes[static_cast<std::size_t>(i)].left),
                            depth_from(nodes[static_cast<std::size_t>(i)].right));
    }
};

}  // namespace coreloss
