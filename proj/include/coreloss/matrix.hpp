#pragma once

#include <span>
#include <vector>

#include "coreloss/errors.hpp"

namespace coreloss {

/// Row-major dense matrix of doubles (rows = samples, cols = features).
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), values(r * c, 0.0) {}

    double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }

    std::span<const double> row(std::size_t r) const {
        return {values.data() + r * cols, cols};
    }
    std::span<double> row(std::size_t r) { return {values.data() + r * cols, cols}; }
};

}  // namespace coreloss
