// Dense square matrix over double, row-major. Small enough to live in a
// header; used for TSP distance/cost matrices and schedule desirability.

#ifndef GRIDSCHED_MATRIX_HPP
#define GRIDSCHED_MATRIX_HPP

#include <cstddef>
#include <vector>

namespace gridsched {

class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n, double fill = 0.0)
        : n_(n), data_(n * n, fill) {}

    std::size_t size() const { return n_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    bool operator==(const SquareMatrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

}  // namespace gridsched

#endif
