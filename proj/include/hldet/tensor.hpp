#pragma once

#include <cstddef>
#include <vector>

namespace hldet {

/// Row-major dense tensor of doubles. The last dimension is contiguous;
/// image-like data uses (height, width, channels).
class Tensor {
public:
    Tensor() = default;

    explicit Tensor(std::vector<int> dims)
        : dims_(std::move(dims)), data_(checked_numel(dims_), 0.0) {}

    Tensor(std::vector<int> dims, std::vector<double> data);

    const std::vector<int>& dims() const { return dims_; }
    std::size_t numel() const { return data_.size(); }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    std::vector<double>& values() { return data_; }
    const std::vector<double>& values() const { return data_; }

    double operator[](std::size_t i) const { return data_[i]; }
    double& operator[](std::size_t i) { return data_[i]; }

    /// 3-d accessor for (h, w, c) tensors.
    double& at(int y, int x, int c) {
        return data_[(static_cast<std::size_t>(y) * dims_[1] + x) * dims_[2] + c];
    }
    double at(int y, int x, int c) const {
        return data_[(static_cast<std::size_t>(y) * dims_[1] + x) * dims_[2] + c];
    }

private:
    static std::size_t checked_numel(const std::vector<int>& dims);

    std::vector<int> dims_;
    std::vector<double> data_;
};

} // namespace hldet
