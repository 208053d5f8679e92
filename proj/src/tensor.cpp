#include "hldet/tensor.hpp"

#include "hldet/common.hpp"

namespace hldet {

std::size_t Tensor::checked_numel(const std::vector<int>& dims) {
    std::size_t n = 1;
    for (int d : dims) {
        if (d <= 0) throw ShapeError("Tensor: dimensions must be positive");
        n *= static_cast<std::size_t>(d);
    }
    return n;
}

Tensor::Tensor(std::vector<int> dims, std::vector<double> data)
    : dims_(std::move(dims)), data_(std::move(data)) {
    if (checked_numel(dims_) != data_.size()) {
        throw ShapeError("Tensor: data length does not match dimensions");
    }
}

} // namespace hldet
