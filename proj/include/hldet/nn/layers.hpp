#pragma once

#include "hldet/rng.hpp"

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace hldet {

enum class LayerKind { conv2d, maxpool2d, flatten, dense, relu, sigmoid, softmax };

std::string layer_kind_name(LayerKind kind);
LayerKind layer_kind_from_name(const std::string& name);

/// Activation shape flowing between layers; fully-connected stages use
/// (1, 1, d).
struct Shape3 {
    int h = 0;
    int w = 0;
    int c = 0;

    std::size_t numel() const {
        return static_cast<std::size_t>(h) * static_cast<std::size_t>(w) *
               static_cast<std::size_t>(c);
    }
    bool operator==(const Shape3&) const = default;
};

/// One network stage. Forward and backward are pure with respect to the
/// layer: all per-sample state lives in caller-owned buffers, so concurrent
/// evaluation over inputs is safe.
class Layer {
public:
    virtual ~Layer() = default;

    virtual LayerKind kind() const = 0;
    virtual std::unique_ptr<Layer> clone() const = 0;

    /// Output shape for the given input shape; throws ShapeError when the
    /// layer cannot accept it.
    virtual Shape3 output_shape(const Shape3& in) const = 0;

    virtual void forward(const double* in, const Shape3& in_shape, double* out) const = 0;

    /// Propagates dout (gradient w.r.t. this layer's output) to din and, for
    /// parameterized layers, accumulates into dweights/dbiases. Any of din,
    /// dweights, dbiases may be null to skip that part.
    virtual void backward(const double* in, const Shape3& in_shape, const double* out,
                          const double* dout, double* din, double* dweights,
                          double* dbiases) const = 0;

    virtual std::vector<double>* weights() { return nullptr; }
    virtual std::vector<double>* biases() { return nullptr; }
    const std::vector<double>* weights() const {
        return const_cast<Layer*>(this)->weights();
    }
    const std::vector<double>* biases() const {
        return const_cast<Layer*>(this)->biases();
    }
    bool has_params() const { return const_cast<Layer*>(this)->weights() != nullptr; }

    /// He-style uniform init scaled by fan-in; biases start at zero.
    virtual void init_weights(Rng& /*rng*/) {}

    bool trainable() const { return trainable_; }
    void set_trainable(bool t) { trainable_ = t; }

protected:
    bool trainable_ = true;
};

/// 2-d convolution over channel-last inputs, stride >= 1, zero padding.
class Conv2d final : public Layer {
public:
    Conv2d(int filters, int kernel_h, int kernel_w, int in_channels, int stride = 1,
           int padding = 0);

    LayerKind kind() const override { return LayerKind::conv2d; }
    std::unique_ptr<Layer> clone() const override { return std::make_unique<Conv2d>(*this); }
    Shape3 output_shape(const Shape3& in) const override;
    void forward(const double* in, const Shape3& in_shape, double* out) const override;
    void backward(const double* in, const Shape3& in_shape, const double* out,
                  const double* dout, double* din, double* dweights,
                  double* dbiases) const override;
    std::vector<double>* weights() override { return &weights_; }
    std::vector<double>* biases() override { return &biases_; }
    void init_weights(Rng& rng) override;

    int filters() const { return filters_; }
    int kernel_h() const { return kernel_h_; }
    int kernel_w() const { return kernel_w_; }
    int in_channels() const { return in_channels_; }
    int stride() const { return stride_; }
    int padding() const { return padding_; }

    /// weights layout: [filter][ky][kx][in_channel], row-major
    double& weight_at(int f, int ky, int kx, int c) {
        return weights_[((static_cast<std::size_t>(f) * kernel_h_ + ky) * kernel_w_ + kx) *
                            in_channels_ +
                        c];
    }

private:
    int filters_, kernel_h_, kernel_w_, in_channels_, stride_, padding_;
    std::vector<double> weights_;
    std::vector<double> biases_;
};

/// Non-overlapping max pooling (size x size); trailing rows/cols that do not
/// fill a full cell are dropped.
class MaxPool2d final : public Layer {
public:
    explicit MaxPool2d(int size = 2);

    LayerKind kind() const override { return LayerKind::maxpool2d; }
    std::unique_ptr<Layer> clone() const override { return std::make_unique<MaxPool2d>(*this); }
    Shape3 output_shape(const Shape3& in) const override;
    void forward(const double* in, const Shape3& in_shape, double* out) const override;
    void backward(const double* in, const Shape3& in_shape, const double* out,
                  const double* dout, double* din, double* dweights,
                  double* dbiases) const override;

    int size() const { return size_; }

private:
    int size_;
};

class Flatten final : public Layer {
public:
    LayerKind kind() const override { return LayerKind::flatten; }
    std::unique_ptr<Layer> clone() const override { return std::make_unique<Flatten>(*this); }
    Shape3 output_shape(const Shape3& in) const override;
    void forward(const double* in, const Shape3& in_shape, double* out) const override;
    void backward(const double* in, const Shape3& in_shape, const double* out,
                  const double* dout, double* din, double* dweights,
                  double* dbiases) const override;
};

class Dense final : public Layer {
public:
    Dense(int units, int in_dim);

    LayerKind kind() const override { return LayerKind::dense; }
    std::unique_ptr<Layer> clone() const override { return std::make_unique<Dense>(*this); }
    Shape3 output_shape(const Shape3& in) const override;
    void forward(const double* in, const Shape3& in_shape, double* out) const override;
    void backward(const double* in, const Shape3& in_shape, const double* out,
                  const double* dout, double* din, double* dweights,
                  double* dbiases) const override;
    std::vector<double>* weights() override { return &weights_; }
    std::vector<double>* biases() override { return &biases_; }
    void init_weights(Rng& rng) override;

    int units() const { return units_; }
    int in_dim() const { return in_dim_; }

private:
    int units_, in_dim_;
    std::vector<double> weights_; // [unit][input], row-major
    std::vector<double> biases_;
};

class Relu final : public Layer {
public:
    LayerKind kind() const override { return LayerKind::relu; }
    std::unique_ptr<Layer> clone() const override { return std::make_unique<Relu>(*this); }
    Shape3 output_shape(const Shape3& in) const override { return in; }
    void forward(const double* in, const Shape3& in_shape, double* out) const override;
    void backward(const double* in, const Shape3& in_shape, const double* out,
                  const double* dout, double* din, double* dweights,
                  double* dbiases) const override;
};

class Sigmoid final : public Layer {
public:
    LayerKind kind() const override { return LayerKind::sigmoid; }
    std::unique_ptr<Layer> clone() const override { return std::make_unique<Sigmoid>(*this); }
    Shape3 output_shape(const Shape3& in) const override { return in; }
    void forward(const double* in, const Shape3& in_shape, double* out) const override;
    void backward(const double* in, const Shape3& in_shape, const double* out,
                  const double* dout, double* din, double* dweights,
                  double* dbiases) const override;
};

class Softmax final : public Layer {
public:
    LayerKind kind() const override { return LayerKind::softmax; }
    std::unique_ptr<Layer> clone() const override { return std::make_unique<Softmax>(*this); }
    Shape3 output_shape(const Shape3& in) const override;
    void forward(const double* in, const Shape3& in_shape, double* out) const override;
    void backward(const double* in, const Shape3& in_shape, const double* out,
                  const double* dout, double* din, double* dweights,
                  double* dbiases) const override;
};

} // namespace hldet
