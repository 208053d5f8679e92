#include "hldet/nn/layers.hpp"

#include "hldet/common.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>

namespace hldet {

std::string layer_kind_name(LayerKind kind) {
    switch (kind) {
        case LayerKind::conv2d: return "conv2d";
        case LayerKind::maxpool2d: return "maxpool2d";
        case LayerKind::flatten: return "flatten";
        case LayerKind::dense: return "dense";
        case LayerKind::relu: return "relu";
        case LayerKind::sigmoid: return "sigmoid";
        case LayerKind::softmax: return "softmax";
    }
    return "?";
}

LayerKind layer_kind_from_name(const std::string& name) {
    if (name == "conv2d") return LayerKind::conv2d;
    if (name == "maxpool2d") return LayerKind::maxpool2d;
    if (name == "flatten") return LayerKind::flatten;
    if (name == "dense") return LayerKind::dense;
    if (name == "relu") return LayerKind::relu;
    if (name == "sigmoid") return LayerKind::sigmoid;
    if (name == "softmax") return LayerKind::softmax;
    throw FormatError("unknown layer kind: " + name);
}

// ---------------------------------------------------------------- Conv2d

Conv2d::Conv2d(int filters, int kernel_h, int kernel_w, int in_channels, int stride,
               int padding)
    : filters_(filters), kernel_h_(kernel_h), kernel_w_(kernel_w),
      in_channels_(in_channels), stride_(stride), padding_(padding) {
    if (filters < 1 || kernel_h < 1 || kernel_w < 1 || in_channels < 1 || stride < 1 ||
        padding < 0) {
        throw ShapeError("Conv2d: invalid construction parameters");
    }
    weights_.assign(static_cast<std::size_t>(filters) * kernel_h * kernel_w * in_channels,
                    0.0);
    biases_.assign(static_cast<std::size_t>(filters), 0.0);
}

Shape3 Conv2d::output_shape(const Shape3& in) const {
    if (in.c != in_channels_) {
        throw ShapeError("Conv2d: input has " + std::to_string(in.c) +
                         " channels, layer expects " + std::to_string(in_channels_));
    }
    const int oh = (in.h + 2 * padding_ - kernel_h_) / stride_ + 1;
    const int ow = (in.w + 2 * padding_ - kernel_w_) / stride_ + 1;
    if (in.h + 2 * padding_ < kernel_h_ || in.w + 2 * padding_ < kernel_w_) {
        throw ShapeError("Conv2d: input smaller than kernel");
    }
    return {oh, ow, filters_};
}

void Conv2d::forward(const double* in, const Shape3& in_shape, double* out) const {
    const Shape3 os = output_shape(in_shape);
    const int C = in_channels_;
    for (int oy = 0; oy < os.h; ++oy) {
        for (int ox = 0; ox < os.w; ++ox) {
            double* out_px = out + (static_cast<std::size_t>(oy) * os.w + ox) * filters_;
            for (int f = 0; f < filters_; ++f) out_px[f] = biases_[static_cast<std::size_t>(f)];
            for (int ky = 0; ky < kernel_h_; ++ky) {
                const int iy = oy * stride_ + ky - padding_;
                if (iy < 0 || iy >= in_shape.h) continue;
                for (int kx = 0; kx < kernel_w_; ++kx) {
                    const int ix = ox * stride_ + kx - padding_;
                    if (ix < 0 || ix >= in_shape.w) continue;
                    const double* in_px =
                        in + (static_cast<std::size_t>(iy) * in_shape.w + ix) * C;
                    const double* wrow =
                        weights_.data() +
                        (static_cast<std::size_t>(ky) * kernel_w_ + kx) * C;
                    const std::size_t filter_stride =
                        static_cast<std::size_t>(kernel_h_) * kernel_w_ * C;
                    for (int f = 0; f < filters_; ++f) {
                        const double* w = wrow + static_cast<std::size_t>(f) * filter_stride;
                        double acc = 0.0;
                        for (int c = 0; c < C; ++c) acc += in_px[c] * w[c];
                        out_px[f] += acc;
                    }
                }
            }
        }
    }
}

void Conv2d::backward(const double* in, const Shape3& in_shape, const double* /*out*/,
                      const double* dout, double* din, double* dweights,
                      double* dbiases) const {
    const Shape3 os = output_shape(in_shape);
    const int C = in_channels_;
    const std::size_t filter_stride = static_cast<std::size_t>(kernel_h_) * kernel_w_ * C;
    for (int oy = 0; oy < os.h; ++oy) {
        for (int ox = 0; ox < os.w; ++ox) {
            const double* d_px = dout + (static_cast<std::size_t>(oy) * os.w + ox) * filters_;
            for (int f = 0; f < filters_; ++f) {
                const double d = d_px[f];
                if (dbiases) dbiases[f] += d;
                const double* wbase = weights_.data() + static_cast<std::size_t>(f) * filter_stride;
                double* dwbase = dweights ? dweights + static_cast<std::size_t>(f) * filter_stride
                                          : nullptr;
                for (int ky = 0; ky < kernel_h_; ++ky) {
                    const int iy = oy * stride_ + ky - padding_;
                    if (iy < 0 || iy >= in_shape.h) continue;
                    for (int kx = 0; kx < kernel_w_; ++kx) {
                        const int ix = ox * stride_ + kx - padding_;
                        if (ix < 0 || ix >= in_shape.w) continue;
                        const std::size_t in_off =
                            (static_cast<std::size_t>(iy) * in_shape.w + ix) * C;
                        const std::size_t k_off =
                            (static_cast<std::size_t>(ky) * kernel_w_ + kx) * C;
                        const double* in_px = in + in_off;
                        if (dwbase) {
                            double* dw = dwbase + k_off;
                            for (int c = 0; c < C; ++c) dw[c] += d * in_px[c];
                        }
                        if (din) {
                            const double* w = wbase + k_off;
                            double* di = din + in_off;
                            for (int c = 0; c < C; ++c) di[c] += d * w[c];
                        }
                    }
                }
            }
        }
    }
}

void Conv2d::init_weights(Rng& rng) {
    const double bound =
        std::sqrt(6.0 / (static_cast<double>(kernel_h_) * kernel_w_ * in_channels_));
    for (double& w : weights_) w = rng.uniform(-bound, bound);
    std::fill(biases_.begin(), biases_.end(), 0.0);
}

// ------------------------------------------------------------- MaxPool2d

MaxPool2d::MaxPool2d(int size) : size_(size) {
    if (size < 1) throw ShapeError("MaxPool2d: size must be >= 1");
}

Shape3 MaxPool2d::output_shape(const Shape3& in) const {
    if (in.h < size_ || in.w < size_) throw ShapeError("MaxPool2d: input smaller than pool");
    return {in.h / size_, in.w / size_, in.c};
}

void MaxPool2d::forward(const double* in, const Shape3& in_shape, double* out) const {
    const Shape3 os = output_shape(in_shape);
    for (int oy = 0; oy < os.h; ++oy) {
        for (int ox = 0; ox < os.w; ++ox) {
            double* out_px = out + (static_cast<std::size_t>(oy) * os.w + ox) * os.c;
            for (int c = 0; c < os.c; ++c) out_px[c] = -std::numeric_limits<double>::infinity();
            for (int py = 0; py < size_; ++py) {
                const int iy = oy * size_ + py;
                for (int px = 0; px < size_; ++px) {
                    const int ix = ox * size_ + px;
                    const double* in_px =
                        in + (static_cast<std::size_t>(iy) * in_shape.w + ix) * in_shape.c;
                    for (int c = 0; c < os.c; ++c) {
                        out_px[c] = std::max(out_px[c], in_px[c]);
                    }
                }
            }
        }
    }
}

void MaxPool2d::backward(const double* in, const Shape3& in_shape, const double* /*out*/,
                         const double* dout, double* din, double* /*dweights*/,
                         double* /*dbiases*/) const {
    if (!din) return;
    const Shape3 os = output_shape(in_shape);
    // route each gradient to the first maximum in scan order
    for (int oy = 0; oy < os.h; ++oy) {
        for (int ox = 0; ox < os.w; ++ox) {
            const double* d_px = dout + (static_cast<std::size_t>(oy) * os.w + ox) * os.c;
            for (int c = 0; c < os.c; ++c) {
                double best = -std::numeric_limits<double>::infinity();
                std::size_t best_off = 0;
                for (int py = 0; py < size_; ++py) {
                    const int iy = oy * size_ + py;
                    for (int px = 0; px < size_; ++px) {
                        const int ix = ox * size_ + px;
                        const std::size_t off =
                            (static_cast<std::size_t>(iy) * in_shape.w + ix) * in_shape.c + c;
                        if (in[off] > best) {
                            best = in[off];
                            best_off = off;
                        }
                    }
                }
                din[best_off] += d_px[c];
            }
        }
    }
}

// --------------------------------------------------------------- Flatten

Shape3 Flatten::output_shape(const Shape3& in) const {
    return {1, 1, static_cast<int>(in.numel())};
}

void Flatten::forward(const double* in, const Shape3& in_shape, double* out) const {
    std::memcpy(out, in, in_shape.numel() * sizeof(double));
}

void Flatten::backward(const double* /*in*/, const Shape3& in_shape, const double* /*out*/,
                       const double* dout, double* din, double* /*dw*/, double* /*db*/) const {
    if (din) {
        for (std::size_t i = 0; i < in_shape.numel(); ++i) din[i] += dout[i];
    }
}

// ----------------------------------------------------------------- Dense

Dense::Dense(int units, int in_dim) : units_(units), in_dim_(in_dim) {
    if (units < 1 || in_dim < 1) throw ShapeError("Dense: invalid dimensions");
    weights_.assign(static_cast<std::size_t>(units) * in_dim, 0.0);
    biases_.assign(static_cast<std::size_t>(units), 0.0);
}

Shape3 Dense::output_shape(const Shape3& in) const {
    if (in.h != 1 || in.w != 1 || in.c != in_dim_) {
        throw ShapeError("Dense: expected flat input of width " + std::to_string(in_dim_));
    }
    return {1, 1, units_};
}

void Dense::forward(const double* in, const Shape3& in_shape, double* out) const {
    output_shape(in_shape);
    for (int u = 0; u < units_; ++u) {
        const double* w = weights_.data() + static_cast<std::size_t>(u) * in_dim_;
        double acc = biases_[static_cast<std::size_t>(u)];
        for (int d = 0; d < in_dim_; ++d) acc += w[d] * in[d];
        out[u] = acc;
    }
}

void Dense::backward(const double* in, const Shape3& /*in_shape*/, const double* /*out*/,
                     const double* dout, double* din, double* dweights,
                     double* dbiases) const {
    for (int u = 0; u < units_; ++u) {
        const double d = dout[u];
        if (dbiases) dbiases[u] += d;
        if (dweights) {
            double* dw = dweights + static_cast<std::size_t>(u) * in_dim_;
            for (int i = 0; i < in_dim_; ++i) dw[i] += d * in[i];
        }
        if (din) {
            const double* w = weights_.data() + static_cast<std::size_t>(u) * in_dim_;
            for (int i = 0; i < in_dim_; ++i) din[i] += d * w[i];
        }
    }
}

void Dense::init_weights(Rng& rng) {
    const double bound = std::sqrt(6.0 / static_cast<double>(in_dim_));
    for (double& w : weights_) w = rng.uniform(-bound, bound);
    std::fill(biases_.begin(), biases_.end(), 0.0);
}

// ------------------------------------------------------------ activations

void Relu::forward(const double* in, const Shape3& in_shape, double* out) const {
    for (std::size_t i = 0; i < in_shape.numel(); ++i) out[i] = in[i] > 0.0 ? in[i] : 0.0;
}

void Relu::backward(const double* in, const Shape3& in_shape, const double* /*out*/,
                    const double* dout, double* din, double* /*dw*/, double* /*db*/) const {
    if (din) {
        for (std::size_t i = 0; i < in_shape.numel(); ++i) {
            if (in[i] > 0.0) din[i] += dout[i];
        }
    }
}

void Sigmoid::forward(const double* in, const Shape3& in_shape, double* out) const {
    for (std::size_t i = 0; i < in_shape.numel(); ++i) out[i] = 1.0 / (1.0 + std::exp(-in[i]));
}

void Sigmoid::backward(const double* /*in*/, const Shape3& in_shape, const double* out,
                       const double* dout, double* din, double* /*dw*/, double* /*db*/) const {
    if (din) {
        for (std::size_t i = 0; i < in_shape.numel(); ++i) {
            din[i] += dout[i] * out[i] * (1.0 - out[i]);
        }
    }
}

Shape3 Softmax::output_shape(const Shape3& in) const {
    if (in.h != 1 || in.w != 1) throw ShapeError("Softmax: expected flat input");
    return in;
}

void Softmax::forward(const double* in, const Shape3& in_shape, double* out) const {
    const std::size_t n = in_shape.numel();
    double max_v = in[0];
    for (std::size_t i = 1; i < n; ++i) max_v = std::max(max_v, in[i]);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = std::exp(in[i] - max_v);
        sum += out[i];
    }
    for (std::size_t i = 0; i < n; ++i) out[i] /= sum;
}

void Softmax::backward(const double* /*in*/, const Shape3& in_shape, const double* out,
                       const double* dout, double* din, double* /*dw*/, double* /*db*/) const {
    if (!din) return;
    const std::size_t n = in_shape.numel();
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot += dout[i] * out[i];
    for (std::size_t i = 0; i < n; ++i) din[i] += out[i] * (dout[i] - dot);
}

} // namespace hldet
