#pragma once

#include "hldet/nn/layers.hpp"
#include "hldet/tensor.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace hldet {

/// A layered binary (or multi-class, for transfer sources) classifier.
/// Immutable during inference; forward evaluation is pure and may run
/// concurrently across inputs.
class Model {
public:
    Model() = default;
    Model(Shape3 input_shape, std::vector<std::unique_ptr<Layer>> layers);

    Model(const Model& other);
    Model& operator=(const Model& other);
    Model(Model&&) = default;
    Model& operator=(Model&&) = default;

    const Shape3& input_shape() const { return input_shape_; }
    std::size_t layer_count() const { return layers_.size(); }
    Layer& layer(std::size_t i) { return *layers_[i]; }
    const Layer& layer(std::size_t i) const { return *layers_[i]; }

    /// Shapes of the activations: entry 0 is the input shape, entry i+1 the
    /// output of layer i. Throws ShapeError when the chain is inconsistent.
    std::vector<Shape3> activation_shapes() const;

    /// Validates shape chaining and that sigmoid/softmax appear only as the
    /// final layer.
    void validate() const;

    /// Full forward pass; returns the final activation.
    Tensor forward(const Tensor& input) const;

    /// Classifier score in (0, 1); requires a dense(1) + sigmoid head.
    double score(const Tensor& input) const;

    /// Replaces layer i (used by transfer surgery).
    void replace_layer(std::size_t i, std::unique_ptr<Layer> layer);

    /// Seeds every parameterized layer with He-uniform weights.
    void init_weights(std::uint64_t seed);

private:
    Shape3 input_shape_{};
    std::vector<std::unique_ptr<Layer>> layers_;
};

/// Binary cross-entropy of one prediction; the prediction is clipped to
/// [1e-7, 1 - 1e-7] before the logs.
double bce_loss(double prediction, int label);

/// One labeled training example. For binary heads the label is {0,1}; for
/// softmax heads it is the class index.
struct Example {
    Tensor input;
    int label = 0;
};

/// Per-layer parameter gradients; layers that are frozen or parameterless
/// get empty entries.
struct LayerGrads {
    std::vector<double> weights;
    std::vector<double> biases;
};
using Gradients = std::vector<LayerGrads>;

/// Gradients of the mean loss over the batch (BCE for sigmoid heads,
/// cross-entropy for softmax heads) w.r.t. every trainable parameter.
/// Throws std::invalid_argument on an empty batch, ShapeError on input
/// mismatch.
Gradients compute_gradients(const Model& model, const std::vector<Example>& batch);

/// Reference audio-chunk classifier: two conv/pool blocks (16 and 32 filters,
/// 3x3) over the (mel_bins x frames x 1) spectrogram image, then
/// dense(64)+relu and a dense(1)+sigmoid head.
Model make_audio_model(int mel_bins, int frames, std::uint64_t seed);

/// Video-chunk classifier with the same conv spine over an
/// (height x width x channels) stacked-frame tensor.
Model make_video_model(int height, int width, int channels, std::uint64_t seed);

} // namespace hldet
