#pragma once

#include "hldet/tensor.hpp"
#include "hldet/timeline.hpp"

#include <cstdint>
#include <filesystem>
#include <vector>

namespace hldet {

/// One grayscale frame, pixel intensities in [0, 1], row-major.
struct GrayFrame {
    int height = 0;
    int width = 0;
    std::vector<double> pixels;

    GrayFrame() = default;
    GrayFrame(int h, int w)
        : height(h), width(w), pixels(static_cast<std::size_t>(h) * w, 0.0) {}

    double& at(int r, int c) { return pixels[static_cast<std::size_t>(r) * width + c]; }
    double at(int r, int c) const { return pixels[static_cast<std::size_t>(r) * width + c]; }
};

/// An ordered grayscale frame sequence at a fixed frame rate.
struct FrameSequence {
    std::vector<GrayFrame> frames;
    int fps = 0;

    double duration_seconds() const {
        return fps > 0 ? static_cast<double>(frames.size()) / fps : 0.0;
    }
    int whole_seconds() const {
        return fps > 0 ? static_cast<int>(frames.size()) / fps : 0;
    }
};

/// Stacked grayscale video chunk: (u, w, fps*k) channel-last tensor, one
/// channel per frame in temporal order.
struct VideoChunkTensor {
    Tensor values;
    int frame_rate = 0;
    int chunk_seconds = 0;
};

/// BT.601 luma: round(0.299 R + 0.587 G + 0.114 B), clamped to [0, 255].
std::uint8_t to_grayscale(std::uint8_t r, std::uint8_t g, std::uint8_t b);

/// Nearest-index frame-rate change: output frame j is the source frame at
/// round(j * source_fps / target_fps), clamped to the last index; output
/// length is floor(duration * target_fps). No temporal interpolation.
/// Throws std::invalid_argument on an empty sequence or target_fps < 1.
FrameSequence adapt_framerate(const FrameSequence& seq, int target_fps);

/// Bilinear resize with corner-aligned sampling; a constant image maps to
/// that constant and outputs stay within the input value range.
GrayFrame resize_bilinear(const GrayFrame& src, int out_height, int out_width);

/// Takes the fps*k frames covering the window, resizes each to (out_h, out_w)
/// and stacks them along the channel axis in temporal order. Throws
/// std::out_of_range when the window extends past the available frames.
VideoChunkTensor stack_chunk(const FrameSequence& seq, const ChunkWindow& window,
                             int out_height, int out_width);

/// Frame directory layout: frame_%06d.pgm (binary P5, maxval 255) plus a
/// sidecar fps.json {"fps": int}. Pixels are scaled to [0,1] by 1/255.
void save_pgm(const GrayFrame& frame, const std::filesystem::path& path);
GrayFrame load_pgm(const std::filesystem::path& path);
void save_frame_dir(const FrameSequence& seq, const std::filesystem::path& dir);
FrameSequence load_frame_dir(const std::filesystem::path& dir);

} // namespace hldet
