#include "hldet/video/frames.hpp"

#include "hldet/common.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace hldet {

std::uint8_t to_grayscale(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    const double y = 0.299 * r + 0.587 * g + 0.114 * b;
    return static_cast<std::uint8_t>(std::clamp(std::lround(y), 0L, 255L));
}

FrameSequence adapt_framerate(const FrameSequence& seq, int target_fps) {
    if (seq.frames.empty()) throw std::invalid_argument("adapt_framerate: empty sequence");
    if (seq.fps < 1 || target_fps < 1) {
        throw std::invalid_argument("adapt_framerate: frame rates must be >= 1");
    }
    if (seq.fps == target_fps) return seq;

    const double duration = static_cast<double>(seq.frames.size()) / seq.fps;
    const auto out_len = static_cast<std::size_t>(std::floor(duration * target_fps));
    const std::size_t last = seq.frames.size() - 1;

    FrameSequence out;
    out.fps = target_fps;
    out.frames.reserve(out_len);
    for (std::size_t j = 0; j < out_len; ++j) {
        const double pos = static_cast<double>(j) * seq.fps / target_fps;
        const auto idx = std::min(static_cast<std::size_t>(std::lround(pos)), last);
        out.frames.push_back(seq.frames[idx]);
    }
    return out;
}

GrayFrame resize_bilinear(const GrayFrame& src, int out_height, int out_width) {
    if (out_height < 1 || out_width < 1 || src.height < 1 || src.width < 1) {
        throw std::invalid_argument("resize_bilinear: dimensions must be positive");
    }
    if (out_height == src.height && out_width == src.width) return src;

    GrayFrame out(out_height, out_width);
    const double sy = out_height > 1
                          ? static_cast<double>(src.height - 1) / (out_height - 1)
                          : 0.0;
    const double sx = out_width > 1
                          ? static_cast<double>(src.width - 1) / (out_width - 1)
                          : 0.0;
    for (int r = 0; r < out_height; ++r) {
        const double y = r * sy;
        const int y0 = std::min(static_cast<int>(y), src.height - 1);
        const int y1 = std::min(y0 + 1, src.height - 1);
        const double fy = y - y0;
        for (int c = 0; c < out_width; ++c) {
            const double x = c * sx;
            const int x0 = std::min(static_cast<int>(x), src.width - 1);
            const int x1 = std::min(x0 + 1, src.width - 1);
            const double fx = x - x0;
            const double top = src.at(y0, x0) * (1.0 - fx) + src.at(y0, x1) * fx;
            const double bot = src.at(y1, x0) * (1.0 - fx) + src.at(y1, x1) * fx;
            out.at(r, c) = top * (1.0 - fy) + bot * fy;
        }
    }
    return out;
}

VideoChunkTensor stack_chunk(const FrameSequence& seq, const ChunkWindow& window,
                             int out_height, int out_width) {
    if (seq.fps < 1) throw std::invalid_argument("stack_chunk: sequence needs fps >= 1");
    const int channels = seq.fps * window.length_s;
    const std::size_t first = static_cast<std::size_t>(window.start_s) *
                              static_cast<std::size_t>(seq.fps);
    if (window.start_s < 0 ||
        first + static_cast<std::size_t>(channels) > seq.frames.size()) {
        throw std::out_of_range("stack_chunk: window extends past available frames");
    }

    VideoChunkTensor chunk;
    chunk.frame_rate = seq.fps;
    chunk.chunk_seconds = window.length_s;
    chunk.values = Tensor({out_height, out_width, channels});
    for (int kappa = 0; kappa < channels; ++kappa) {
        const GrayFrame resized =
            resize_bilinear(seq.frames[first + static_cast<std::size_t>(kappa)],
                            out_height, out_width);
        for (int r = 0; r < out_height; ++r) {
            for (int c = 0; c < out_width; ++c) {
                chunk.values.at(r, c, kappa) = resized.at(r, c);
            }
        }
    }
    return chunk;
}

void save_pgm(const GrayFrame& frame, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("save_pgm: cannot open " + path.string());
    out << "P5\n" << frame.width << " " << frame.height << "\n255\n";
    std::vector<unsigned char> row(static_cast<std::size_t>(frame.width));
    for (int r = 0; r < frame.height; ++r) {
        for (int c = 0; c < frame.width; ++c) {
            const double v = std::clamp(frame.at(r, c), 0.0, 1.0);
            row[static_cast<std::size_t>(c)] =
                static_cast<unsigned char>(std::lround(v * 255.0));
        }
        out.write(reinterpret_cast<const char*>(row.data()),
                  static_cast<std::streamsize>(row.size()));
    }
    if (!out) throw FormatError("save_pgm: write failed for " + path.string());
}

namespace {

int next_pgm_token(std::istream& in, const std::filesystem::path& path) {
    // skips whitespace and '#' comment lines
    int ch = in.get();
    while (in) {
        if (ch == '#') {
            while (in && ch != '\n') ch = in.get();
        } else if (!std::isspace(ch)) {
            break;
        }
        ch = in.get();
    }
    if (!in) throw FormatError("load_pgm: truncated header in " + path.string());
    int value = 0;
    bool any = false;
    while (in && std::isdigit(ch)) {
        value = value * 10 + (ch - '0');
        any = true;
        ch = in.get();
    }
    if (!any) throw FormatError("load_pgm: malformed header in " + path.string());
    return value;
}

} // namespace

GrayFrame load_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("load_pgm: cannot open " + path.string());
    char magic[2];
    in.read(magic, 2);
    if (!in || magic[0] != 'P' || magic[1] != '5') {
        throw FormatError("load_pgm: not a binary PGM (P5): " + path.string());
    }
    const int width = next_pgm_token(in, path);
    const int height = next_pgm_token(in, path);
    const int maxval = next_pgm_token(in, path);
    if (maxval != 255) throw FormatError("load_pgm: maxval must be 255: " + path.string());
    if (width < 1 || height < 1) throw FormatError("load_pgm: bad dimensions: " + path.string());

    GrayFrame frame(height, width);
    std::vector<unsigned char> raw(static_cast<std::size_t>(width) * height);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
        throw FormatError("load_pgm: truncated pixel data in " + path.string());
    }
    for (std::size_t i = 0; i < raw.size(); ++i) {
        frame.pixels[i] = raw[i] / 255.0;
    }
    return frame;
}

void save_frame_dir(const FrameSequence& seq, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    char name[32];
    for (std::size_t i = 0; i < seq.frames.size(); ++i) {
        std::snprintf(name, sizeof(name), "frame_%06zu.pgm", i);
        save_pgm(seq.frames[i], dir / name);
    }
    nlohmann::json meta;
    meta["fps"] = seq.fps;
    std::ofstream out(dir / "fps.json");
    if (!out) throw FormatError("save_frame_dir: cannot write fps.json in " + dir.string());
    out << meta.dump() << '\n';
}

FrameSequence load_frame_dir(const std::filesystem::path& dir) {
    std::ifstream meta_in(dir / "fps.json");
    if (!meta_in) throw FormatError("load_frame_dir: missing fps.json in " + dir.string());
    nlohmann::json meta;
    try {
        meta_in >> meta;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError("load_frame_dir: bad fps.json: " + std::string(e.what()));
    }
    FrameSequence seq;
    seq.fps = meta.at("fps").get<int>();

    char name[32];
    for (std::size_t i = 0;; ++i) {
        std::snprintf(name, sizeof(name), "frame_%06zu.pgm", i);
        const auto path = dir / name;
        if (!std::filesystem::exists(path)) break;
        seq.frames.push_back(load_pgm(path));
    }
    if (seq.frames.empty()) {
        throw FormatError("load_frame_dir: no frame_*.pgm files in " + dir.string());
    }
    return seq;
}

} // namespace hldet
