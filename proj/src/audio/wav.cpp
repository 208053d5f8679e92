#include "hldet/audio/wav.hpp"

#include "hldet/common.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace hldet {

namespace {

std::uint32_t read_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

std::uint16_t read_u16(std::istream& in) {
    unsigned char b[2];
    in.read(reinterpret_cast<char*>(b), 2);
    return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

void write_u32(std::ostream& out, std::uint32_t v) {
    const char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                       static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
    out.write(b, 4);
}

void write_u16(std::ostream& out, std::uint16_t v) {
    const char b[2] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff)};
    out.write(b, 2);
}

} // namespace

PcmSignal read_wav(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("read_wav: cannot open " + path.string());

    char tag[5] = {};
    in.read(tag, 4);
    if (!in || std::strncmp(tag, "RIFF", 4) != 0) {
        throw FormatError("read_wav: not a RIFF file: " + path.string());
    }
    read_u32(in); // RIFF payload size, unused
    in.read(tag, 4);
    if (!in || std::strncmp(tag, "WAVE", 4) != 0) {
        throw FormatError("read_wav: not a WAVE file: " + path.string());
    }

    std::uint16_t channels = 0, bits = 0, format = 0;
    std::uint32_t sample_rate = 0;
    bool have_fmt = false;
    std::vector<std::int16_t> raw;

    while (in.read(tag, 4)) {
        const std::uint32_t chunk_size = read_u32(in);
        if (!in) break;
        if (std::strncmp(tag, "fmt ", 4) == 0) {
            format = read_u16(in);
            channels = read_u16(in);
            sample_rate = read_u32(in);
            read_u32(in); // byte rate
            read_u16(in); // block align
            bits = read_u16(in);
            if (chunk_size > 16) in.ignore(chunk_size - 16);
            have_fmt = true;
        } else if (std::strncmp(tag, "data", 4) == 0) {
            if (!have_fmt) throw FormatError("read_wav: data before fmt chunk");
            raw.resize(chunk_size / 2);
            in.read(reinterpret_cast<char*>(raw.data()),
                    static_cast<std::streamsize>(raw.size() * 2));
            if (static_cast<std::uint32_t>(in.gcount()) != raw.size() * 2) {
                throw FormatError("read_wav: truncated data chunk in " + path.string());
            }
            break;
        } else {
            in.ignore(chunk_size + (chunk_size & 1)); // chunks are word-aligned
        }
    }

    if (!have_fmt) throw FormatError("read_wav: missing fmt chunk in " + path.string());
    if (format != 1 || bits != 16) {
        throw FormatError("read_wav: only 16-bit PCM supported: " + path.string());
    }
    if (channels != 1 && channels != 2) {
        throw FormatError("read_wav: only mono/stereo supported: " + path.string());
    }

    PcmSignal signal;
    signal.sample_rate_hz = static_cast<int>(sample_rate);
    if (channels == 1) {
        signal.samples.resize(raw.size());
        for (std::size_t i = 0; i < raw.size(); ++i) {
            signal.samples[i] = raw[i] / 32768.0;
        }
    } else {
        signal.samples.resize(raw.size() / 2);
        for (std::size_t i = 0; i < signal.samples.size(); ++i) {
            signal.samples[i] = (raw[2 * i] + raw[2 * i + 1]) / 2.0 / 32768.0;
        }
    }
    return signal;
}

void write_wav(const PcmSignal& signal, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("write_wav: cannot open " + path.string());

    const std::uint32_t data_bytes = static_cast<std::uint32_t>(signal.samples.size() * 2);
    const std::uint32_t sr = static_cast<std::uint32_t>(signal.sample_rate_hz);

    out.write("RIFF", 4);
    write_u32(out, 36 + data_bytes);
    out.write("WAVE", 4);
    out.write("fmt ", 4);
    write_u32(out, 16);
    write_u16(out, 1);  // PCM
    write_u16(out, 1);  // mono
    write_u32(out, sr);
    write_u32(out, sr * 2);
    write_u16(out, 2);  // block align
    write_u16(out, 16); // bits
    out.write("data", 4);
    write_u32(out, data_bytes);

    for (double s : signal.samples) {
        const double clamped = std::clamp(s, -1.0, 1.0);
        const auto v = static_cast<std::int16_t>(std::lround(clamped * 32767.0));
        write_u16(out, static_cast<std::uint16_t>(v));
    }
    if (!out) throw FormatError("write_wav: write failed for " + path.string());
}

PcmSignal resample_linear(const PcmSignal& signal, int target_rate_hz) {
    if (signal.sample_rate_hz <= 0 || target_rate_hz <= 0) {
        throw std::invalid_argument("resample_linear: sample rates must be positive");
    }
    if (signal.sample_rate_hz == target_rate_hz || signal.samples.empty()) {
        PcmSignal out = signal;
        out.sample_rate_hz = target_rate_hz;
        return out;
    }
    const double ratio = static_cast<double>(signal.sample_rate_hz) / target_rate_hz;
    const auto out_len = static_cast<std::size_t>(
        std::floor(static_cast<double>(signal.samples.size()) / ratio));
    PcmSignal out;
    out.sample_rate_hz = target_rate_hz;
    out.samples.resize(out_len);
    const std::size_t last = signal.samples.size() - 1;
    for (std::size_t i = 0; i < out_len; ++i) {
        const double pos = i * ratio;
        const auto i0 = std::min(static_cast<std::size_t>(pos), last);
        const auto i1 = std::min(i0 + 1, last);
        const double frac = pos - static_cast<double>(i0);
        out.samples[i] = signal.samples[i0] * (1.0 - frac) + signal.samples[i1] * frac;
    }
    return out;
}

} // namespace hldet
