#pragma once

#include <filesystem>
#include <vector>

namespace hldet {

/// Mono PCM audio held as real amplitudes in [-1, 1].
struct PcmSignal {
    std::vector<double> samples;
    int sample_rate_hz = 0;

    double duration_seconds() const {
        return sample_rate_hz > 0
                   ? static_cast<double>(samples.size()) / sample_rate_hz
                   : 0.0;
    }
    /// Whole seconds fully covered by samples.
    int whole_seconds() const {
        return sample_rate_hz > 0
                   ? static_cast<int>(samples.size() / static_cast<std::size_t>(sample_rate_hz))
                   : 0;
    }
};

/// Reads a RIFF/WAVE file holding 16-bit little-endian PCM, mono or stereo.
/// Stereo is downmixed by channel averaging; samples are scaled by 1/32768.
/// Throws FormatError on anything else.
PcmSignal read_wav(const std::filesystem::path& path);

/// Writes mono 16-bit PCM; samples are clamped to [-1, 1] and scaled by 32767.
void write_wav(const PcmSignal& signal, const std::filesystem::path& path);

/// Linear-interpolation resampler. Adequate plumbing for integer-second
/// chunks; no band limiting.
PcmSignal resample_linear(const PcmSignal& signal, int target_rate_hz);

} // namespace hldet
