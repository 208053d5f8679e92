#pragma once

#include "hldet/audio/wav.hpp"

#include <vector>

namespace hldet {

/// Dense row-major matrix of doubles.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

    double& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
    double at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
};

/// Mel-spectrogram extraction parameters. The defaults target the human
/// voice band of broadcast audio: 16 kHz mono, 1024-point FFT, 512 hop,
/// 64 mel bands over 0-8 kHz, -80 dB dynamic range.
struct MelConfig {
    int sample_rate_hz = 16000;
    int fft_size = 1024;
    int hop_size = 512;
    int mel_bins = 64;
    double fmin_hz = 0.0;
    double fmax_hz = 8000.0;
    double db_floor = -80.0;

    /// Throws ConfigError when any invariant is violated (fft_size must be a
    /// power of two, 0 <= fmin < fmax <= sample_rate/2, mel_bins >= 2,
    /// db_floor < 0, hop_size >= 1).
    void validate() const;

    /// Frames produced for a signal of n samples: 1 + floor((n - fft)/hop).
    int frame_count(std::size_t num_samples) const;
};

/// Normalized mel-spectrogram image: mel_bins x frames, entries in [0, 1]
/// (1.0 at the loudest cell, 0.0 at or below db_floor relative to it).
struct MelSpectrogram {
    Matrix values;
    MelConfig config;
};

/// HTK mel scale: m = 2595 * log10(1 + f/700). Throws std::invalid_argument
/// for negative frequencies.
double hz_to_mel(double f_hz);

/// Inverse of hz_to_mel.
double mel_to_hz(double mel);

/// Triangular filterbank, mel_bins x (fft_size/2 + 1). Each row is a unit-peak
/// triangle, linear in mel coordinate, spanning the neighbouring centers of a
/// mel-equispaced grid over [fmin, fmax]. Throws ConfigError when two adjacent
/// grid points fall on the same FFT bin (mel_bins too large for the FFT
/// resolution).
Matrix mel_filterbank(const MelConfig& config);

/// Hann-windowed one-sided power spectrogram, (fft_size/2 + 1) x frames.
/// Frame t covers samples [t*hop, t*hop + fft_size); no edge padding.
/// Throws std::invalid_argument when the signal is shorter than fft_size.
Matrix power_spectrogram(const PcmSignal& signal, const MelConfig& config);

/// Full chain: power spectrogram -> mel filterbank -> dB relative to the
/// matrix maximum, clamped at db_floor -> affine map onto [0, 1]. A signal
/// with zero energy maps to all zeros (every cell at the floor).
MelSpectrogram mel_spectrogram(const PcmSignal& signal, const MelConfig& config);

} // namespace hldet
