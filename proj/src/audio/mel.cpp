#include "hldet/audio/mel.hpp"

#include "hldet/common.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hldet {

namespace {

constexpr double kLogEps = 1e-10; // added before log to avoid log(0)

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

/// In-place iterative radix-2 FFT on interleaved-free re/im arrays.
/// n must be a power of two (guaranteed by MelConfig::validate).
void fft_radix2(std::vector<double>& re, std::vector<double>& im) {
    const std::size_t n = re.size();
    // bit reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) {
            std::swap(re[i], re[j]);
            std::swap(im[i], im[j]);
        }
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * M_PI / static_cast<double>(len);
        const double wr = std::cos(ang);
        const double wi = std::sin(ang);
        for (std::size_t i = 0; i < n; i += len) {
            double cr = 1.0, ci = 0.0;
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::size_t a = i + k;
                const std::size_t b = i + k + len / 2;
                const double tr = re[b] * cr - im[b] * ci;
                const double ti = re[b] * ci + im[b] * cr;
                re[b] = re[a] - tr;
                im[b] = im[a] - ti;
                re[a] += tr;
                im[a] += ti;
                const double ncr = cr * wr - ci * wi;
                ci = cr * wi + ci * wr;
                cr = ncr;
            }
        }
    }
}

} // namespace

void MelConfig::validate() const {
    if (sample_rate_hz <= 0) throw ConfigError("MelConfig: sample_rate_hz must be positive");
    if (!is_power_of_two(fft_size)) throw ConfigError("MelConfig: fft_size must be a power of two");
    if (hop_size < 1) throw ConfigError("MelConfig: hop_size must be >= 1");
    if (mel_bins < 2) throw ConfigError("MelConfig: mel_bins must be >= 2");
    if (fmin_hz < 0.0 || fmin_hz >= fmax_hz || fmax_hz > sample_rate_hz / 2.0) {
        throw ConfigError("MelConfig: need 0 <= fmin < fmax <= sample_rate/2");
    }
    if (db_floor >= 0.0) throw ConfigError("MelConfig: db_floor must be negative");
}

int MelConfig::frame_count(std::size_t num_samples) const {
    if (num_samples < static_cast<std::size_t>(fft_size)) return 0;
    return 1 + static_cast<int>((num_samples - static_cast<std::size_t>(fft_size)) /
                                static_cast<std::size_t>(hop_size));
}

double hz_to_mel(double f_hz) {
    if (f_hz < 0.0) throw std::invalid_argument("hz_to_mel: negative frequency");
    return 2595.0 * std::log10(1.0 + f_hz / 700.0);
}

double mel_to_hz(double mel) {
    return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

Matrix mel_filterbank(const MelConfig& config) {
    config.validate();
    const int num_bins = config.fft_size / 2 + 1;
    const double bin_hz = static_cast<double>(config.sample_rate_hz) / config.fft_size;

    // mel-equispaced grid: edge, mel_bins centers, edge
    const double mel_lo = hz_to_mel(config.fmin_hz);
    const double mel_hi = hz_to_mel(config.fmax_hz);
    std::vector<double> grid_mel(static_cast<std::size_t>(config.mel_bins) + 2);
    for (std::size_t i = 0; i < grid_mel.size(); ++i) {
        grid_mel[i] = mel_lo + (mel_hi - mel_lo) * static_cast<double>(i) /
                                   static_cast<double>(config.mel_bins + 1);
    }
    for (std::size_t i = 0; i + 1 < grid_mel.size(); ++i) {
        const int b0 = static_cast<int>(mel_to_hz(grid_mel[i]) / bin_hz);
        const int b1 = static_cast<int>(mel_to_hz(grid_mel[i + 1]) / bin_hz);
        if (b0 == b1) {
            throw ConfigError("mel_filterbank: mel_bins too dense for the FFT resolution");
        }
    }

    Matrix bank(config.mel_bins, num_bins);
    for (int m = 0; m < config.mel_bins; ++m) {
        const double left = grid_mel[static_cast<std::size_t>(m)];
        const double center = grid_mel[static_cast<std::size_t>(m) + 1];
        const double right = grid_mel[static_cast<std::size_t>(m) + 2];
        for (int b = 0; b < num_bins; ++b) {
            const double mel = hz_to_mel(b * bin_hz);
            double w = 0.0;
            if (mel > left && mel < center) {
                w = (mel - left) / (center - left);
            } else if (mel == center) {
                w = 1.0;
            } else if (mel > center && mel < right) {
                w = (right - mel) / (right - center);
            }
            bank.at(m, b) = w;
        }
    }
    return bank;
}

Matrix power_spectrogram(const PcmSignal& signal, const MelConfig& config) {
    config.validate();
    if (signal.samples.size() < static_cast<std::size_t>(config.fft_size)) {
        throw std::invalid_argument("power_spectrogram: signal shorter than fft_size");
    }
    const int n = config.fft_size;
    const int num_bins = n / 2 + 1;
    const int frames = config.frame_count(signal.samples.size());

    std::vector<double> window(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        window[static_cast<std::size_t>(i)] =
            0.5 - 0.5 * std::cos(2.0 * M_PI * i / static_cast<double>(n - 1));
    }

    Matrix power(num_bins, frames);
    std::vector<double> re(static_cast<std::size_t>(n));
    std::vector<double> im(static_cast<std::size_t>(n));
    for (int t = 0; t < frames; ++t) {
        const std::size_t offset = static_cast<std::size_t>(t) * config.hop_size;
        for (int i = 0; i < n; ++i) {
            re[static_cast<std::size_t>(i)] =
                signal.samples[offset + static_cast<std::size_t>(i)] *
                window[static_cast<std::size_t>(i)];
            im[static_cast<std::size_t>(i)] = 0.0;
        }
        fft_radix2(re, im);
        for (int b = 0; b < num_bins; ++b) {
            power.at(b, t) = re[static_cast<std::size_t>(b)] * re[static_cast<std::size_t>(b)] +
                             im[static_cast<std::size_t>(b)] * im[static_cast<std::size_t>(b)];
        }
    }
    return power;
}

MelSpectrogram mel_spectrogram(const PcmSignal& signal, const MelConfig& config) {
    const Matrix power = power_spectrogram(signal, config);
    const Matrix bank = mel_filterbank(config);

    Matrix mel(config.mel_bins, power.cols);
    double max_power = 0.0;
    for (int m = 0; m < mel.rows; ++m) {
        for (int t = 0; t < mel.cols; ++t) {
            double acc = 0.0;
            for (int b = 0; b < power.rows; ++b) {
                acc += bank.at(m, b) * power.at(b, t);
            }
            mel.at(m, t) = acc;
            max_power = std::max(max_power, acc);
        }
    }

    MelSpectrogram out;
    out.config = config;
    out.values = Matrix(mel.rows, mel.cols);
    if (max_power <= 0.0) {
        return out; // zero energy: every cell at the floor
    }
    const double max_db = 10.0 * std::log10(max_power + kLogEps);
    for (int m = 0; m < mel.rows; ++m) {
        for (int t = 0; t < mel.cols; ++t) {
            const double db = 10.0 * std::log10(mel.at(m, t) + kLogEps);
            const double rel = std::clamp(db - max_db, config.db_floor, 0.0);
            out.values.at(m, t) = 1.0 - rel / config.db_floor;
        }
    }
    return out;
}

} // namespace hldet
