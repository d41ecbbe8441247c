// Copyright 2026 The Quanvo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "quanvo/audio.hpp"
#include "quanvo/image.hpp"

namespace quanvo::dsp {

/// Dense real matrix, row-major.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> v;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), v(r * c, 0.0) {}

    double& at(std::size_t r, std::size_t c) { return v[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return v[r * cols + c]; }
};

/// Dense complex matrix, row-major. STFT output is (bins x frames).
struct CMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::complex<double>> v;

    CMatrix() = default;
    CMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), v(r * c) {}

    std::complex<double>& at(std::size_t r, std::size_t c) { return v[r * cols + c]; }
    std::complex<double> at(std::size_t r, std::size_t c) const { return v[r * cols + c]; }
};

enum class WindowKind { Hann, Hamming };

struct StftParams {
    std::size_t window_size = 2048;
    std::size_t hop_length = 512;
    std::size_t n_fft = 2048;
    WindowKind window_kind = WindowKind::Hann;
};

enum class RefPower { MaxOfSpectrogram, Fixed };

struct MelParams {
    std::size_t n_mels = 128;
    double f_min = 0.0;
    double f_max = 0.0; // 0 resolves to sample_rate / 2
    RefPower ref = RefPower::MaxOfSpectrogram;
    double ref_value = 1.0; // used when ref == Fixed
};

/// Everything needed to turn a clip into the fixed-size model input.
struct DspConfig {
    StftParams stft;
    MelParams mel;
    double clip_duration_s = 2.0;
    std::size_t image_height = 40;
    std::size_t image_width = 100;
};

double hz_to_mel(double f);
double mel_to_hz(double m);

/// w[k] = 0.5 * (1 - cos(2*pi*k / (n-1))); [1.0] for n == 1.
std::vector<double> hann_window(std::size_t n);
/// w[k] = 0.54 - 0.46 * cos(2*pi*k / (n-1)); [1.0] for n == 1.
std::vector<double> hamming_window(std::size_t n);
std::vector<double> make_window(WindowKind kind, std::size_t n);

/// Short-time Fourier transform without center padding. Output has
/// n_fft/2+1 rows and 1 + floor((len - window_size) / hop) columns; column
/// t is the DFT of the windowed segment starting at t * hop.
CMatrix stft(const AudioClip& clip, const StftParams& p);

/// Triangular mel filterbank, (n_mels x n_fft/2+1). Filter peaks sit at
/// mel-spaced center frequencies; a filter with no FFT bin in its support
/// raises ConfigError naming the filter index.
Matrix mel_filterbank(int sample_rate, const MelParams& p, std::size_t n_fft);

/// Center frequencies (Hz) of the filters mel_filterbank would build.
std::vector<double> mel_center_frequencies(int sample_rate, const MelParams& p);

/// 10*log10(max(S, eps)/ref), floored at 80 dB below the maximum.
Matrix power_to_db(const Matrix& power, const MelParams& p);

/// power_to_db(filterbank . |stft|^2); rows are mel bands, low to high.
Matrix mel_spectrogram(const AudioClip& clip, const StftParams& sp, const MelParams& mp);

/// Area-average resample to (target_h x target_w x 1); falls back to
/// bilinear interpolation when the target exceeds the source on an axis.
ImageTensor resize_image(const Matrix& src, std::size_t target_h = 40,
                         std::size_t target_w = 100);

/// (x - min) / (max - min); all zeros when the image is constant.
ImageTensor normalize01(const ImageTensor& img);

/// Full pipeline: pad/truncate, mel spectrogram, resize, normalize.
ImageTensor clip_to_image(const AudioClip& clip, const DspConfig& cfg);

} // namespace quanvo::dsp
