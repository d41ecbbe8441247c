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

#include "quanvo/dsp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "quanvo/errors.hpp"

namespace quanvo::dsp {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDbEps = 1e-10;
constexpr double kDbRange = 80.0;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 FFT, in place. Used for power-of-two sizes; other
// sizes take the quadratic DFT path below.
void fft_radix2(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) {
            j ^= bit;
        }
        j ^= bit;
        if (i < j) {
            std::swap(a[i], a[j]);
        }
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * kPi / static_cast<double>(len);
        const std::complex<double> wn = std::polar(1.0, ang);
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w{1.0, 0.0};
            for (std::size_t k = 0; k < len / 2; ++k) {
                const auto u = a[i + k];
                const auto t = a[i + k + len / 2] * w;
                a[i + k] = u + t;
                a[i + k + len / 2] = u - t;
                w *= wn;
            }
        }
    }
}

void dft_naive(const std::vector<std::complex<double>>& in,
               std::vector<std::complex<double>>& out) {
    const std::size_t n = in.size();
    out.assign(n, {0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) {
            const double ang = -2.0 * kPi * static_cast<double>(k) * static_cast<double>(j) /
                               static_cast<double>(n);
            acc += in[j] * std::polar(1.0, ang);
        }
        out[k] = acc;
    }
}

void validate(const StftParams& p) {
    if (p.window_size == 0 || p.hop_length == 0 || p.n_fft == 0) {
        throw std::invalid_argument("stft parameters must be positive");
    }
    if (p.window_size > p.n_fft) {
        throw std::invalid_argument("window_size must be <= n_fft");
    }
    if (p.hop_length > p.window_size) {
        throw std::invalid_argument("hop_length must be <= window_size");
    }
}

double resolve_f_max(int sample_rate, const MelParams& p) {
    const double nyquist = sample_rate / 2.0;
    const double f_max = p.f_max > 0.0 ? p.f_max : nyquist;
    if (p.n_mels < 1) {
        throw std::invalid_argument("n_mels must be >= 1");
    }
    if (!(p.f_min >= 0.0) || !(p.f_min < f_max) || !(f_max <= nyquist)) {
        throw std::invalid_argument("mel range must satisfy 0 <= f_min < f_max <= rate/2");
    }
    return f_max;
}

} // namespace

double hz_to_mel(double f) { return 2595.0 * std::log10(1.0 + f / 700.0); }

double mel_to_hz(double m) { return 700.0 * (std::pow(10.0, m / 2595.0) - 1.0); }

std::vector<double> hann_window(std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("window length must be >= 1");
    }
    std::vector<double> w(n, 1.0);
    if (n == 1) {
        return w;
    }
    for (std::size_t k = 0; k < n; ++k) {
        w[k] = 0.5 * (1.0 - std::cos(2.0 * kPi * static_cast<double>(k) /
                                     static_cast<double>(n - 1)));
    }
    return w;
}

std::vector<double> hamming_window(std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("window length must be >= 1");
    }
    std::vector<double> w(n, 1.0);
    if (n == 1) {
        return w;
    }
    for (std::size_t k = 0; k < n; ++k) {
        w[k] = 0.54 - 0.46 * std::cos(2.0 * kPi * static_cast<double>(k) /
                                      static_cast<double>(n - 1));
    }
    return w;
}

std::vector<double> make_window(WindowKind kind, std::size_t n) {
    return kind == WindowKind::Hann ? hann_window(n) : hamming_window(n);
}

CMatrix stft(const AudioClip& clip, const StftParams& p) {
    validate(p);
    const std::size_t len = clip.samples.size();
    if (len < p.window_size) {
        throw std::invalid_argument("clip (" + std::to_string(len) +
                                    " samples) is shorter than one window (" +
                                    std::to_string(p.window_size) + ")");
    }

    const std::size_t n_frames = 1 + (len - p.window_size) / p.hop_length;
    const std::size_t n_bins = p.n_fft / 2 + 1;
    const std::vector<double> window = make_window(p.window_kind, p.window_size);

    CMatrix out(n_bins, n_frames);
    std::vector<std::complex<double>> frame(p.n_fft);
    std::vector<std::complex<double>> scratch;
    for (std::size_t t = 0; t < n_frames; ++t) {
        const std::size_t start = t * p.hop_length;
        for (std::size_t j = 0; j < p.window_size; ++j) {
            frame[j] = clip.samples[start + j] * window[j];
        }
        std::fill(frame.begin() + static_cast<std::ptrdiff_t>(p.window_size), frame.end(),
                  std::complex<double>{0.0, 0.0});
        if (is_power_of_two(p.n_fft)) {
            fft_radix2(frame);
            for (std::size_t k = 0; k < n_bins; ++k) {
                out.at(k, t) = frame[k];
            }
            // frame is reused next round; rebuilt fully above.
        } else {
            dft_naive(frame, scratch);
            for (std::size_t k = 0; k < n_bins; ++k) {
                out.at(k, t) = scratch[k];
            }
        }
    }
    return out;
}

std::vector<double> mel_center_frequencies(int sample_rate, const MelParams& p) {
    const double f_max = resolve_f_max(sample_rate, p);
    const double m_lo = hz_to_mel(p.f_min);
    const double m_hi = hz_to_mel(f_max);
    std::vector<double> centers(p.n_mels);
    for (std::size_t m = 0; m < p.n_mels; ++m) {
        const double mel = m_lo + (m_hi - m_lo) * static_cast<double>(m + 1) /
                                      static_cast<double>(p.n_mels + 1);
        centers[m] = mel_to_hz(mel);
    }
    return centers;
}

Matrix mel_filterbank(int sample_rate, const MelParams& p, std::size_t n_fft) {
    const double f_max = resolve_f_max(sample_rate, p);
    const std::size_t n_bins = n_fft / 2 + 1;
    const double m_lo = hz_to_mel(p.f_min);
    const double m_hi = hz_to_mel(f_max);

    // n_mels + 2 breakpoints; filter m spans [pt[m], pt[m+2]] peaking at pt[m+1].
    std::vector<double> pts(p.n_mels + 2);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        pts[i] = mel_to_hz(m_lo + (m_hi - m_lo) * static_cast<double>(i) /
                                      static_cast<double>(p.n_mels + 1));
    }

    Matrix fb(p.n_mels, n_bins);
    for (std::size_t m = 0; m < p.n_mels; ++m) {
        const double lower = pts[m];
        const double center = pts[m + 1];
        const double upper = pts[m + 2];
        bool any = false;
        for (std::size_t k = 0; k < n_bins; ++k) {
            const double f = static_cast<double>(k) * sample_rate / static_cast<double>(n_fft);
            const double rise = (f - lower) / (center - lower);
            const double fall = (upper - f) / (upper - center);
            const double w = std::max(0.0, std::min(rise, fall));
            fb.at(m, k) = w;
            any = any || w > 0.0;
        }
        if (!any) {
            throw ConfigError("mel filter " + std::to_string(m) +
                              " has no FFT bin in its support; lower n_mels or raise n_fft");
        }
    }
    return fb;
}

Matrix power_to_db(const Matrix& power, const MelParams& p) {
    double ref = p.ref_value;
    if (p.ref == RefPower::MaxOfSpectrogram) {
        ref = kDbEps;
        for (const double s : power.v) {
            ref = std::max(ref, s);
        }
    }
    if (!(ref > 0.0)) {
        throw std::invalid_argument("dB reference must be positive");
    }

    Matrix out(power.rows, power.cols);
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < power.v.size(); ++i) {
        if (power.v[i] < 0.0) {
            throw std::invalid_argument("power spectrogram entries must be >= 0");
        }
        out.v[i] = 10.0 * std::log10(std::max(power.v[i], kDbEps) / ref);
        top = std::max(top, out.v[i]);
    }
    const double floor = top - kDbRange;
    for (double& x : out.v) {
        x = std::max(x, floor);
    }
    return out;
}

Matrix mel_spectrogram(const AudioClip& clip, const StftParams& sp, const MelParams& mp) {
    const CMatrix spec = stft(clip, sp);
    const std::size_t n_bins = spec.rows;
    const std::size_t n_frames = spec.cols;

    Matrix power(n_bins, n_frames);
    for (std::size_t i = 0; i < spec.v.size(); ++i) {
        power.v[i] = std::norm(spec.v[i]);
    }

    const Matrix fb = mel_filterbank(clip.sample_rate, mp, sp.n_fft);
    Matrix mel(mp.n_mels, n_frames);
    for (std::size_t m = 0; m < fb.rows; ++m) {
        for (std::size_t k = 0; k < n_bins; ++k) {
            const double w = fb.at(m, k);
            if (w == 0.0) {
                continue;
            }
            for (std::size_t t = 0; t < n_frames; ++t) {
                mel.at(m, t) += w * power.at(k, t);
            }
        }
    }
    return power_to_db(mel, mp);
}

ImageTensor resize_image(const Matrix& src, std::size_t target_h, std::size_t target_w) {
    if (src.rows == 0 || src.cols == 0) {
        throw std::invalid_argument("resize_image: source is empty");
    }
    if (target_h == 0 || target_w == 0) {
        throw std::invalid_argument("resize_image: target must be positive");
    }

    ImageTensor out(target_h, target_w, 1);

    if (target_h > src.rows || target_w > src.cols) {
        // Upsampling on some axis: bilinear at half-pixel-aligned centers.
        for (std::size_t i = 0; i < target_h; ++i) {
            double y = (static_cast<double>(i) + 0.5) * src.rows / target_h - 0.5;
            y = std::clamp(y, 0.0, static_cast<double>(src.rows - 1));
            const auto y0 = static_cast<std::size_t>(y);
            const std::size_t y1 = std::min(y0 + 1, src.rows - 1);
            const double fy = y - static_cast<double>(y0);
            for (std::size_t j = 0; j < target_w; ++j) {
                double x = (static_cast<double>(j) + 0.5) * src.cols / target_w - 0.5;
                x = std::clamp(x, 0.0, static_cast<double>(src.cols - 1));
                const auto x0 = static_cast<std::size_t>(x);
                const std::size_t x1 = std::min(x0 + 1, src.cols - 1);
                const double fx = x - static_cast<double>(x0);
                out.at(i, j, 0) = (1 - fy) * ((1 - fx) * src.at(y0, x0) + fx * src.at(y0, x1)) +
                                  fy * ((1 - fx) * src.at(y1, x0) + fx * src.at(y1, x1));
            }
        }
        return out;
    }

    // Area averaging: output cell (i, j) is the mean of the source region
    // [i*H/th, (i+1)*H/th) x [j*W/tw, (j+1)*W/tw), partial cells weighted
    // by their overlap.
    for (std::size_t i = 0; i < target_h; ++i) {
        const double y0 = static_cast<double>(i) * src.rows / target_h;
        const double y1 = static_cast<double>(i + 1) * src.rows / target_h;
        for (std::size_t j = 0; j < target_w; ++j) {
            const double x0 = static_cast<double>(j) * src.cols / target_w;
            const double x1 = static_cast<double>(j + 1) * src.cols / target_w;

            double acc = 0.0;
            const auto r_begin = static_cast<std::size_t>(y0);
            const auto r_end = std::min(src.rows, static_cast<std::size_t>(std::ceil(y1)));
            const auto c_begin = static_cast<std::size_t>(x0);
            const auto c_end = std::min(src.cols, static_cast<std::size_t>(std::ceil(x1)));
            for (std::size_t r = r_begin; r < r_end; ++r) {
                const double wy = std::min(y1, static_cast<double>(r + 1)) -
                                  std::max(y0, static_cast<double>(r));
                for (std::size_t c = c_begin; c < c_end; ++c) {
                    const double wx = std::min(x1, static_cast<double>(c + 1)) -
                                      std::max(x0, static_cast<double>(c));
                    acc += wy * wx * src.at(r, c);
                }
            }
            out.at(i, j, 0) = acc / ((y1 - y0) * (x1 - x0));
        }
    }
    return out;
}

ImageTensor normalize01(const ImageTensor& img) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const double x : img.values) {
        if (!std::isfinite(x)) {
            throw std::invalid_argument("normalize01: image contains non-finite values");
        }
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    ImageTensor out = img;
    if (hi == lo) {
        std::fill(out.values.begin(), out.values.end(), 0.0);
        return out;
    }
    const double scale = 1.0 / (hi - lo);
    for (double& x : out.values) {
        x = (x - lo) * scale;
    }
    return out;
}

ImageTensor clip_to_image(const AudioClip& clip, const DspConfig& cfg) {
    const AudioClip fixed = pad_or_truncate(clip, cfg.clip_duration_s);
    const Matrix mel = mel_spectrogram(fixed, cfg.stft, cfg.mel);
    const ImageTensor resized = resize_image(mel, cfg.image_height, cfg.image_width);
    return normalize01(resized);
}

} // namespace quanvo::dsp
