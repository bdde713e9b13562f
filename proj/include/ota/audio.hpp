#pragma once

// Waveforms, WAV I/O and (differentiable) mel features.

#include <cmath>
#include <filesystem>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "ota/autograd.hpp"

namespace ota {

inline constexpr int kSampleRate = 16000;

class AudioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mono audio at kSampleRate; samples nominally in [-1, 1].
struct Waveform {
  Eigen::VectorXd samples;
  int sample_rate = kSampleRate;

  Waveform() = default;
  explicit Waveform(Eigen::VectorXd s, int rate = kSampleRate) : samples(std::move(s)), sample_rate(rate) {}

  Eigen::Index size() const { return samples.size(); }
  double duration() const { return static_cast<double>(samples.size()) / sample_rate; }
  // Throws AudioError on empty or non-finite samples or a foreign rate.
  void validate() const;
  // [1 x n] autodiff value.
  ag::Matrix as_row() const { return samples.transpose(); }
};

struct SpectralConfig {
  int n_fft = 1024;
  int win_length = 1024;
  int hop_length = 256;
  int n_mels = 80;
  double fmin = 0.0;
  double fmax = 8000.0;

  void validate(int sample_rate = kSampleRate) const;
  ag::StftSpec stft() const { return {n_fft, win_length, hop_length}; }
  bool operator==(const SpectralConfig&) const = default;
};

void to_json(nlohmann::json& j, const SpectralConfig& c);
void from_json(const nlohmann::json& j, SpectralConfig& c);

inline constexpr double kMelFloor = 1e-5;

// Log-compressed mel magnitudes, one row per frame.
struct MelSpectrogram {
  Eigen::MatrixXd values;  // [frames x n_mels]
  SpectralConfig config;
};

// HTK mel scale.
template <typename Scalar>
Scalar hz_to_mel(Scalar hz) {
  return Scalar(2595) * std::log10(Scalar(1) + hz / Scalar(700));
}

template <typename Scalar>
Scalar mel_to_hz(Scalar mel) {
  return Scalar(700) * (std::pow(Scalar(10), mel / Scalar(2595)) - Scalar(1));
}

// Centre frequencies (Hz) of the n_mels triangular filters.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> mel_center_frequencies(const SpectralConfig& cfg) {
  const Scalar lo = hz_to_mel<Scalar>(cfg.fmin);
  const Scalar hi = hz_to_mel<Scalar>(cfg.fmax);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> centers(cfg.n_mels);
  for (int m = 0; m < cfg.n_mels; ++m) {
    centers(m) = mel_to_hz<Scalar>(lo + (hi - lo) * Scalar(m + 1) / Scalar(cfg.n_mels + 1));
  }
  return centers;
}

// Triangular filterbank [n_mels x (n_fft/2 + 1)] over power-spectrum bins,
// peak weight 1 at each centre frequency.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> mel_filterbank(const SpectralConfig& cfg,
                                                                      int sample_rate = kSampleRate) {
  const int bins = cfg.n_fft / 2 + 1;
  const Scalar lo = hz_to_mel<Scalar>(cfg.fmin);
  const Scalar hi = hz_to_mel<Scalar>(cfg.fmax);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> edges(cfg.n_mels + 2);
  for (int m = 0; m < cfg.n_mels + 2; ++m) {
    edges(m) = mel_to_hz<Scalar>(lo + (hi - lo) * Scalar(m) / Scalar(cfg.n_mels + 1));
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> fb =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(cfg.n_mels, bins);
  for (int b = 0; b < bins; ++b) {
    const Scalar f = Scalar(b) * Scalar(sample_rate) / Scalar(cfg.n_fft);
    for (int m = 0; m < cfg.n_mels; ++m) {
      const Scalar left = edges(m), center = edges(m + 1), right = edges(m + 2);
      if (f > left && f < center) {
        fb(m, b) = (f - left) / (center - left);
      } else if (f >= center && f < right) {
        fb(m, b) = (right - f) / (right - center);
      }
    }
  }
  return fb;
}

// Differentiable log-mel: [1 x batch*len] waveform -> [n_mels x batch*frames].
ag::Var log_mel(const ag::Var& wave, const SpectralConfig& cfg);

MelSpectrogram mel_spectrogram(const Waveform& w, const SpectralConfig& cfg);

Waveform load_wav(const std::filesystem::path& path);
void save_wav(const Waveform& w, const std::filesystem::path& path);

// Band-limited (windowed-sinc) sample-rate conversion.
Waveform resample(const Waveform& w, int target_rate);

}  // namespace ota
