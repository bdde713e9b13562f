#pragma once

// Parametric loudspeaker -> air -> microphone channel. This is the ground
// truth replay path: it produces the paired simulator training data and is
// the over-the-air evaluation channel. Never differentiated through.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ota/audio.hpp"

namespace ota {

struct ChannelParams {
  double gain = 0.9;
  std::vector<double> impulse_response;
  double a1 = 1.0;   // soft clipping a1*x + a3*x^3
  double a3 = -0.2;
  std::optional<double> noise_snr_db = 30.0;  // nullopt disables noise
  std::uint64_t seed = 0;

  // Throws std::invalid_argument when an invariant is violated.
  void validate() const;

  // 64 taps: 7 kHz low-pass followed by a decaying 1-3 ms reflection tail.
  static std::vector<double> default_impulse_response();
  static ChannelParams defaults(std::uint64_t seed);
  // gain 1, delta IR, linear, no noise.
  static ChannelParams identity();
};

void to_json(nlohmann::json& j, const ChannelParams& p);
void from_json(const nlohmann::json& j, ChannelParams& p);

// add_noise(convolve(nonlinearity(gain * w))), truncated to len(w).
// Bit-deterministic in (w, p, trial_seed).
Waveform apply_channel(const Waveform& w, const ChannelParams& p, std::uint64_t trial_seed);

enum class Split { train, validation };
std::string to_string(Split s);
Split split_from_string(const std::string& s);

struct ReplayPair {
  Waveform clean;
  Waveform replayed;
  Split split = Split::train;
  std::size_t source_index = 0;
  std::uint64_t trial_seed = 0;
};

struct PairedReplayDataset {
  std::vector<ReplayPair> pairs;

  std::vector<const ReplayPair*> select(Split s) const;
  // Digest over the clean/replayed sample data, splits and seeds.
  std::string digest() const;
};

// Sources are split disjointly between train and validation, then cycled to
// fill n_train / n_val pairs; each pair has its own trial seed from p.seed.
PairedReplayDataset generate_paired_dataset(const std::vector<Waveform>& sources, const ChannelParams& p,
                                            std::size_t n_train, std::size_t n_val);

// Directory of WAV pairs plus index.csv (clean_path,replayed_path,split,trial_seed).
void save_paired_dataset(const PairedReplayDataset& d, const std::filesystem::path& dir);
PairedReplayDataset load_paired_dataset(const std::filesystem::path& dir);

}  // namespace ota
