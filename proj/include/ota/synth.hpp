#pragma once

// Synthetic multi-speaker corpus: source-filter vowel babble with per-speaker
// pitch, vocal-tract length and formant idiosyncrasies. Stands in for a
// bonafide speech corpus when none is supplied.

#include <array>
#include <cstdint>
#include <filesystem>
#include <random>

#include "ota/audio.hpp"

namespace ota {

struct SpeakerProfile {
  double f0 = 120.0;              // Hz
  double vtl_scale = 1.0;         // >1 means a longer tract, lower formants
  std::array<double, 4> formant_offset{};  // relative, per formant
  double bandwidth_scale = 1.0;
  double tilt = 0.9;              // one-pole source low-pass coefficient
  double breathiness = 0.05;
  double jitter = 0.01;           // relative period perturbation
  double open_quotient = 0.5;
};

SpeakerProfile random_speaker(std::mt19937_64& rng);

// Roughly `seconds` long: vowel syllables separated by short pauses over a
// room-noise floor, peak-normalised to a random level in [0.3, 0.6].
Waveform synthesize_utterance(const SpeakerProfile& spk, double seconds, std::mt19937_64& rng,
                              double noise_floor = 3e-3);

struct SynthCorpusOptions {
  int speakers = 40;
  int utterances = 50;
  double min_seconds = 0.9;
  double max_seconds = 1.2;
  double noise_floor = 3e-3;
  std::uint64_t seed = 0;
};

// Writes dir/spkNNN/uttMMM.wav.
void write_synthetic_corpus(const std::filesystem::path& dir, const SynthCorpusOptions& opts);

}  // namespace ota
