#pragma once

// Toy speaker verification: differentiable embedders, cosine scoring,
// EER-based threshold calibration.

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "ota/audio.hpp"
#include "ota/nn.hpp"

namespace ota {

enum class Architecture { mel_net, raw_net };
enum class InputModality { mel, waveform };

std::string to_string(Architecture a);
Architecture architecture_from_string(const std::string& s);

inline constexpr double kMinUtteranceSeconds = 0.5;

struct EmbedderConfig {
  Architecture architecture = Architecture::mel_net;
  int embedding_dim = 128;
  int num_classes = 2;
  // Front end of mel_net.
  SpectralConfig features{512, 400, 160, 40, 20.0, 7600.0};
  std::uint64_t seed = 0;
};

class SpeakerEmbedder {
 public:
  explicit SpeakerEmbedder(EmbedderConfig cfg);

  const EmbedderConfig& config() const { return cfg_; }
  Architecture architecture() const { return cfg_.architecture; }
  InputModality input_modality() const;
  int embedding_dim() const { return cfg_.embedding_dim; }

  // [1 x batch*len] -> [embedding_dim x batch]. Throws for inputs under 0.5 s.
  ag::Var embed(const ag::Var& wave) const;
  // Speaker-class logits from an embedding batch.
  ag::Var classify(const ag::Var& embedding) const;

  Eigen::VectorXd embed(const Waveform& w) const;

  nn::ParamSet& params() { return params_; }
  const nn::ParamSet& params() const { return params_; }
  void freeze() { params_.set_trainable(false); }

 private:
  EmbedderConfig cfg_;
  nn::ParamSet params_;
  std::vector<nn::Conv1d> convs_;
  nn::Linear embedding_;
  nn::Linear classifier_;
};

// Cosine similarity; throws std::invalid_argument on a zero-norm input.
double cosine_score(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

struct Decision {
  bool positive = false;
  double score = 0.0;
};

// Positive iff score >= tau.
Decision decide(double score, double tau);
Decision verify(const SpeakerEmbedder& m, const Waveform& x, const Waveform& x_enroll, double tau);

struct EerResult {
  double eer = 0.0;
  double threshold = 0.0;
};

// FAR/FRR crossing over every achievable operating point (thresholds at
// distinct-score midpoints plus one below/above the range), linearly
// interpolated between the two points that bracket FAR = FRR.
// labels: 1 = same speaker, 0 = different.
EerResult compute_eer(std::span<const double> scores, std::span<const int> labels);

struct VerificationThreshold {
  double tau = 0.0;
  std::string calibration = "eer_point";
  std::size_t trial_count = 0;
  double eer = 0.0;
};

struct Trial {
  const Waveform* enroll = nullptr;
  const Waveform* test = nullptr;
  bool same = false;
};
using TrialList = std::vector<Trial>;

inline constexpr std::size_t kMinTrialsPerClass = 50;

VerificationThreshold calibrate_threshold(const SpeakerEmbedder& m, const TrialList& trials);
// Scores precomputed by the caller; same validation rules.
VerificationThreshold calibrate_threshold(std::span<const double> scores, std::span<const int> labels);

struct LabeledUtterance {
  Waveform audio;
  int speaker = 0;
};

struct EmbedderTrainOptions {
  int epochs = 30;
  int batch_size = 16;
  int crop_samples = 12000;
  double learning_rate = 2e-3;
  std::uint64_t seed = 0;
  int embedding_dim = 128;
  bool verbose = false;
};

// Classification training; the returned embedder is frozen.
SpeakerEmbedder train_embedder(const std::vector<LabeledUtterance>& corpus, Architecture arch,
                               const EmbedderTrainOptions& opts);

// Builds a balanced trial list from utterances of distinct speakers.
TrialList make_trials(const std::vector<LabeledUtterance>& utts, std::size_t per_class, std::uint64_t seed);

nlohmann::json embedder_to_json(const SpeakerEmbedder& m);
SpeakerEmbedder embedder_from_json(const nlohmann::json& j);

}  // namespace ota
