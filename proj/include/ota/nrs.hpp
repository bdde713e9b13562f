#pragma once

// Neural replay simulator: a 1-D Wave-U-Net trained on paired clean/replayed
// audio, plus the loss zoo and discriminators used to train it.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ota/asv.hpp"
#include "ota/audio.hpp"
#include "ota/channel.hpp"
#include "ota/nn.hpp"

namespace ota {

struct NRSConfig {
  int depth = 6;
  int base_channels = 8;
  int growth = 4;
  int down_kernel = 15;
  int up_kernel = 5;
  int downsample_factor = 2;
  int fir_taps = 64;  // causal linear skip from input to output; 0 disables
  std::uint64_t seed = 0;

  void validate() const;
  int block() const;  // downsample_factor^depth
};

void to_json(nlohmann::json& j, const NRSConfig& c);
void from_json(const nlohmann::json& j, NRSConfig& c);

class NRSModel {
 public:
  explicit NRSModel(NRSConfig cfg);

  const NRSConfig& config() const { return cfg_; }

  // [1 x batch*len] -> same shape. Segments are zero-padded to a multiple of
  // block() internally and trimmed back.
  ag::Var forward(const ag::Var& wave) const;
  Waveform forward(const Waveform& w) const;

  nn::ParamSet& params() { return params_; }
  const nn::ParamSet& params() const { return params_; }
  void freeze();
  bool frozen() const { return frozen_; }

 private:
  NRSConfig cfg_;
  nn::ParamSet params_;
  std::vector<nn::Conv1d> down_;
  nn::Conv1d bottleneck_;
  std::vector<nn::Conv1d> up_;
  nn::Conv1d out_;
  ag::Var fir_;
  bool frozen_ = false;
};

// ---------------------------------------------------------------- losses

// Mel L1 uses the default 80-band config unless told otherwise.
ag::Var loss_mel_l1(const ag::Var& pred, const ag::Var& target, const SpectralConfig& cfg = {});
ag::Var loss_wav_l1(const ag::Var& pred, const ag::Var& target);
ag::Var loss_wav_l2(const ag::Var& pred, const ag::Var& target);

// |score(target, enroll) - score(pred, enroll)| averaged over the batch.
// enroll_embeddings: [D x batch], one drawn enrollment per segment.
ag::Var loss_asv(const ag::Var& pred, const ag::Var& target, const SpeakerEmbedder& embedder,
                 const Eigen::MatrixXd& enroll_embeddings);

struct DiscriminatorConfig {
  std::vector<int> mpd_periods{2, 3, 5, 7, 11};
  std::vector<int> msstft_fft{512, 1024, 2048};  // hop n/4, window n
  int channels = 16;
  std::uint64_t seed = 0;

  void validate() const;
};

void to_json(nlohmann::json& j, const DiscriminatorConfig& c);
void from_json(const nlohmann::json& j, DiscriminatorConfig& c);

struct DiscriminatorOutput {
  ag::Var score;
  std::vector<ag::Var> features;
};

class DiscriminatorBank {
 public:
  explicit DiscriminatorBank(DiscriminatorConfig cfg);

  std::vector<DiscriminatorOutput> mpd(const ag::Var& wave) const;
  std::vector<DiscriminatorOutput> msstft(const ag::Var& wave) const;

  const DiscriminatorConfig& config() const { return cfg_; }
  nn::ParamSet& params() { return params_; }

 private:
  struct Stack {
    std::vector<nn::Conv1d> layers;
    nn::Conv1d head;
  };
  DiscriminatorConfig cfg_;
  nn::ParamSet params_;
  std::vector<Stack> mpd_;
  std::vector<Stack> msstft_;

  static DiscriminatorOutput run(const Stack& s, ag::Var h);
};

struct GanWeights {
  double mel = 45.0;
  double mpd = 1.0;
  double msstft = 1.0;
  double feature_matching = 2.0;  // inside each discriminator term
};

struct GanLoss {
  ag::Var generator;
  ag::Var discriminator;
  double mel = 0.0;
  double mpd = 0.0;     // adversarial + feature matching, unweighted
  double msstft = 0.0;
};

// Least-squares GAN with L1 feature matching. The discriminator loss sees
// pred detached; the generator loss backpropagates into pred only if the
// bank's parameters are frozen by the caller.
GanLoss loss_gan(const ag::Var& pred, const ag::Var& target, const DiscriminatorBank& d, const GanWeights& w,
                 const SpectralConfig& mel_cfg = {});
ag::Var gan_discriminator_loss(const ag::Var& pred, const ag::Var& target, const DiscriminatorBank& d);

// ---------------------------------------------------------------- training

enum class LossKind { mel_l1, wav_l1, wav_l2, gan, mel_l1_plus_wav_l1, mel_l1_plus_asv, asv };
std::string to_string(LossKind k);
LossKind loss_kind_from_string(const std::string& s);
std::vector<LossKind> ablation_loss_kinds();  // the six compared configurations

struct LossConfig {
  LossKind kind = LossKind::mel_l1;
  GanWeights gan;
  // Weights of (mel, other) for the combined kinds.
  double combo_mel = 1.0;
  double combo_other = 1.0;
  SpectralConfig mel;
  DiscriminatorConfig discriminators;
  // asv kinds only: frozen embedder and its 100-utterance enrollment pool.
  const SpeakerEmbedder* embedder = nullptr;
  std::vector<Waveform> enroll_pool;

  void validate() const;
};

nlohmann::json loss_config_to_json(const LossConfig& c);
// The embedder and pool are runtime references and are not serialised.
LossConfig loss_config_from_json(const nlohmann::json& j);

struct LossTerm {
  std::string name;
  double weight = 1.0;
  double value = 0.0;  // unweighted
};

struct LossBreakdown {
  ag::Var total;
  std::vector<LossTerm> terms;
};

// Reconstruction objective for every kind except gan, whose generator
// objective comes from loss_gan. enroll: [D x batch] drawn embeddings, only
// read by the asv kinds.
LossBreakdown reconstruction_loss(const LossConfig& c, const ag::Var& pred, const ag::Var& target,
                                  const Eigen::MatrixXd& enroll);

struct NRSTrainOptions {
  int max_epochs = 200;
  int patience = 10;
  int batch_size = 16;
  int crop_samples = 8192;
  double learning_rate = 1e-3;
  double discriminator_lr = 2e-4;
  std::uint64_t seed = 0;
  // Start the FIR skip from a least-squares fit to the training pairs.
  bool fit_fir = true;
  bool verbose = false;
};

struct EpochRecord {
  int epoch = 0;
  double train_loss = 0.0;
  double validation_loss = 0.0;
  std::vector<LossTerm> terms;  // mean unweighted training terms
};

struct NRSTrainResult {
  NRSModel model;
  std::vector<EpochRecord> history;
  int best_epoch = 0;
  double best_validation_loss = 0.0;
  double identity_validation_loss = 0.0;
};

// Validation metric of a loss kind on the dataset's validation split, with
// `map` as the simulator (identity when empty). For gan this is the mel term.
double validation_loss(const LossConfig& c, const PairedReplayDataset& data,
                       const std::function<ag::Var(const ag::Var&)>& map, std::uint64_t seed);

NRSTrainResult train_nrs(const PairedReplayDataset& data, const LossConfig& cfg, const NRSConfig& arch,
                         const NRSTrainOptions& opts);

nlohmann::json nrs_to_json(const NRSModel& m);
NRSModel nrs_from_json(const nlohmann::json& j);

}  // namespace ota
