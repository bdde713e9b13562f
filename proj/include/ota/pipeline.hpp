#pragma once

// Experiment manifest, corpus index and the staged pipeline that binds the
// modules together. Every artifact lives under <out_dir>/<manifest digest>/.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ota/asv.hpp"
#include "ota/attack.hpp"
#include "ota/channel.hpp"
#include "ota/eval.hpp"
#include "ota/nrs.hpp"
#include "ota/synth.hpp"

namespace ota {

struct EmbedderSpec {
  std::string id;
  Architecture architecture = Architecture::mel_net;
  int epochs = 12;
  int embedding_dim = 128;
  int batch_size = 16;
  int crop_samples = 12000;
  double learning_rate = 2e-3;
  double max_eer = 0.15;  // held-out EER must stay below this to proceed
};

struct CorpusSpec {
  std::string path;  // empty: synthesise one into the run directory
  SynthCorpusOptions synthetic;
};

struct SplitSpec {
  int attack_speakers = 10;
  int nrs_source_per_speaker = 7;
  int enroll_pool = 100;
};

struct ReplaySpec {
  std::string sources = "adversarial";  // or "bonafide"
  int n_sources = 200;
  int n_train = 300;
  int n_val = 30;
};

struct NRSSpec {
  NRSConfig arch;
  NRSTrainOptions train;
  std::string framework_loss = "mel_l1";
  std::vector<std::string> ablation_losses;
  GanWeights gan;
  double combo_mel = 1.0;
  double combo_wav = 50.0;
  double combo_asv = 5.0;
  std::string asv_embedder = "mel_net";
};

struct EvaluationSpec {
  std::vector<Framework> frameworks;
  int trials = 100;
  int ablation_trials = 100;
  bool transfer = true;
  bool ablation = true;
  int calibration_trials = 200;  // per class
};

struct ExperimentManifest {
  std::string version = "1";
  std::uint64_t seed = 1;
  CorpusSpec corpus;
  SpectralConfig spectral;  // simulator mel loss
  ChannelParams channel;
  std::vector<EmbedderSpec> embedders;
  SplitSpec splits;
  ReplaySpec replay;
  NRSSpec nrs;
  AttackConfig attack;
  EvaluationSpec evaluation;

  static ExperimentManifest defaults();
  void validate() const;
};

nlohmann::json manifest_to_json(const ExperimentManifest& m);
// Missing keys take their defaults; unknown keys are rejected.
ExperimentManifest manifest_from_json(const nlohmann::json& j);
ExperimentManifest load_manifest(const std::filesystem::path& path);
std::string manifest_digest(const ExperimentManifest& m);

struct CorpusEntry {
  std::string speaker;
  std::string utterance;
  std::string path;  // relative to the corpus root
  double duration = 0.0;
};

struct CorpusIndex {
  std::string root;
  std::vector<CorpusEntry> utterances;
  std::vector<std::size_t> embedder_train, nrs_source, attack_set, enroll_pool;
  std::size_t skipped_short = 0;

  // Disjointness, pool size and attack-speaker isolation.
  void validate(std::size_t enroll_pool_size) const;
};

nlohmann::json corpus_index_to_json(const CorpusIndex& c);
CorpusIndex corpus_index_from_json(const nlohmann::json& j);

// raw_dir/<speaker>/**.wav; splits by seeded shuffle.
CorpusIndex prepare_corpus(const std::filesystem::path& raw_dir, const ExperimentManifest& m);

class MissingStageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ArtifactMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AttackJob {
  Framework framework = Framework::baseline;
  std::string system;
  std::string variant;  // simulator loss for ablation-only jobs

  std::string name() const;
};

class Pipeline {
 public:
  Pipeline(ExperimentManifest m, std::filesystem::path out_dir, bool verbose = false);

  const ExperimentManifest& manifest() const { return m_; }
  const std::string& digest() const { return digest_; }
  const std::filesystem::path& run_dir() const { return run_dir_; }

  void prepare_data();
  void train_asv();
  void gen_replay_pairs();
  void train_nrs();
  // Empty filters run every job the manifest asks for.
  void attack(std::optional<Framework> framework = std::nullopt, const std::string& system = "");
  void evaluate();
  void report();
  void run_all();

  std::vector<AttackJob> attack_jobs() const;
  std::filesystem::path report_dir() const { return run_dir_ / "report"; }

 private:
  ExperimentManifest m_;
  std::string digest_;
  std::filesystem::path run_dir_;
  bool verbose_;

  struct Loaded;
  std::filesystem::path stamp(const std::string& stage) const;
  bool done(const std::string& stage) const;
  void mark(const std::string& stage) const;
  void require(const std::string& stage, const std::string& command) const;
  void log(const std::string& msg) const;
  nlohmann::json read_artifact(const std::filesystem::path& p) const;
  void write_artifact(const std::filesystem::path& p, nlohmann::json j) const;
};

// Adversarial waveforms are kept as raw little-endian float64.
void save_f64(const Waveform& w, const std::filesystem::path& p);
Waveform load_f64(const std::filesystem::path& p);

// OTA_DEVICE may be unset or "cpu"; anything else throws.
void check_device_env();

}  // namespace ota
