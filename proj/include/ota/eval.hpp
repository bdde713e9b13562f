#pragma once

// Success-rate evaluation of adversarial examples on the digital and
// over-the-air paths, white-box and transfer matrices, and report files.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "ota/asv.hpp"
#include "ota/attack.hpp"
#include "ota/channel.hpp"
#include "ota/nrs.hpp"

namespace ota {

enum class Framework { baseline, nrs_only, nrs_joint };
std::string to_string(Framework f);
Framework framework_from_string(const std::string& s);
std::vector<Framework> all_frameworks();

enum class AttackPath { digital, ota };
std::string to_string(AttackPath p);

// Successes / total; throws on an empty list.
double success_rate(const std::vector<bool>& results);

struct EvalOutcome {
  bool success = false;
  double score = 0.0;
};

// Digital: verify(x_adv). OTA: verify(apply_channel(x_adv, channel, trial_seed)).
// The target must be a plain ASV; the simulator never appears here.
EvalOutcome evaluate_attack(const Waveform& x_adv, const Waveform& x_enroll, const SurrogateModel& target,
                            AttackPath path, const ChannelParams& channel, std::uint64_t trial_seed);

// A toy ASV system plus the simulator used when attacking through it.
struct System {
  std::string id;
  const SpeakerEmbedder* embedder = nullptr;
  double tau = 0.0;
  const NRSModel* nrs = nullptr;

  SurrogateModel plain() const { return SurrogateModel::asv_only(*embedder, tau, id); }
};

// baseline: [asv]; nrs_only: [nrs->asv]; nrs_joint: [nrs->asv, asv].
std::vector<SurrogateModel> framework_surrogates(Framework f, const System& s);

struct ImpostorTrial {
  std::string id;
  const Waveform* test = nullptr;    // x0
  const Waveform* enroll = nullptr;  // x_enroll, another speaker
};

struct AttackRecord {
  std::string trial_id;
  AttackResult result;
};

std::uint64_t ota_trial_seed(std::uint64_t global_seed, const std::string& trial_id);

struct TrialOutcome {
  std::string trial_id;
  bool success = false;
  double score = 0.0;
  int iterations = 0;
  bool cap_exhausted = false;  // the attack itself did not succeed on its surrogates
};

struct EvaluationRun {
  Framework framework = Framework::baseline;
  std::string surrogate;
  std::string target;
  AttackPath path = AttackPath::digital;
  std::vector<TrialOutcome> trials;
  std::string variant;  // free-form tag, e.g. the simulator loss in ablations

  double rate() const;
  double mean_iterations() const;
  int cap_failures() const;
};

// Scores stored adversarial examples on `target` along `path`.
EvaluationRun evaluate_records(Framework f, const std::string& surrogate, const System& target, AttackPath path,
                               const std::vector<AttackRecord>& records, const std::vector<ImpostorTrial>& trials,
                               const ChannelParams& channel, std::uint64_t global_seed);

using TrialSets = std::map<std::string, std::vector<ImpostorTrial>>;      // by system id
using RecordSets = std::map<std::string, std::vector<AttackRecord>>;      // by surrogate id

// Synthesises one adversarial example per trial with the framework's
// surrogates; records come back in trial order.
std::vector<AttackRecord> attack_trials(Framework f, const System& s, const std::vector<ImpostorTrial>& trials,
                                        const AttackConfig& cfg);

struct WhiteBoxResult {
  std::vector<EvaluationRun> runs;
  RecordSets records;
};

WhiteBoxResult run_white_box(Framework f, const std::vector<System>& systems, const TrialSets& trials,
                             const AttackConfig& cfg, const ChannelParams& channel, std::uint64_t global_seed);

// Off-diagonal cells only, reusing the white-box adversarial examples.
std::vector<EvaluationRun> run_transfer(Framework f, const std::vector<System>& systems, const RecordSets& records,
                                        const TrialSets& trials, const ChannelParams& channel,
                                        std::uint64_t global_seed);

struct SuccessMatrix {
  std::vector<std::string> ids;
  // cell(i, j): surrogate ids[i] -> target ids[j]; n = 0 marks an empty cell.
  Eigen::MatrixXd rate;
  Eigen::MatrixXi n;

  // Trial-weighted averages over the non-empty cells of a row/column.
  double row_average(Eigen::Index i) const;
  double col_average(Eigen::Index j) const;
};

SuccessMatrix success_matrix(const std::vector<EvaluationRun>& runs, Framework f, AttackPath path,
                             const std::vector<std::string>& ids);

struct ReportContext {
  std::string manifest_digest;
  std::string channel_note = "synthetic parametric replay channel (gain, cubic soft clip, 64-tap FIR, 30 dB noise)";
  std::vector<std::string> systems;
};

// CSV columns: framework,surrogate,target,path,n_trials,success_rate,mean_iterations
std::string runs_csv(const std::vector<EvaluationRun>& runs);
std::string ablation_csv(const std::vector<EvaluationRun>& runs);

// results.csv, ablation.csv (when given), summary.txt, summary.md, success_rates.png.
void emit_report(const std::vector<EvaluationRun>& runs, const std::vector<EvaluationRun>& ablation,
                 const ReportContext& ctx, const std::filesystem::path& dir);

// Grouped bar chart: one group per label, one bar per series, values in [0, 1].
void write_bar_plot(const std::filesystem::path& path, const std::string& title, const std::vector<std::string>& groups,
                    const std::vector<std::string>& series, const std::vector<std::vector<double>>& values);

}  // namespace ota
