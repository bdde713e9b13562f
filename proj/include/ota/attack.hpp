#pragma once

// Targeted sign-gradient attacks on speaker verification, optionally through
// a frozen replay simulator, and the cascade ensemble over several surrogates.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "ota/asv.hpp"
#include "ota/audio.hpp"
#include "ota/nrs.hpp"

namespace ota {

struct AttackConfig {
  double epsilon = 0.0004;
  int max_iterations = 1000;
  bool clip_to_valid_range = true;
  std::uint64_t seed = 0;

  void validate() const;
};

void to_json(nlohmann::json& j, const AttackConfig& c);
void from_json(const nlohmann::json& j, AttackConfig& c);

enum class SurrogateKind { asv_only, nrs_then_asv };
std::string to_string(SurrogateKind k);

struct SurrogateModel {
  SurrogateKind kind = SurrogateKind::asv_only;
  const SpeakerEmbedder* embedder = nullptr;
  const NRSModel* nrs = nullptr;
  double tau = 0.0;
  std::string id;

  void validate() const;
  static SurrogateModel asv_only(const SpeakerEmbedder& e, double tau, std::string id);
  static SurrogateModel nrs_then_asv(const SpeakerEmbedder& e, const NRSModel& nrs, double tau, std::string id);
};

// x0 already verifies on every surrogate; the attack has nothing to do.
class AttackPreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Score(x, enroll) on the surrogate's path; enroll is a digital embedding.
ag::Var surrogate_score(const SurrogateModel& m, const ag::Var& x, const Eigen::VectorXd& enroll_embedding);

// score - tau, with x routed through the simulator for nrs_then_asv.
double adv_loss(const Waveform& x, const Waveform& x_enroll, const SurrogateModel& m);

struct LossAndGradient {
  double loss = 0.0;
  Eigen::VectorXd gradient;
};
LossAndGradient adv_loss_gradient(const Eigen::VectorXd& x, const Eigen::VectorXd& enroll_embedding,
                                  const SurrogateModel& m);

// x + eps * sign(grad), sign(0) = 0, then optionally clamped to [-1, 1].
Eigen::VectorXd pgd_step(const Eigen::VectorXd& x_prev, const Eigen::VectorXd& grad, double epsilon, bool clip = true);

struct AttackResult {
  Waveform adversarial;
  int iterations_used = 0;
  bool succeeded = false;
  std::vector<std::string> surrogate_ids;
  std::vector<double> final_scores;  // per surrogate, same order
  double perturbation_linf = 0.0;
};

AttackResult pgd_attack(const Waveform& x0, const Waveform& x_enroll, const SurrogateModel& m, const AttackConfig& cfg);

// Cascade over `models` in order, each inner loop continuing from the current
// x_adv, until one full sweep takes no step. cfg.max_iterations is a global
// budget across all inner steps.
AttackResult ensemble_pgd(std::span<const SurrogateModel> models, const Waveform& x_enroll, const Waveform& x0,
                          const AttackConfig& cfg);

}  // namespace ota
