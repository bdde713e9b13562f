#pragma once

// Parameter containers, layers and the Adam optimiser built on ota::ag.

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ota/autograd.hpp"

namespace ota::nn {

using ag::Index;
using ag::Matrix;
using ag::Scalar;
using ag::Var;

// Named, ordered collection of trainable tensors.
class ParamSet {
 public:
  Var add(std::string name, Matrix init);
  std::vector<std::pair<std::string, Var>>& entries() { return entries_; }
  const std::vector<std::pair<std::string, Var>>& entries() const { return entries_; }

  void set_trainable(bool on);
  void zero_grad();
  Index count() const;

  nlohmann::json to_json() const;
  // Shapes and names must match exactly.
  void load_json(const nlohmann::json& j);

 private:
  std::vector<std::pair<std::string, Var>> entries_;
};

// Same-padded (or strided) 1-D convolution with bias.
class Conv1d {
 public:
  Conv1d() = default;
  Conv1d(ParamSet& params, const std::string& name, Index in_ch, Index out_ch, Index kernel, std::mt19937_64& rng,
         Index stride = 1, Index dilation = 1, bool same_padding = true);

  Var operator()(const Var& x) const;
  Var& weight() { return weight_; }

 private:
  Var weight_;
  Var bias_;
  Index kernel_ = 1;
  ag::Conv1dSpec spec_;
};

class Linear {
 public:
  Linear() = default;
  Linear(ParamSet& params, const std::string& name, Index in, Index out, std::mt19937_64& rng);
  Var operator()(const Var& x) const;

 private:
  Var weight_;
  Var bias_;
};

// He-style normal init scaled for leaky-ReLU stacks.
Matrix kaiming_normal(Index rows, Index cols, Index fan_in, std::mt19937_64& rng);

struct AdamOptions {
  Scalar lr = 1e-3;
  Scalar beta1 = 0.9;
  Scalar beta2 = 0.999;
  Scalar eps = 1e-8;
  Scalar grad_clip = 0.0;  // global L2 clip; 0 disables
};

class Adam {
 public:
  Adam(ParamSet& params, AdamOptions opts);
  // Applies one update from the accumulated gradients, then clears them.
  void step();

 private:
  ParamSet& params_;
  AdamOptions opts_;
  std::vector<Matrix> m_;
  std::vector<Matrix> v_;
  std::int64_t t_ = 0;
};

}  // namespace ota::nn
