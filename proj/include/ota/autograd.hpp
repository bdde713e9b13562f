#pragma once

// Minimal reverse-mode automatic differentiation over dense Eigen matrices.
//
// Every value is a [channels x (batch * length)] column-major matrix: one
// column per time step, `batch` equal-length segments laid out back to back
// along the time axis. Sequence ops (convolution, pooling, resampling,
// spectrograms) act on each segment independently.

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ota::ag {

using Scalar = double;
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using Index = Eigen::Index;

struct Node {
  Matrix value;
  Matrix grad;  // empty until something flows back into this node
  Index batch = 1;
  bool requires_grad = false;
  std::uint64_t seq = 0;
  std::vector<std::shared_ptr<Node>> parents;
  std::function<void(Node&)> backward;

  Index channels() const { return value.rows(); }
  Index length() const { return value.cols() / batch; }
  Matrix& grad_buffer();
};

class Var {
 public:
  Var() = default;
  explicit Var(std::shared_ptr<Node> node) : node_(std::move(node)) {}

  const Matrix& value() const { return node_->value; }
  Matrix& mutable_value() { return node_->value; }
  const Matrix& grad() const { return node_->grad; }
  bool has_grad() const { return node_->grad.size() > 0; }
  Index batch() const { return node_->batch; }
  Index channels() const { return node_->channels(); }
  Index length() const { return node_->length(); }
  bool requires_grad() const { return node_ && node_->requires_grad; }
  void set_requires_grad(bool on) { node_->requires_grad = on; }
  void zero_grad() { node_->grad.resize(0, 0); }
  Scalar item() const;
  bool defined() const { return static_cast<bool>(node_); }
  Node& node() const { return *node_; }
  const std::shared_ptr<Node>& ptr() const { return node_; }

  // Seeds d(this)/d(this) = 1 and accumulates gradients into every
  // reachable node that requires them. `this` must be a 1x1 scalar.
  void backward() const;

 private:
  std::shared_ptr<Node> node_;
};

// Disables graph recording for its lifetime (thread-local).
class NoGradGuard {
 public:
  NoGradGuard();
  ~NoGradGuard();
  NoGradGuard(const NoGradGuard&) = delete;
  NoGradGuard& operator=(const NoGradGuard&) = delete;

 private:
  bool previous_;
};

bool grad_enabled();

Var constant(Matrix value, Index batch = 1);
Var leaf(Matrix value, Index batch = 1, bool requires_grad = true);
Var scalar(Scalar v);

// Elementwise.
Var add(const Var& a, const Var& b);
Var sub(const Var& a, const Var& b);
Var mul(const Var& a, const Var& b);
Var scale(const Var& a, Scalar c);
Var add_scalar(const Var& a, Scalar c);
Var abs(const Var& a);
Var square(const Var& a);
Var log_floor(const Var& a, Scalar floor);  // log(a + floor), a >= 0
Var leaky_relu(const Var& a, Scalar slope);
// Softplus-smoothed leaky ReLU; approaches leaky_relu as sharpness grows.
Var smooth_leaky_relu(const Var& a, Scalar slope, Scalar sharpness);
Var tanh(const Var& a);

// Reductions to a 1x1 scalar.
Var mean_all(const Var& a);
Var sum_all(const Var& a);

// Structural.
Var concat_channels(const Var& a, const Var& b);
Var narrow_channels(const Var& a, Index first, Index count);
Var select_segment(const Var& a, Index segment);
Var concat_segments(std::span<const Var> parts);
Var crop_segments(const Var& a, Index offset, Index length);
Var pad_segments(const Var& a, Index left, Index right);  // zero padding

struct Conv1dSpec {
  Index stride = 1;
  Index dilation = 1;
  Index pad_left = 0;
  Index pad_right = 0;
};

// weight: [out x (kernel * in)], tap-major columns (tap j occupies columns
// [j*in, (j+1)*in)). bias: [out x 1] or undefined.
Var conv1d(const Var& x, const Var& weight, const Var& bias, Index kernel, const Conv1dSpec& spec);
// weight [out x in] applied to every column; bias optional.
Var linear(const Var& x, const Var& weight, const Var& bias);
// Fixed matrix applied to every column.
Var project(const Var& x, const Matrix& m);

Var decimate(const Var& x, Index factor);
Var upsample_linear(const Var& x, Index factor);

// Folds each segment of a single-channel signal into `period` interleaved
// sub-sequences (sample t goes to sub-sequence t % period). Segments are
// zero-padded to a multiple of `period`. Result batch = batch * period.
Var fold_period(const Var& x, Index period);

// Per-segment statistics.
Var subtract_time_mean(const Var& x);
Var rms_normalize(const Var& x, Scalar eps);
Var stats_pool(const Var& x, Scalar eps);  // [2C x batch], mean then std

struct StftSpec {
  Index n_fft = 1024;
  Index win_length = 1024;
  Index hop_length = 256;
};
// Power spectrum |X|^2 of a single-channel signal. Frame i is centred on
// sample i*hop with reflect padding at both ends, so frames = ceil(length /
// hop). Periodic Hann window of win_length, centred inside n_fft.
// Output [n_fft/2+1 x batch*frames].
Var power_spectrogram(const Var& x, const StftSpec& spec);
Index stft_frames(Index length, Index hop);

// Mean softmax cross-entropy of logits [classes x batch] against labels.
Var cross_entropy(const Var& logits, std::span<const int> labels);
// Cosine similarity of matching columns: [1 x batch].
Var cosine_columns(const Var& a, const Var& b);

}  // namespace ota::ag
