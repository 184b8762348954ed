#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "uvaa/rng.hpp"

namespace uvaa {

/// Row-major rows x cols matrix with orthonormal rows (or columns, whichever
/// dimension is smaller), scaled by gain.
std::vector<double> orthogonal_init(int rows, int cols, double gain, Rng& rng);

struct MlpShape {
  int input = 0;
  int hidden = 64;
  int output = 0;

  std::size_t n_params() const {
    return static_cast<std::size_t>(hidden) * (input + 1) +
           static_cast<std::size_t>(hidden) * (hidden + 1) +
           static_cast<std::size_t>(output) * (hidden + 1);
  }
};

struct ForwardCache {
  std::vector<double> input;
  std::vector<double> h1;  // post-ReLU
  std::vector<double> h2;  // post-ReLU
};

/// Fixed two-hidden-layer perceptron with rectified-linear activations and a
/// linear output. Parameters live in one flat vector ordered layer-major,
/// row-major: [W1, b1, W2, b2, W3, b3] with W[out][in] rows contiguous; the
/// same ordering is shared by gradients, the trust-region solver, and the
/// checkpoint files.
class Mlp {
 public:
  Mlp() = default;
  /// Orthogonal initialization: hidden layers at gain sqrt(2) for ReLU, the
  /// output layer at final_gain; biases zero.
  Mlp(const MlpShape& shape, double final_gain, Rng& rng);

  const MlpShape& shape() const { return shape_; }
  std::size_t n_params() const { return params_.size(); }
  std::span<double> params() { return params_; }
  std::span<const double> params() const { return params_; }

  std::vector<double> forward(std::span<const double> input, ForwardCache* cache = nullptr) const;

  /// Exact gradient of output . output_grad with respect to every parameter,
  /// in the flat ordering. The cache must come from a matching forward pass.
  std::vector<double> backward(const ForwardCache& cache,
                               std::span<const double> output_grad) const;

  /// Directional derivative of the output along a parameter tangent (forward
  /// mode), reusing the activation pattern captured in the cache.
  std::vector<double> forward_tangent(const ForwardCache& cache,
                                      std::span<const double> tangent) const;

 private:
  MlpShape shape_;
  std::vector<double> params_;

  std::size_t off_b1() const { return static_cast<std::size_t>(shape_.hidden) * shape_.input; }
  std::size_t off_w2() const { return off_b1() + shape_.hidden; }
  std::size_t off_b2() const { return off_w2() + static_cast<std::size_t>(shape_.hidden) * shape_.hidden; }
  std::size_t off_w3() const { return off_b2() + shape_.hidden; }
  std::size_t off_b3() const { return off_w3() + static_cast<std::size_t>(shape_.output) * shape_.hidden; }
};

/// Per-dimension Beta shape pairs; the softplus-plus-one head keeps both
/// parameters >= 1 so the density has no interior poles.
struct BetaParams {
  std::vector<double> alpha;
  std::vector<double> beta;

  std::size_t dims() const { return alpha.size(); }
};

/// Maps raw network outputs (interleaved per action dimension: raw_alpha_0,
/// raw_beta_0, raw_alpha_1, ...) through softplus + 1.
BetaParams actor_head(std::span<const double> raw);

/// d(alpha)/d(raw) = sigmoid(raw) for the chain rule through the head,
/// interleaved in the same order as the raw outputs.
std::vector<double> actor_head_jacobian(std::span<const double> raw);

/// Joint log-density of a factorized Beta action; -inf outside [0, 1]^d.
double beta_log_prob(const BetaParams& p, std::span<const double> x);

/// d(log prob)/d(alpha_i), d(log prob)/d(beta_i).
void beta_log_prob_grad(const BetaParams& p, std::span<const double> x,
                        std::span<double> d_alpha, std::span<double> d_beta);

/// Sample via two Gamma draws per dimension, clamped away from the endpoints.
std::vector<double> beta_sample(const BetaParams& p, Rng& rng);

std::vector<double> beta_mean(const BetaParams& p);

/// KL(p || q) summed over dimensions, closed form via digamma.
double beta_kl(const BetaParams& p, const BetaParams& q);

/// Differential entropy summed over dimensions.
double beta_entropy(const BetaParams& p);

/// Per-dimension 2x2 blocks of the KL Hessian in (alpha, beta) of the second
/// argument, evaluated at q == p (the Beta Fisher information).
struct BetaFisherBlocks {
  std::vector<double> aa, ab, bb;
};
BetaFisherBlocks beta_kl_hessian(const BetaParams& p);

}  // namespace uvaa
