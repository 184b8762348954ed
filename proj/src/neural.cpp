#include "uvaa/neural.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "uvaa/mathfn.hpp"

namespace uvaa {

std::vector<double> orthogonal_init(int rows, int cols, double gain, Rng& rng) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("orthogonal_init: dims must be >= 1");
  const int k = std::min(rows, cols);
  const int m = std::max(rows, cols);

  // Gram-Schmidt with one re-orthogonalization pass on Gaussian vectors.
  std::vector<std::vector<double>> basis(k, std::vector<double>(m));
  for (int v = 0; v < k; ++v) {
    for (;;) {
      for (int j = 0; j < m; ++j) basis[v][j] = rng.normal();
      for (int pass = 0; pass < 2; ++pass) {
        for (int u = 0; u < v; ++u) {
          double dot = 0.0;
          for (int j = 0; j < m; ++j) dot += basis[v][j] * basis[u][j];
          for (int j = 0; j < m; ++j) basis[v][j] -= dot * basis[u][j];
        }
      }
      double norm = 0.0;
      for (int j = 0; j < m; ++j) norm += basis[v][j] * basis[v][j];
      norm = std::sqrt(norm);
      if (norm > 1e-8) {
        for (int j = 0; j < m; ++j) basis[v][j] /= norm;
        break;
      }
    }
  }

  std::vector<double> w(static_cast<std::size_t>(rows) * cols);
  if (rows <= cols) {
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) w[static_cast<std::size_t>(r) * cols + c] = gain * basis[r][c];
  } else {
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) w[static_cast<std::size_t>(r) * cols + c] = gain * basis[c][r];
  }
  return w;
}

Mlp::Mlp(const MlpShape& shape, double final_gain, Rng& rng) : shape_(shape) {
  if (shape.input < 1 || shape.hidden < 1 || shape.output < 1)
    throw std::invalid_argument("Mlp: dims must be >= 1");
  params_.assign(shape.n_params(), 0.0);
  const double relu_gain = std::sqrt(2.0);
  auto w1 = orthogonal_init(shape.hidden, shape.input, relu_gain, rng);
  auto w2 = orthogonal_init(shape.hidden, shape.hidden, relu_gain, rng);
  auto w3 = orthogonal_init(shape.output, shape.hidden, final_gain, rng);
  std::copy(w1.begin(), w1.end(), params_.begin());
  std::copy(w2.begin(), w2.end(), params_.begin() + off_w2());
  std::copy(w3.begin(), w3.end(), params_.begin() + off_w3());
}

std::vector<double> Mlp::forward(std::span<const double> input, ForwardCache* cache) const {
  if (static_cast<int>(input.size()) != shape_.input)
    throw std::invalid_argument("Mlp::forward: input dimension mismatch");
  const int h = shape_.hidden;
  const double* w1 = params_.data();
  const double* b1 = params_.data() + off_b1();
  const double* w2 = params_.data() + off_w2();
  const double* b2 = params_.data() + off_b2();
  const double* w3 = params_.data() + off_w3();
  const double* b3 = params_.data() + off_b3();

  std::vector<double> h1(h), h2(h), out(shape_.output);
  for (int r = 0; r < h; ++r) {
    double acc = b1[r];
    const double* row = w1 + static_cast<std::size_t>(r) * shape_.input;
    for (int c = 0; c < shape_.input; ++c) acc += row[c] * input[c];
    h1[r] = acc > 0.0 ? acc : 0.0;
  }
  for (int r = 0; r < h; ++r) {
    double acc = b2[r];
    const double* row = w2 + static_cast<std::size_t>(r) * h;
    for (int c = 0; c < h; ++c) acc += row[c] * h1[c];
    h2[r] = acc > 0.0 ? acc : 0.0;
  }
  for (int r = 0; r < shape_.output; ++r) {
    double acc = b3[r];
    const double* row = w3 + static_cast<std::size_t>(r) * h;
    for (int c = 0; c < h; ++c) acc += row[c] * h2[c];
    out[r] = acc;
  }
  if (cache) {
    cache->input.assign(input.begin(), input.end());
    cache->h1 = h1;
    cache->h2 = std::move(h2);
  }
  return out;
}

std::vector<double> Mlp::backward(const ForwardCache& cache,
                                  std::span<const double> output_grad) const {
  if (static_cast<int>(cache.input.size()) != shape_.input ||
      static_cast<int>(cache.h1.size()) != shape_.hidden)
    throw std::invalid_argument("Mlp::backward: stale cache");
  if (static_cast<int>(output_grad.size()) != shape_.output)
    throw std::invalid_argument("Mlp::backward: output grad dimension mismatch");

  const int h = shape_.hidden;
  const double* w2 = params_.data() + off_w2();
  const double* w3 = params_.data() + off_w3();

  std::vector<double> grad(params_.size(), 0.0);
  double* gw1 = grad.data();
  double* gb1 = grad.data() + off_b1();
  double* gw2 = grad.data() + off_w2();
  double* gb2 = grad.data() + off_b2();
  double* gw3 = grad.data() + off_w3();
  double* gb3 = grad.data() + off_b3();

  std::vector<double> dh2(h, 0.0), dh1(h, 0.0);
  for (int r = 0; r < shape_.output; ++r) {
    const double g = output_grad[r];
    gb3[r] = g;
    double* grow = gw3 + static_cast<std::size_t>(r) * h;
    const double* wrow = w3 + static_cast<std::size_t>(r) * h;
    for (int c = 0; c < h; ++c) {
      grow[c] = g * cache.h2[c];
      dh2[c] += g * wrow[c];
    }
  }
  for (int r = 0; r < h; ++r) {
    const double g = cache.h2[r] > 0.0 ? dh2[r] : 0.0;
    gb2[r] = g;
    double* grow = gw2 + static_cast<std::size_t>(r) * h;
    const double* wrow = w2 + static_cast<std::size_t>(r) * h;
    for (int c = 0; c < h; ++c) {
      grow[c] = g * cache.h1[c];
      dh1[c] += g * wrow[c];
    }
  }
  for (int r = 0; r < h; ++r) {
    const double g = cache.h1[r] > 0.0 ? dh1[r] : 0.0;
    gb1[r] = g;
    double* grow = gw1 + static_cast<std::size_t>(r) * shape_.input;
    for (int c = 0; c < shape_.input; ++c) grow[c] = g * cache.input[c];
  }
  return grad;
}

std::vector<double> Mlp::forward_tangent(const ForwardCache& cache,
                                         std::span<const double> tangent) const {
  if (tangent.size() != params_.size())
    throw std::invalid_argument("Mlp::forward_tangent: tangent dimension mismatch");
  const int h = shape_.hidden;
  const double* w2 = params_.data() + off_w2();
  const double* w3 = params_.data() + off_w3();
  const double* tw1 = tangent.data();
  const double* tb1 = tangent.data() + off_b1();
  const double* tw2 = tangent.data() + off_w2();
  const double* tb2 = tangent.data() + off_b2();
  const double* tw3 = tangent.data() + off_w3();
  const double* tb3 = tangent.data() + off_b3();

  std::vector<double> dh1(h), dh2(h), dout(shape_.output);
  for (int r = 0; r < h; ++r) {
    double acc = tb1[r];
    const double* trow = tw1 + static_cast<std::size_t>(r) * shape_.input;
    for (int c = 0; c < shape_.input; ++c) acc += trow[c] * cache.input[c];
    dh1[r] = cache.h1[r] > 0.0 ? acc : 0.0;
  }
  for (int r = 0; r < h; ++r) {
    double acc = tb2[r];
    const double* trow = tw2 + static_cast<std::size_t>(r) * h;
    const double* wrow = w2 + static_cast<std::size_t>(r) * h;
    for (int c = 0; c < h; ++c) acc += trow[c] * cache.h1[c] + wrow[c] * dh1[c];
    dh2[r] = cache.h2[r] > 0.0 ? acc : 0.0;
  }
  for (int r = 0; r < shape_.output; ++r) {
    double acc = tb3[r];
    const double* trow = tw3 + static_cast<std::size_t>(r) * h;
    const double* wrow = w3 + static_cast<std::size_t>(r) * h;
    for (int c = 0; c < h; ++c) acc += trow[c] * cache.h2[c] + wrow[c] * dh2[c];
    dout[r] = acc;
  }
  return dout;
}

BetaParams actor_head(std::span<const double> raw) {
  if (raw.size() % 2 != 0) throw std::invalid_argument("actor_head: raw size must be even");
  const std::size_t d = raw.size() / 2;
  BetaParams p;
  p.alpha.resize(d);
  p.beta.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    p.alpha[i] = 1.0 + softplus(raw[2 * i]);
    p.beta[i] = 1.0 + softplus(raw[2 * i + 1]);
  }
  return p;
}

std::vector<double> actor_head_jacobian(std::span<const double> raw) {
  std::vector<double> j(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) j[i] = sigmoid(raw[i]);
  return j;
}

double beta_log_prob(const BetaParams& p, std::span<const double> x) {
  if (x.size() != p.dims()) throw std::invalid_argument("beta_log_prob: dimension mismatch");
  double lp = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 0.0 || x[i] > 1.0) return -std::numeric_limits<double>::infinity();
    const double a = p.alpha[i], b = p.beta[i];
    lp += -log_beta(a, b) + (a - 1.0) * std::log(x[i]) + (b - 1.0) * std::log1p(-x[i]);
  }
  return lp;
}

void beta_log_prob_grad(const BetaParams& p, std::span<const double> x,
                        std::span<double> d_alpha, std::span<double> d_beta) {
  const std::size_t d = p.dims();
  if (x.size() != d || d_alpha.size() != d || d_beta.size() != d)
    throw std::invalid_argument("beta_log_prob_grad: dimension mismatch");
  for (std::size_t i = 0; i < d; ++i) {
    const double psi_ab = digamma(p.alpha[i] + p.beta[i]);
    d_alpha[i] = psi_ab - digamma(p.alpha[i]) + std::log(x[i]);
    d_beta[i] = psi_ab - digamma(p.beta[i]) + std::log1p(-x[i]);
  }
}

std::vector<double> beta_sample(const BetaParams& p, Rng& rng) {
  std::vector<double> x(p.dims());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double ga = rng.gamma(p.alpha[i]);
    const double gb = rng.gamma(p.beta[i]);
    x[i] = std::clamp(ga / (ga + gb), 1e-8, 1.0 - 1e-8);
  }
  return x;
}

std::vector<double> beta_mean(const BetaParams& p) {
  std::vector<double> m(p.dims());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = p.alpha[i] / (p.alpha[i] + p.beta[i]);
  return m;
}

double beta_kl(const BetaParams& p, const BetaParams& q) {
  if (p.dims() != q.dims()) throw std::invalid_argument("beta_kl: dimension mismatch");
  double kl = 0.0;
  for (std::size_t i = 0; i < p.dims(); ++i) {
    const double a1 = p.alpha[i], b1 = p.beta[i];
    const double a2 = q.alpha[i], b2 = q.beta[i];
    kl += log_beta(a2, b2) - log_beta(a1, b1) + (a1 - a2) * digamma(a1) +
          (b1 - b2) * digamma(b1) + (a2 - a1 + b2 - b1) * digamma(a1 + b1);
  }
  return kl;
}

double beta_entropy(const BetaParams& p) {
  double h = 0.0;
  for (std::size_t i = 0; i < p.dims(); ++i) {
    const double a = p.alpha[i], b = p.beta[i];
    h += log_beta(a, b) - (a - 1.0) * digamma(a) - (b - 1.0) * digamma(b) +
         (a + b - 2.0) * digamma(a + b);
  }
  return h;
}

BetaFisherBlocks beta_kl_hessian(const BetaParams& p) {
  const std::size_t d = p.dims();
  BetaFisherBlocks f;
  f.aa.resize(d);
  f.ab.resize(d);
  f.bb.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    const double tg = trigamma(p.alpha[i] + p.beta[i]);
    f.aa[i] = trigamma(p.alpha[i]) - tg;
    f.ab[i] = -tg;
    f.bb[i] = trigamma(p.beta[i]) - tg;
  }
  return f;
}

}  // namespace uvaa
