// SPDX-License-Identifier: Apache-2.0
#include "satnet/beamforming.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>

#include "satnet/constants.hpp"

namespace satnet {

namespace {

Eigen::MatrixXcd dft_1d(int n, std::vector<double>& grid) {
  Eigen::MatrixXcd d(n, n);
  grid.resize(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int k = 0; k < n; ++k) {
    grid[k] = 1.0 - 2.0 * k / n;
    for (int p = 0; p < n; ++p) d(p, k) = std::polar(scale, kPi * p * grid[k]);
  }
  return d;
}

}  // namespace

Codebook dft_codebook(int n_x, int n_y) {
  if (n_x < 1 || n_y < 1)
    throw std::invalid_argument("dft_codebook: array dims must be >= 1");
  Codebook cb;
  cb.n_x = n_x;
  cb.n_y = n_y;
  const Eigen::MatrixXcd dx = dft_1d(n_x, cb.grid_sin_x);
  const Eigen::MatrixXcd dy = dft_1d(n_y, cb.grid_sin_y);
  // Kronecker product; element order p*N_y + q matches steering_vector.
  cb.D.resize(n_x * n_y, n_x * n_y);
  for (int px = 0; px < n_x; ++px)
    for (int kx = 0; kx < n_x; ++kx)
      cb.D.block(px * n_y, kx * n_y, n_y, n_y) = dx(px, kx) * dy;
  return cb;
}

AnalogReport analog_beamform(const Eigen::VectorXcd& h, const Codebook& cb, int k) {
  const int n = static_cast<int>(cb.D.rows());
  if (k < 1 || k > n) throw std::invalid_argument("analog_beamform: K out of [1, N]");
  if (h.size() != n) throw std::invalid_argument("analog_beamform: size mismatch");
  if (h.norm() == 0.0) throw std::invalid_argument("analog_beamform: zero channel");

  const Eigen::VectorXd scores = (cb.D.adjoint() * h).cwiseAbs2();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return scores(a) > scores(b); });

  AnalogReport rep;
  rep.codeword_indices.assign(order.begin(), order.begin() + k);

  Eigen::MatrixXcd dk(n, k);
  for (int i = 0; i < k; ++i) dk.col(i) = cb.D.col(rep.codeword_indices[i]);
  // Codewords are orthonormal, so the LS solution is the projection.
  rep.coefficients = dk.adjoint() * h;

  const Eigen::VectorXcd w_prime = dk * rep.coefficients;
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  rep.w.resize(n);
  for (int i = 0; i < n; ++i) {
    const double m = std::abs(w_prime(i));
    if (m == 0.0) {
      rep.w(i) = amp;  // phase 0 by convention
      rep.zero_entry_flag = true;
    } else {
      rep.w(i) = w_prime(i) * (amp / m);
    }
  }
  return rep;
}

Eigen::MatrixXcd regularized_zf(const Eigen::MatrixXcd& h_tilde, double beta) {
  if (h_tilde.rows() > h_tilde.cols())
    throw std::invalid_argument("regularized_zf: more users than beams");
  const Eigen::MatrixXcd gram =
      h_tilde * h_tilde.adjoint() +
      beta * Eigen::MatrixXcd::Identity(h_tilde.rows(), h_tilde.rows());
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(gram);
  if (!lu.isInvertible())
    throw std::runtime_error("regularized_zf: singular generalized channel");
  return h_tilde.adjoint() * lu.inverse();
}

double beta_opt(int n_users, double sigma2_w, double power_w) {
  if (power_w <= 0.0) throw std::invalid_argument("beta_opt: power must be > 0");
  return n_users * sigma2_w / power_w;
}

ScaledBeams power_scale(const Eigen::MatrixXcd& f_a,
                        const Eigen::MatrixXcd& f_d_unscaled, double power_w) {
  const Eigen::MatrixXcd product = f_a * f_d_unscaled;
  const double norm2 = product.squaredNorm();
  if (norm2 == 0.0) throw std::runtime_error("power_scale: zero beamforming matrix");
  ScaledBeams out;
  out.eta = power_w / norm2;
  out.F = std::sqrt(out.eta) * product;
  return out;
}

ScaledBeams analog_only_scale(const Eigen::MatrixXcd& f_a, double power_w) {
  const double norm2 = f_a.squaredNorm();
  if (norm2 == 0.0) throw std::runtime_error("analog_only_scale: zero matrix");
  ScaledBeams out;
  out.eta = power_w / norm2;
  out.F = std::sqrt(out.eta) * f_a;
  return out;
}

}  // namespace satnet
