// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <vector>

namespace satnet {

// 2D DFT codebook D = D_x kron D_y, columns orthonormal, entries of
// magnitude 1/sqrt(N).  Column k = kx * N_y + ky corresponds to the grid
// direction pair (sin phi_kx, sin phi_ky).
struct Codebook {
  Eigen::MatrixXcd D;
  std::vector<double> grid_sin_x;  // sin(phi_k) = 1 - 2k/N_x
  std::vector<double> grid_sin_y;
  int n_x = 0;
  int n_y = 0;
};

struct AnalogReport {
  std::vector<int> codeword_indices;  // best K, score-descending
  Eigen::VectorXcd coefficients;      // least-squares x_hat
  Eigen::VectorXcd w;                 // equal-amplitude analog vector
  bool zero_entry_flag = false;       // projection hit a zero-magnitude entry
};

// Beamformers of one satellite.  Column order of every matrix follows the
// sorted order of the served GU ids.
struct SatBeams {
  std::vector<int> served;   // sorted gu ids
  Eigen::MatrixXcd F_A;      // N x N_u^s, equal-amplitude columns
  Eigen::MatrixXcd F_D;      // N_u^s x N_u^s (identity for analog-only)
  Eigen::MatrixXcd F_HY;     // final columns w_sg used by the metrics
  double eta = 1.0;
  double beta = 0.0;
};

struct BeamformerSet {
  std::vector<SatBeams> per_sat;  // indexed by satellite id

  // Column of satellite s aimed at GU g, or nullptr when alpha_sg = 0.
  const Eigen::MatrixXcd* matrix(int s) const { return &per_sat[s].F_HY; }
  int column_of(int s, int g) const {
    const auto& served = per_sat[s].served;
    auto it = std::lower_bound(served.begin(), served.end(), g);
    return (it != served.end() && *it == g)
               ? static_cast<int>(it - served.begin())
               : -1;
  }
};

Codebook dft_codebook(int n_x, int n_y);

// Codebook-based analog beamforming: pick the K codewords maximizing
// |h^H d_k|^2 (ties to the lower index), combine by least squares, project
// every entry onto magnitude 1/sqrt(N).
AnalogReport analog_beamform(const Eigen::VectorXcd& h, const Codebook& cb, int k);

// Regularized ZF without the power scaling: H^H (H H^H + beta I)^{-1}.
Eigen::MatrixXcd regularized_zf(const Eigen::MatrixXcd& h_tilde, double beta);

double beta_opt(int n_users, double sigma2_w, double power_w);

struct ScaledBeams {
  double eta = 0.0;
  Eigen::MatrixXcd F;  // sqrt(eta) * F_A * F_D, Frobenius norm^2 = P_T
};

ScaledBeams power_scale(const Eigen::MatrixXcd& f_a,
                        const Eigen::MatrixXcd& f_d_unscaled, double power_w);

// AU baseline: the same scaling rule applied to F_A directly.
ScaledBeams analog_only_scale(const Eigen::MatrixXcd& f_a, double power_w);

}  // namespace satnet
