// Copyright 2026 The qcwalk Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "qcw/graph.hpp"
#include "qcw/hybrid_walk.hpp"

namespace qcw {

using DensityMatrix = Eigen::MatrixXcd;

/// Largest graph accepted by the dense density-matrix routines.
inline constexpr std::size_t kMaxOracleNodes = 32;

DensityMatrix pure_density(const QuantumState& psi);

/// Throws InvariantViolation unless rho is Hermitian, has unit trace and a
/// diagonal inside [-tol, 1 + tol].
void check_density_matrix(const DensityMatrix& rho, double tol = 1e-9);

/// Right-hand side of the hybrid-walk master equation
///   d rho/dt = -i (1-alpha) [H, rho]
///              + alpha sum_kl (L_kl rho L_kl^+ - 1/2 {L_kl^+ L_kl, rho})
/// with H = A and L_kl = A_kl |k><l|.
class LindbladGenerator {
 public:
  LindbladGenerator(const Graph& g, double alpha);

  DensityMatrix operator()(const DensityMatrix& rho) const;
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(h_.rows()); }
  double alpha() const noexcept { return alpha_; }

 private:
  double alpha_;
  Eigen::MatrixXcd h_;
  Eigen::MatrixXd gain_;    // |A_kl|^2, maps source populations to targets
  Eigen::VectorXd decay_;   // sum_k |A_kl|^2
};

DensityMatrix lindblad_rhs(const DensityMatrix& rho, const Graph& g, double alpha);

/// 1e-3 / k_max, the step used when callers do not supply one.
double default_oracle_timestep(const Graph& g);

/// Fixed-step classical RK4 from 0 to t_final. The step is shrunk so it
/// divides t_final exactly; rho is re-symmetrized after every step. Throws
/// InvariantViolation if the trace drifts by more than 1e-6.
DensityMatrix integrate(const DensityMatrix& rho0, const Graph& g, double alpha, double t_final, double dt);

/// Populations diag(rho(t)) at each time of an ascending grid.
std::vector<Eigen::VectorXd> integrate_populations(const DensityMatrix& rho0, const Graph& g, double alpha,
                                                   std::span<const double> times, double dt);

/// Max-entry difference between integrating with dt and dt/2.
double step_halving_error(const DensityMatrix& rho0, const Graph& g, double alpha, double t_final, double dt);

/// psi(t) = exp(-i H t) psi0 via eigendecomposition of the real-symmetric H.
QuantumState unitary_oracle(const Graph& g, const QuantumState& psi0, double t);

struct OccupationEstimate {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> mean;
  std::vector<Eigen::VectorXd> standard_error;  // sample standard deviation / sqrt(M)
  std::size_t samples = 0;
};

/// Mean and standard error of |<k|psi(t)>|^2 across trajectories.
OccupationEstimate ensemble_occupations(std::span<const OccupationSnapshot> trajectories,
                                        std::span<const double> times);

struct OracleComparisonRow {
  double t;
  NodeId node;
  double traj_mean;
  double traj_stderr;
  double lindblad_diag;
  double z_score;
};

std::vector<OracleComparisonRow> compare_with_lindblad(const OccupationEstimate& estimate,
                                                       std::span<const Eigen::VectorXd> populations);

/// Columns: t,node,traj_mean,traj_stderr,lindblad_diag,z_score.
void save_oracle_comparison(std::span<const OracleComparisonRow> rows, const std::filesystem::path& path,
                            std::span<const std::string> header_lines = {});

}  // namespace qcw
