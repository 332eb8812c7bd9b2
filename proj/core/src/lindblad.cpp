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
#include "qcw/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "qcw/errors.hpp"

namespace qcw {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

void check_oracle_size(const Graph& g) {
  if (g.node_count() > kMaxOracleNodes) {
    throw InvalidArgument("density-matrix oracle supports at most " + std::to_string(kMaxOracleNodes) + " nodes");
  }
}

void symmetrize(DensityMatrix& rho) {
  const DensityMatrix adj = rho.adjoint();
  rho = 0.5 * (rho + adj);
}

void rk4_step(const LindbladGenerator& f, DensityMatrix& rho, double h) {
  const DensityMatrix k1 = f(rho);
  const DensityMatrix k2 = f(rho + (0.5 * h) * k1);
  const DensityMatrix k3 = f(rho + (0.5 * h) * k2);
  const DensityMatrix k4 = f(rho + h * k3);
  rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  symmetrize(rho);
}

// Advances rho by `span` using the largest step <= dt that divides it.
void advance(const LindbladGenerator& f, DensityMatrix& rho, double span, double dt) {
  if (span <= 0.0) return;
  const auto steps = static_cast<std::size_t>(std::ceil(span / dt - 1e-9));
  const double h = span / static_cast<double>(std::max<std::size_t>(steps, 1));
  for (std::size_t i = 0; i < std::max<std::size_t>(steps, 1); ++i) rk4_step(f, rho, h);
}

void check_trace(const DensityMatrix& rho) {
  const double drift = std::abs(rho.trace() - std::complex<double>(1.0, 0.0));
  if (drift > 1e-6) throw InvariantViolation("trace drifted by " + std::to_string(drift));
}

void check_integration_args(const DensityMatrix& rho0, const Graph& g, double alpha, double dt) {
  check_oracle_size(g);
  if (static_cast<std::size_t>(rho0.rows()) != g.node_count() || rho0.rows() != rho0.cols()) {
    throw InvalidArgument("density matrix dimension does not match graph");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidAlpha("alpha must lie in [0, 1]");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be positive and finite");
  check_density_matrix(rho0);
}

}  // namespace

DensityMatrix pure_density(const QuantumState& psi) {
  return psi.amplitudes() * psi.amplitudes().adjoint();
}

void check_density_matrix(const DensityMatrix& rho, double tol) {
  if (rho.rows() != rho.cols()) throw InvariantViolation("density matrix must be square");
  const double asym = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tol) throw InvariantViolation("density matrix is not Hermitian (deviation " + std::to_string(asym) + ")");
  const double drift = std::abs(rho.trace() - std::complex<double>(1.0, 0.0));
  if (drift > tol) throw InvariantViolation("density matrix trace deviates from 1 by " + std::to_string(drift));
  for (Eigen::Index k = 0; k < rho.rows(); ++k) {
    const double d = rho(k, k).real();
    if (d < -tol || d > 1.0 + tol) throw InvariantViolation("population out of [0,1] at node " + std::to_string(k));
  }
}

LindbladGenerator::LindbladGenerator(const Graph& g, double alpha)
    : alpha_(alpha),
      h_(hamiltonian(g).cast<std::complex<double>>()),
      gain_(hamiltonian(g).cwiseAbs2()),
      decay_(decay_rates(g)) {
  check_oracle_size(g);
}

DensityMatrix LindbladGenerator::operator()(const DensityMatrix& rho) const {
  // L_kl rho L_kl^+ = |A_kl|^2 rho_ll |k><k|;  sum_kl L^+ L = diag(decay).
  const DensityMatrix hr = h_ * rho;
  DensityMatrix out = (-kI * (1.0 - alpha_)) * (hr - hr.adjoint());
  if (alpha_ != 0.0) {
    const Eigen::VectorXd populations = rho.diagonal().real();
    const Eigen::VectorXd gained = gain_ * populations;
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
      for (Eigen::Index j = 0; j < rho.cols(); ++j) {
        out(i, j) -= alpha_ * 0.5 * (decay_[i] + decay_[j]) * rho(i, j);
      }
      out(i, i) += alpha_ * gained[i];
    }
  }
  return out;
}

DensityMatrix lindblad_rhs(const DensityMatrix& rho, const Graph& g, double alpha) {
  return LindbladGenerator(g, alpha)(rho);
}

double default_oracle_timestep(const Graph& g) { return 1e-3 / decay_rates(g).maxCoeff(); }

DensityMatrix integrate(const DensityMatrix& rho0, const Graph& g, double alpha, double t_final, double dt) {
  check_integration_args(rho0, g, alpha, dt);
  if (!(t_final >= 0.0)) throw InvalidArgument("t_final must be non-negative");
  const LindbladGenerator f(g, alpha);
  DensityMatrix rho = rho0;
  advance(f, rho, t_final, dt);
  check_trace(rho);
  return rho;
}

std::vector<Eigen::VectorXd> integrate_populations(const DensityMatrix& rho0, const Graph& g, double alpha,
                                                   std::span<const double> times, double dt) {
  check_integration_args(rho0, g, alpha, dt);
  if (!std::is_sorted(times.begin(), times.end())) throw InvalidArgument("time grid must be ascending");
  const LindbladGenerator f(g, alpha);
  DensityMatrix rho = rho0;
  double now = 0.0;
  std::vector<Eigen::VectorXd> out;
  out.reserve(times.size());
  for (double t : times) {
    if (!(t >= 0.0)) throw InvalidArgument("grid times must be non-negative");
    advance(f, rho, t - now, dt);
    now = std::max(now, t);
    check_trace(rho);
    out.push_back(rho.diagonal().real());
  }
  return out;
}

double step_halving_error(const DensityMatrix& rho0, const Graph& g, double alpha, double t_final, double dt) {
  const DensityMatrix coarse = integrate(rho0, g, alpha, t_final, dt);
  const DensityMatrix fine = integrate(rho0, g, alpha, t_final, 0.5 * dt);
  return (coarse - fine).cwiseAbs().maxCoeff();
}

QuantumState unitary_oracle(const Graph& g, const QuantumState& psi0, double t) {
  if (psi0.size() != g.node_count()) throw InvalidArgument("state dimension does not match graph");
  if (!(t >= 0.0)) throw InvalidArgument("t must be non-negative");
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(hamiltonian(g));
  const Eigen::MatrixXcd v = eig.eigenvectors().cast<std::complex<double>>();
  Eigen::VectorXcd phases(eig.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) phases[i] = std::exp(-kI * eig.eigenvalues()[i] * t);
  const Eigen::VectorXcd evolved = v * phases.asDiagonal() * (v.adjoint() * psi0.amplitudes());
  return QuantumState(evolved);
}

OccupationEstimate ensemble_occupations(std::span<const OccupationSnapshot> trajectories,
                                        std::span<const double> times) {
  if (trajectories.empty()) throw InvalidArgument("ensemble must contain at least one trajectory");
  OccupationEstimate est;
  est.times.assign(times.begin(), times.end());
  est.samples = trajectories.size();
  const std::size_t n_times = times.size();
  for (const auto& snap : trajectories) {
    if (snap.size() != n_times) throw InvalidArgument("snapshot count does not match the time grid");
  }
  const double m = static_cast<double>(trajectories.size());
  for (std::size_t ti = 0; ti < n_times; ++ti) {
    const auto dim = trajectories.front()[ti].size();
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(dim);
    for (const auto& snap : trajectories) sum += snap[ti];
    const Eigen::VectorXd mean = sum / m;
    Eigen::VectorXd sq = Eigen::VectorXd::Zero(dim);
    for (const auto& snap : trajectories) sq += (snap[ti] - mean).cwiseAbs2();
    Eigen::VectorXd se = Eigen::VectorXd::Zero(dim);
    if (trajectories.size() > 1) se = (sq / (m - 1.0)).cwiseSqrt() / std::sqrt(m);
    est.mean.push_back(mean);
    est.standard_error.push_back(se);
  }
  return est;
}

std::vector<OracleComparisonRow> compare_with_lindblad(const OccupationEstimate& estimate,
                                                       std::span<const Eigen::VectorXd> populations) {
  if (populations.size() != estimate.times.size()) throw InvalidArgument("population grid does not match estimate");
  std::vector<OracleComparisonRow> rows;
  for (std::size_t ti = 0; ti < estimate.times.size(); ++ti) {
    for (Eigen::Index k = 0; k < estimate.mean[ti].size(); ++k) {
      const double mean = estimate.mean[ti][k];
      const double se = estimate.standard_error[ti][k];
      const double diag = populations[ti][k];
      double z = 0.0;
      if (se > 0.0) {
        z = (mean - diag) / se;
      } else if (mean != diag) {
        z = std::copysign(std::numeric_limits<double>::infinity(), mean - diag);
      }
      rows.push_back({estimate.times[ti], static_cast<NodeId>(k), mean, se, diag, z});
    }
  }
  return rows;
}

void save_oracle_comparison(std::span<const OracleComparisonRow> rows, const std::filesystem::path& path,
                            std::span<const std::string> header_lines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (const auto& line : header_lines) out << "# " << line << '\n';
  out << "t,node,traj_mean,traj_stderr,lindblad_diag,z_score\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%u,%.17g,%.17g,%.17g,%.17g\n", r.t, r.node, r.traj_mean, r.traj_stderr,
                  r.lindblad_diag, r.z_score);
    out << buf;
  }
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace qcw
