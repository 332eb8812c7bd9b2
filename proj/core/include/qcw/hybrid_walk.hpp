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
#include <complex>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qcw/corpus.hpp"
#include "qcw/graph.hpp"
#include "qcw/random.hpp"

namespace qcw {

using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// H_kl = w_kl (real symmetric, zero diagonal).
Eigen::MatrixXd hamiltonian(const Graph& g);

/// Total outgoing jump rate per node at alpha = 1: sum_k |A_kl|^2. On
/// unweighted graphs this is the degree.
Eigen::VectorXd decay_rates(const Graph& g);

/// Pure state over graph nodes. Always unit norm.
class QuantumState {
 public:
  /// Normalizes the given amplitudes; throws InvalidArgument on a zero or
  /// non-finite vector.
  explicit QuantumState(ComplexVector amplitudes);

  static QuantumState localized(std::size_t node_count, NodeId node);

  std::size_t size() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
  const ComplexVector& amplitudes() const noexcept { return amplitudes_; }
  std::complex<double> amplitude(NodeId k) const { return amplitudes_[k]; }
  double occupation(NodeId k) const { return std::norm(amplitudes_[k]); }
  Eigen::VectorXd occupations() const { return amplitudes_.cwiseAbs2(); }
  double norm() const { return amplitudes_.norm(); }

 private:
  ComplexVector amplitudes_;
};

/// One quantum-jump channel L_kl = A_kl |k><l|, moving the walker from
/// source l to target k.
struct JumpChannel {
  NodeId target;
  NodeId source;
  double probability;
};

/// Jump probabilities for one time step, p_kl = alpha |A_kl|^2 dt |<l|psi>|^2.
/// Only channels with p_kl > 0 are returned, ordered by the flattened index
/// k + N*l (source-major, then ascending target).
std::vector<JumpChannel> jump_channels(const QuantumState& psi, const Graph& g, double alpha, double dt);

/// Sum of channel probabilities. Throws TimestepTooLarge when P >= 0.5.
double total_jump_probability(std::span<const JumpChannel> channels);

/// Index of the first channel whose cumulative probability exceeds r, i.e.
/// P_n <= r < P_{n+1}. Requires r < total probability; a draw landing past
/// the last cumulative value through rounding selects the last channel.
std::size_t sample_channel(double r, std::span<const JumpChannel> channels);

/// How the jump-free segment of a step is propagated.
enum class NoJumpScheme {
  /// psi <- exp(-i H_eff dt) psi with H_eff = (1-alpha) H - i (alpha/2) D.
  exact,
  /// psi <- {1 - i (1-alpha) H dt - (alpha dt / 2) D} psi, the first-order
  /// expansion of the same operator.
  first_order,
};

/// Precomputed jump-free step operator for a fixed (graph, alpha, dt).
class NoJumpPropagator {
 public:
  NoJumpPropagator(const Graph& g, double alpha, double dt, NoJumpScheme scheme = NoJumpScheme::exact);

  /// Applies the step operator and renormalizes.
  QuantumState apply(const QuantumState& psi) const;
  const ComplexMatrix& matrix() const noexcept { return step_; }

 private:
  ComplexMatrix step_;
};

QuantumState no_jump_evolve(const QuantumState& psi, const Graph& g, double alpha, double dt,
                            NoJumpScheme scheme = NoJumpScheme::exact);

/// min(0.01, 0.1 / (alpha * k_max)); bounds the per-step jump probability
/// by 0.1. alpha = 0 yields 0.01.
double default_timestep(const Graph& g, double alpha);

struct HqcwParams {
  double alpha = 0.8;
  std::optional<double> dt;  // default_timestep() when unset
  std::size_t walk_length = 10;  // number of jumps per trajectory
  std::size_t walks_per_node = 3;
  std::optional<double> t_max;  // 10 * walk_length / alpha when unset
  std::uint64_t seed = 0;
  NoJumpScheme scheme = NoJumpScheme::exact;

  double resolved_dt(const Graph& g) const;
  double resolved_t_max() const;
  /// Throws InvalidAlpha unless 0 < alpha <= 1, InvalidArgument otherwise.
  void validate() const;
};

struct Trajectory {
  std::vector<NodeId> nodes;       // collapsed nodes, nodes[0] is the start
  std::vector<NodeId> sources;     // source node of each jump channel
  std::vector<double> jump_times;  // strictly increasing, one per jump
  double final_time = 0.0;
  bool timed_out = false;          // t_max reached before walk_length jumps
};

/// Quantum-jump Monte Carlo simulator for one (graph, alpha, dt).
///
/// Each step of length dt either collapses the walker onto the target of a
/// sampled jump channel, with total probability P, or applies the jump-free
/// propagator and renormalizes.
class HybridWalker {
 public:
  HybridWalker(const Graph& g, double alpha, double dt, NoJumpScheme scheme = NoJumpScheme::exact);

  double alpha() const noexcept { return alpha_; }
  double dt() const noexcept { return dt_; }

  /// Runs until `jumps` jumps were recorded or t_max is exceeded.
  Trajectory run(NodeId start, std::size_t jumps, double t_max, Rng& rng) const;

  /// Occupation snapshots |<k|psi>|^2 after each of the
  /// given step counts (ascending). Used for ensemble comparisons; alpha = 0
  /// is allowed here.
  std::vector<Eigen::VectorXd> occupation_snapshots(NodeId start, std::span<const std::size_t> steps,
                                                    Rng& rng) const;

  /// Advances psi by one step. Returns the channel taken, if any.
  std::optional<JumpChannel> step(QuantumState& psi, Rng& rng) const;

 private:
  const Graph* graph_;
  double alpha_;
  double dt_;
  Eigen::VectorXd rates_;
  NoJumpPropagator propagator_;
};

/// Single trajectory from a localized start state. Throws InvalidAlpha for
/// alpha outside (0, 1]. Timeouts are reported through Trajectory::timed_out.
Trajectory run_trajectory(const Graph& g, NodeId start, const HqcwParams& params, Rng& rng);

std::uint64_t trajectory_seed(std::uint64_t master, NodeId start, std::size_t index) noexcept;

struct HqcwCorpus {
  WalkCorpus corpus;
  std::vector<Trajectory> trajectories;
  std::size_t timed_out = 0;
};

/// walks_per_node trajectories from every node, ordered by (start, index),
/// each with its own sub-seeded stream.
HqcwCorpus generate_hqcw_corpus(const Graph& g, const HqcwParams& params, std::size_t threads = 1);
WalkCorpus generate_corpus(const Graph& g, const HqcwParams& params, std::size_t threads = 1);

/// One line per jump: trajectory_id<TAB>time<TAB>node.
void save_trajectory_dump(std::span<const Trajectory> trajectories, const std::filesystem::path& path,
                          std::span<const std::string> header_lines = {});

/// Maps times to step counts, round(t / dt). Throws InvalidArgument when a
/// time is negative or not within 1e-6 of a step boundary.
std::vector<std::size_t> grid_steps(std::span<const double> times, double dt);

/// Per-trajectory occupations at each grid time.
using OccupationSnapshot = std::vector<Eigen::VectorXd>;

/// Runs `trajectories` independent trajectories from |start> without a jump
/// limit and records occupations on the time grid (alpha in [0, 1]).
std::vector<OccupationSnapshot> simulate_occupations(const Graph& g, NodeId start, double alpha, double dt,
                                                     std::span<const double> times, std::size_t trajectories,
                                                     std::uint64_t seed,
                                                     NoJumpScheme scheme = NoJumpScheme::exact,
                                                     std::size_t threads = 1);

/// Exact expectation of the stepped jump process started at |start>.
///
/// After every jump the state is a basis state, and the jump-free evolution
/// from a basis state is deterministic, so the process renews at jumps. The
/// mean occupation is assembled from the deterministic jump-free branches
/// weighted by renewal (arrival) probabilities. Cost O(S^2 N^2) for S steps.
std::vector<Eigen::VectorXd> expected_occupations(const Graph& g, NodeId start, double alpha, double dt,
                                                  std::span<const double> times,
                                                  NoJumpScheme scheme = NoJumpScheme::exact);

}  // namespace qcw
