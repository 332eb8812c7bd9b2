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
#include "qcw/hybrid_walk.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <unsupported/Eigen/MatrixFunctions>

#include "parallel.hpp"
#include "qcw/errors.hpp"

namespace qcw {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

void check_alpha_range(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InvalidAlpha("alpha must lie in [0, 1], got " + std::to_string(alpha));
  }
}

void check_dt(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be positive and finite");
}

}  // namespace

Eigen::MatrixXd hamiltonian(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    h(e.u, e.v) = e.weight;
    h(e.v, e.u) = e.weight;
  }
  return h;
}

Eigen::VectorXd decay_rates(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::VectorXd rates = Eigen::VectorXd::Zero(n);
  for (NodeId l = 0; l < g.node_count(); ++l) {
    for (const Neighbor& nb : g.neighbors(l)) rates[l] += nb.weight * nb.weight;
  }
  return rates;
}

QuantumState::QuantumState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  const double norm = amplitudes_.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw InvalidArgument("state vector must have finite non-zero norm");
  amplitudes_ /= norm;
}

QuantumState QuantumState::localized(std::size_t node_count, NodeId node) {
  if (node >= node_count) throw InvalidArgument("node " + std::to_string(node) + " out of range");
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(node_count));
  v[node] = 1.0;
  return QuantumState(std::move(v));
}

std::vector<JumpChannel> jump_channels(const QuantumState& psi, const Graph& g, double alpha, double dt) {
  if (psi.size() != g.node_count()) throw InvalidArgument("state dimension does not match graph");
  std::vector<JumpChannel> channels;
  for (NodeId l = 0; l < g.node_count(); ++l) {
    const double occ = psi.occupation(l);
    if (occ == 0.0) continue;
    for (const Neighbor& nb : g.neighbors(l)) {
      const double p = alpha * nb.weight * nb.weight * dt * occ;
      if (p > 0.0) channels.push_back({nb.node, l, p});
    }
  }
  return channels;
}

double total_jump_probability(std::span<const JumpChannel> channels) {
  double total = 0.0;
  for (const auto& c : channels) total += c.probability;
  if (total >= 0.5) {
    throw TimestepTooLarge("total jump probability " + std::to_string(total) + " per step is not below 0.5");
  }
  return total;
}

std::size_t sample_channel(double r, std::span<const JumpChannel> channels) {
  if (channels.empty()) throw InvalidArgument("no jump channels to sample from");
  double cumulative = 0.0;
  for (std::size_t n = 0; n < channels.size(); ++n) {
    cumulative += channels[n].probability;
    if (r < cumulative) return n;
  }
  return channels.size() - 1;
}

NoJumpPropagator::NoJumpPropagator(const Graph& g, double alpha, double dt, NoJumpScheme scheme) {
  check_alpha_range(alpha);
  check_dt(dt);
  const ComplexMatrix h = hamiltonian(g).cast<std::complex<double>>();
  const ComplexMatrix decay = decay_rates(g).cast<std::complex<double>>().asDiagonal();
  // Generator of the jump-free evolution: d psi / dt = -i H_eff psi.
  const ComplexMatrix generator = -kI * (1.0 - alpha) * h - 0.5 * alpha * decay;
  const auto n = static_cast<Eigen::Index>(g.node_count());
  switch (scheme) {
    case NoJumpScheme::exact:
      step_ = (generator * dt).exp();
      break;
    case NoJumpScheme::first_order:
      step_ = ComplexMatrix::Identity(n, n) + generator * dt;
      break;
  }
}

QuantumState NoJumpPropagator::apply(const QuantumState& psi) const {
  return QuantumState(step_ * psi.amplitudes());
}

QuantumState no_jump_evolve(const QuantumState& psi, const Graph& g, double alpha, double dt,
                            NoJumpScheme scheme) {
  return NoJumpPropagator(g, alpha, dt, scheme).apply(psi);
}

double default_timestep(const Graph& g, double alpha) {
  const double k_max = decay_rates(g).maxCoeff();
  if (alpha <= 0.0) return 0.01;
  return std::min(0.01, 0.1 / (alpha * k_max));
}

double HqcwParams::resolved_dt(const Graph& g) const { return dt ? *dt : default_timestep(g, alpha); }

double HqcwParams::resolved_t_max() const {
  return t_max ? *t_max : 10.0 * static_cast<double>(walk_length) / alpha;
}

void HqcwParams::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw InvalidAlpha("alpha must lie in (0, 1] for trajectory generation, got " + std::to_string(alpha));
  }
  if (dt) check_dt(*dt);
  if (t_max && !(*t_max > 0.0)) throw InvalidArgument("t_max must be positive");
  if (walk_length < 1) throw InvalidArgument("walk_length must be at least 1");
  if (walks_per_node < 1) throw InvalidArgument("walks_per_node must be at least 1");
}

HybridWalker::HybridWalker(const Graph& g, double alpha, double dt, NoJumpScheme scheme)
    : graph_(&g), alpha_(alpha), dt_(dt), rates_(decay_rates(g)), propagator_(g, alpha, dt, scheme) {}

std::optional<JumpChannel> HybridWalker::step(QuantumState& psi, Rng& rng) const {
  // Same sum as total_jump_probability over jump_channels, without
  // materializing channels on the (common) no-jump branch.
  const double total = alpha_ * dt_ * rates_.dot(psi.occupations());
  if (total >= 0.5) {
    throw TimestepTooLarge("total jump probability " + std::to_string(total) + " per step is not below 0.5");
  }
  const double r = rng.uniform();
  if (r < total) {
    const auto channels = jump_channels(psi, *graph_, alpha_, dt_);
    const JumpChannel chosen = channels[sample_channel(r, channels)];
    psi = QuantumState::localized(graph_->node_count(), chosen.target);
    return chosen;
  }
  psi = propagator_.apply(psi);
  return std::nullopt;
}

Trajectory HybridWalker::run(NodeId start, std::size_t jumps, double t_max, Rng& rng) const {
  Trajectory traj;
  traj.nodes.reserve(jumps + 1);
  traj.nodes.push_back(start);
  QuantumState psi = QuantumState::localized(graph_->node_count(), start);
  // Integer step counter keeps jump times exact multiples of dt.
  std::size_t steps = 0;
  while (traj.jump_times.size() < jumps) {
    if (static_cast<double>(steps) * dt_ > t_max) {
      traj.timed_out = true;
      break;
    }
    auto jump = step(psi, rng);
    ++steps;
    if (jump) {
      traj.nodes.push_back(jump->target);
      traj.sources.push_back(jump->source);
      traj.jump_times.push_back(static_cast<double>(steps) * dt_);
    }
  }
  traj.final_time = static_cast<double>(steps) * dt_;
  return traj;
}

std::vector<Eigen::VectorXd> HybridWalker::occupation_snapshots(NodeId start, std::span<const std::size_t> steps,
                                                                Rng& rng) const {
  if (!std::is_sorted(steps.begin(), steps.end())) throw InvalidArgument("snapshot steps must be ascending");
  std::vector<Eigen::VectorXd> out;
  out.reserve(steps.size());
  QuantumState psi = QuantumState::localized(graph_->node_count(), start);
  std::size_t done = 0;
  for (std::size_t target : steps) {
    for (; done < target; ++done) step(psi, rng);
    out.push_back(psi.occupations());
  }
  return out;
}

Trajectory run_trajectory(const Graph& g, NodeId start, const HqcwParams& params, Rng& rng) {
  params.validate();
  HybridWalker walker(g, params.alpha, params.resolved_dt(g), params.scheme);
  return walker.run(start, params.walk_length, params.resolved_t_max(), rng);
}

std::uint64_t trajectory_seed(std::uint64_t master, NodeId start, std::size_t index) noexcept {
  return derive_seed(master, {hash_tag("hqcw-trajectory"), start, index});
}

HqcwCorpus generate_hqcw_corpus(const Graph& g, const HqcwParams& params, std::size_t threads) {
  params.validate();
  const HybridWalker walker(g, params.alpha, params.resolved_dt(g), params.scheme);
  const double t_max = params.resolved_t_max();
  HqcwCorpus out;
  out.trajectories.resize(g.node_count() * params.walks_per_node);
  detail::parallel_for(out.trajectories.size(), threads, [&](std::size_t i) {
    const auto start = static_cast<NodeId>(i / params.walks_per_node);
    Rng rng(trajectory_seed(params.seed, start, i % params.walks_per_node));
    out.trajectories[i] = walker.run(start, params.walk_length, t_max, rng);
  });
  out.corpus.walks.reserve(out.trajectories.size());
  for (const auto& t : out.trajectories) {
    out.corpus.walks.push_back(t.nodes);
    if (t.timed_out) ++out.timed_out;
  }
  return out;
}

WalkCorpus generate_corpus(const Graph& g, const HqcwParams& params, std::size_t threads) {
  return generate_hqcw_corpus(g, params, threads).corpus;
}

void save_trajectory_dump(std::span<const Trajectory> trajectories, const std::filesystem::path& path,
                          std::span<const std::string> header_lines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (const auto& line : header_lines) out << "# " << line << '\n';
  char buf[64];
  for (std::size_t id = 0; id < trajectories.size(); ++id) {
    const auto& t = trajectories[id];
    for (std::size_t j = 0; j < t.jump_times.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", t.jump_times[j]);
      out << id << '\t' << buf << '\t' << t.nodes[j + 1] << '\n';
    }
  }
  if (!out) throw IoError("failed writing " + path.string());
}

std::vector<std::size_t> grid_steps(std::span<const double> times, double dt) {
  check_dt(dt);
  std::vector<std::size_t> steps;
  steps.reserve(times.size());
  for (double t : times) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("grid times must be non-negative");
    const double ratio = t / dt;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-6 * std::max(1.0, ratio)) {
      throw InvalidArgument("grid time " + std::to_string(t) + " is not a multiple of dt");
    }
    steps.push_back(static_cast<std::size_t>(rounded));
  }
  return steps;
}

std::vector<OccupationSnapshot> simulate_occupations(const Graph& g, NodeId start, double alpha, double dt,
                                                     std::span<const double> times, std::size_t trajectories,
                                                     std::uint64_t seed, NoJumpScheme scheme, std::size_t threads) {
  check_alpha_range(alpha);
  const auto steps = grid_steps(times, dt);
  const HybridWalker walker(g, alpha, dt, scheme);
  std::vector<OccupationSnapshot> out(trajectories);
  detail::parallel_for(trajectories, threads, [&](std::size_t i) {
    Rng rng(trajectory_seed(seed, start, i));
    out[i] = walker.occupation_snapshots(start, steps, rng);
  });
  return out;
}

std::vector<Eigen::VectorXd> expected_occupations(const Graph& g, NodeId start, double alpha, double dt,
                                                  std::span<const double> times, NoJumpScheme scheme) {
  check_alpha_range(alpha);
  const auto grid = grid_steps(times, dt);
  const std::size_t n = g.node_count();
  const auto nn = static_cast<Eigen::Index>(n);
  if (start >= n) throw InvalidArgument("start node out of range");
  const std::size_t horizon = grid.empty() ? 0 : *std::max_element(grid.begin(), grid.end());

  // Jump-free branch from each basis state |k>: occupations, survival
  // probability and per-target jump probability after m steps.
  const NoJumpPropagator propagator(g, alpha, dt, scheme);
  std::vector<Eigen::MatrixXd> occ(n, Eigen::MatrixXd(nn, horizon + 1));
  std::vector<Eigen::MatrixXd> jump(n, Eigen::MatrixXd(nn, horizon + 1));
  std::vector<Eigen::VectorXd> survival(n, Eigen::VectorXd(horizon + 1));
  for (NodeId k = 0; k < n; ++k) {
    QuantumState psi = QuantumState::localized(n, k);
    double surv = 1.0;
    for (std::size_t m = 0; m <= horizon; ++m) {
      const Eigen::VectorXd o = psi.occupations();
      occ[k].col(static_cast<Eigen::Index>(m)) = o;
      survival[k][static_cast<Eigen::Index>(m)] = surv;
      Eigen::VectorXd to = Eigen::VectorXd::Zero(nn);
      for (NodeId l = 0; l < n; ++l) {
        for (const Neighbor& nb : g.neighbors(l)) to[nb.node] += alpha * nb.weight * nb.weight * dt * o[l];
      }
      jump[k].col(static_cast<Eigen::Index>(m)) = to;
      surv *= 1.0 - to.sum();
      if (m < horizon) psi = propagator.apply(psi);
    }
  }

  // arrivals(:, s): probability of a renewal into each basis state at step s.
  Eigen::MatrixXd arrivals = Eigen::MatrixXd::Zero(nn, horizon + 1);
  arrivals(start, 0) = 1.0;
  for (std::size_t step = 0; step < horizon; ++step) {
    Eigen::VectorXd next = Eigen::VectorXd::Zero(nn);
    for (std::size_t s = 0; s <= step; ++s) {
      const auto age = static_cast<Eigen::Index>(step - s);
      for (NodeId k = 0; k < n; ++k) {
        const double w = arrivals(k, static_cast<Eigen::Index>(s));
        if (w == 0.0) continue;
        next += (w * survival[k][age]) * jump[k].col(age);
      }
    }
    arrivals.col(static_cast<Eigen::Index>(step + 1)) = next;
  }

  std::vector<Eigen::VectorXd> out;
  out.reserve(grid.size());
  for (std::size_t target : grid) {
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(nn);
    for (std::size_t s = 0; s <= target; ++s) {
      const auto age = static_cast<Eigen::Index>(target - s);
      for (NodeId k = 0; k < n; ++k) {
        const double w = arrivals(k, static_cast<Eigen::Index>(s));
        if (w == 0.0) continue;
        mean += (w * survival[k][age]) * occ[k].col(age);
      }
    }
    out.push_back(std::move(mean));
  }
  return out;
}

}  // namespace qcw
