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
#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>

#include <Eigen/Dense>

#include "doctest.h"
#include "qcw/errors.hpp"
#include "qcw/lindblad.hpp"
#include "unit/test_support.hpp"

using namespace qcw;
using namespace qcw::testing;
using cd = std::complex<double>;

namespace {

// Reference right-hand side built literally from the jump operators
// L_kl = A_kl |k><l|, one dense matrix per ordered pair.
DensityMatrix reference_rhs(const DensityMatrix& rho, const Graph& g, double alpha) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    h(e.u, e.v) = e.weight;
    h(e.v, e.u) = e.weight;
  }
  const cd i(0.0, 1.0);
  DensityMatrix out = -i * (1.0 - alpha) * (h * rho - rho * h);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = 0; l < n; ++l) {
      if (h(k, l) == 0.0) continue;
      Eigen::MatrixXcd lkl = Eigen::MatrixXcd::Zero(n, n);
      lkl(k, l) = h(k, l);
      const Eigen::MatrixXcd ld = lkl.adjoint();
      out += alpha * (lkl * rho * ld - 0.5 * (ld * lkl * rho + rho * ld * lkl));
    }
  }
  return out;
}

DensityMatrix random_density(std::size_t n, Rng& rng) {
  const auto m = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd a(m, m);
  for (Eigen::Index r = 0; r < m; ++r) {
    for (Eigen::Index c = 0; c < m; ++c) a(r, c) = cd(rng.uniform() - 0.5, rng.uniform() - 0.5);
  }
  Eigen::MatrixXcd rho = a * a.adjoint();
  return rho / rho.trace().real();
}

std::vector<Graph> test_graphs() {
  std::vector<Graph> gs{complete_graph(2), path_graph(3), two_triangles(), cycle_graph(5), star_graph(4)};
  for (std::uint64_t s = 0; s < 3; ++s) {
    ClusteredErSpec spec{{4, 4}, 0.7, 0.2, s, 100};
    gs.push_back(generate_clustered_er(spec).graph);
  }
  const std::vector<Edge> w{{0, 1, 0.5}, {1, 2, 2.0}, {0, 2, 1.5}};
  gs.emplace_back(3, w);
  return gs;
}

DensityMatrix basis_density(std::size_t n, NodeId k) {
  return pure_density(QuantumState::localized(n, k));
}

}  // namespace

TEST_CASE("maximally mixed state is stationary") {
  for (const Graph& g : test_graphs()) {
    const auto n = static_cast<Eigen::Index>(g.node_count());
    const DensityMatrix mixed = DensityMatrix::Identity(n, n) / static_cast<double>(n);
    for (double a : {0.0, 0.3, 1.0}) CHECK(lindblad_rhs(mixed, g, a).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("right-hand side matches the literal operator sum") {
  Rng rng(5);
  for (const Graph& g : test_graphs()) {
    const DensityMatrix rho = random_density(g.node_count(), rng);
    for (double a : {0.0, 0.4, 1.0}) {
      const DensityMatrix d = lindblad_rhs(rho, g, a);
      CHECK((d - reference_rhs(rho, g, a)).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(std::abs(d.trace()) < 1e-12);
      CHECK((d - d.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("K2 classical rates") {
  const DensityMatrix d = lindblad_rhs(basis_density(2, 0), complete_graph(2), 1.0);
  CHECK(d(0, 0).real() == doctest::Approx(-1.0));
  CHECK(d(1, 1).real() == doctest::Approx(1.0));
}

TEST_CASE("zero alpha leaves only the commutator") {
  Rng rng(6);
  const Graph g = two_triangles();
  const DensityMatrix rho = random_density(6, rng);
  const Eigen::MatrixXcd h = hamiltonian(g).cast<cd>();
  const DensityMatrix expected = -cd(0.0, 1.0) * (h * rho - rho * h);
  CHECK((lindblad_rhs(rho, g, 0.0) - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("K2 classical relaxation has the closed form") {
  const Graph k2 = complete_graph(2);
  const DensityMatrix rho = integrate(basis_density(2, 0), k2, 1.0, 1.0, default_oracle_timestep(k2));
  CHECK(std::abs(rho(0, 0).real() - (0.5 + 0.5 * std::exp(-2.0))) < 1e-6);
  CHECK(std::abs(rho(0, 0).real() - 0.5676676) < 1e-6);
}

TEST_CASE("K2 coherent evolution is cos squared") {
  const Graph k2 = complete_graph(2);
  for (double t : {0.3, 1.0, 2.0}) {
    const DensityMatrix rho = integrate(basis_density(2, 0), k2, 0.0, t, default_oracle_timestep(k2));
    CHECK(std::abs(rho(0, 0).real() - std::pow(std::cos(t), 2)) < 1e-6);
  }
}

TEST_CASE("long-time populations are uniform and the trace is preserved") {
  const Graph g = two_triangles();
  const DensityMatrix rho = integrate(basis_density(6, 0), g, 0.8, 50.0, default_oracle_timestep(g));
  for (Eigen::Index k = 0; k < 6; ++k) CHECK(std::abs(rho(k, k).real() - 1.0 / 6.0) < 1e-4);
  CHECK(std::abs(rho.trace().real() - 1.0) < 1e-8);
  CHECK_NOTHROW(check_density_matrix(rho));
}

TEST_CASE("evolved states stay positive and Hermitian") {
  ClusteredErSpec spec{{5, 5}, 0.6, 0.1, 2, 100};
  const Graph g = generate_clustered_er(spec).graph;
  for (double a : {0.2, 0.7}) {
    DensityMatrix rho = basis_density(10, 3);
    for (int seg = 0; seg < 10; ++seg) {
      rho = integrate(rho, g, a, 1.0, default_oracle_timestep(g));
      CHECK(std::abs(rho.trace().real() - 1.0) < 1e-8);
      CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
      CHECK(es.eigenvalues().minCoeff() > -1e-7);
    }
  }
}

TEST_CASE("integration step halving is negligible at the default step") {
  const Graph g = two_triangles();
  CHECK(step_halving_error(basis_density(6, 0), g, 0.5, 2.0, default_oracle_timestep(g)) < 1e-9);
}

TEST_CASE("population grid matches single integrations") {
  const Graph g = path_graph(4);
  const std::vector<double> times{0.0, 0.5, 1.5};
  const double dt = default_oracle_timestep(g);
  const auto pops = integrate_populations(basis_density(4, 0), g, 0.4, times, dt);
  REQUIRE(pops.size() == 3);
  CHECK(pops[0][0] == doctest::Approx(1.0));
  const DensityMatrix r = integrate(basis_density(4, 0), g, 0.4, 1.5, dt);
  CHECK((pops[2] - r.diagonal().real()).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("invalid density matrices are detected") {
  DensityMatrix rho = DensityMatrix::Identity(2, 2);
  CHECK_THROWS_AS(check_density_matrix(rho), InvariantViolation);
  rho(0, 0) = 0.5;
  rho(1, 1) = 0.5;
  rho(0, 1) = 0.1;
  CHECK_THROWS_AS(check_density_matrix(rho), InvariantViolation);
}

TEST_CASE("unitary oracle") {
  const Graph k2 = complete_graph(2);
  const auto psi0 = QuantumState::localized(2, 0);
  CHECK((unitary_oracle(k2, psi0, 0.0).amplitudes() - psi0.amplitudes()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(std::abs(unitary_oracle(k2, psi0, std::numbers::pi / 2).occupation(1) - 1.0) < 1e-10);
  const Graph p3 = path_graph(3);
  for (double t : {0.1, 1.0, 3.7, 12.0}) {
    CHECK(std::abs(unitary_oracle(p3, QuantumState::localized(3, 0), t).occupations().sum() - 1.0) < 1e-12);
  }
}

TEST_CASE("ensemble occupations are indicators for a single classical trajectory") {
  const std::vector<double> times{0.5, 1.0, 2.0};
  const auto runs = simulate_occupations(two_triangles(), 0, 1.0, 0.01, times, 1, 3);
  const auto est = ensemble_occupations(runs, times);
  for (const auto& m : est.mean) {
    CHECK(m.maxCoeff() == 1.0);
    CHECK(m.sum() == 1.0);
    CHECK(m.minCoeff() == 0.0);
  }
}

TEST_CASE("K2 classical ensemble matches the closed form") {
  const std::vector<double> times{1.0};
  const auto runs = simulate_occupations(complete_graph(2), 0, 1.0, 0.001, times, 10000, 8, NoJumpScheme::exact, 4);
  const auto est = ensemble_occupations(runs, times);
  CHECK(std::abs(est.mean[0][0] - 0.5676676) < 3 * est.standard_error[0][0]);
}

TEST_CASE("ensemble standard error scales with the inverse square root of the size") {
  const std::vector<double> times{1.0};
  const Graph g = two_triangles();
  const auto small = ensemble_occupations(simulate_occupations(g, 0, 0.8, 0.01, times, 100, 1), times);
  const auto large = ensemble_occupations(simulate_occupations(g, 0, 0.8, 0.01, times, 10000, 2, NoJumpScheme::exact, 4), times);
  CHECK(large.samples == 10000);
  const double ratio = small.standard_error[0][0] / large.standard_error[0][0];
  CHECK(ratio > 7.0);
  CHECK(ratio < 13.0);
}

TEST_CASE("comparison rows and CSV") {
  OccupationEstimate est;
  est.times = {1.0};
  est.mean = {Eigen::Vector2d(0.6, 0.4)};
  est.standard_error = {Eigen::Vector2d(0.01, 0.01)};
  est.samples = 100;
  const std::vector<Eigen::VectorXd> pops{Eigen::Vector2d(0.58, 0.42)};
  const auto rows = compare_with_lindblad(est, pops);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].z_score == doctest::Approx(2.0));
  CHECK(rows[1].z_score == doctest::Approx(-2.0));
  TempDir dir;
  save_oracle_comparison(rows, dir / "cmp.csv");
  std::ifstream in(dir / "cmp.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,node,traj_mean,traj_stderr,lindblad_diag,z_score");
}

TEST_CASE("oracle size limit") {
  CHECK_THROWS_AS(LindbladGenerator(path_graph(kMaxOracleNodes + 1), 0.5), InvalidArgument);
}
