#include "doctest.h"

#include <cmath>
#include <random>

#include "qhg/error.hpp"
#include "qhg/quantum_laplacian.hpp"
#include "test_support.hpp"

using namespace qhg;
using qhg::testing::hstar;
using qhg::testing::kPi;
using qhg::testing::max_abs_diff;
using qhg::testing::p1_neumann_eigenvalue;
using qhg::testing::random_hypergraph;
using qhg::testing::single_edge;
using qhg::testing::two_edge_path;

namespace {

DiscreteForm form_of(const OrientedHypergraph& h, std::size_t n) {
  const OrientedSection s = oriented_section(h);
  return assemble(s, coupling_matrix(s), n);
}

RealMatrix kron(const RealMatrix& a, const RealMatrix& b) {
  RealMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("1D P1 matrices") {
  RealMatrix s(3, 3);
  s << 1, -1, 0, -1, 2, -1, 0, -1, 1;
  CHECK(max_abs_diff(stiffness_1d(2), 2.0 * s) == 0.0);
  RealMatrix m(3, 3);
  m << 2, 1, 0, 1, 4, 1, 0, 1, 2;
  CHECK(max_abs_diff(mass_1d(2), m / 12.0) < 1e-16);
}

TEST_CASE("assemble: hand-assembled examples") {
  const DiscreteForm edge = form_of(single_edge(), 2);
  RealMatrix s(3, 3);
  s << 1, -1, 0, -1, 2, -1, 0, -1, 1;
  CHECK(max_abs_diff(RealMatrix(edge.stiffness), 2.0 * s) == 0.0);

  const DiscreteForm star = form_of(hstar(), 2);
  RealMatrix c(2, 2);
  c << 0.5, 0.5, 0.5, 0.5;
  CHECK(max_abs_diff(RealMatrix(star.stiffness), kron(c, 2.0 * s)) == 0.0);
  CHECK(max_abs_diff(RealMatrix(star.mass), kron(RealMatrix::Identity(2, 2), mass_1d(2))) <
        1e-16);

  CHECK(code_of([] { form_of(single_edge(), 1); }) == ErrorCode::GridTooCoarse);
}

TEST_CASE("assemble: symmetry, constants, lumping, graph reduction") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 30; ++trial) {
    const bool graph_only = trial % 3 == 0;
    const auto h = random_hypergraph(rng, 6, 4, graph_only);
    const std::size_t n = 2 + trial % 5;
    const DiscreteForm f = form_of(h, n);
    const RealMatrix k(f.stiffness);
    const RealMatrix m(f.mass);
    CHECK(f.grid.dofs() == oriented_section(h).big_m * (n + 1));
    CHECK(k == k.transpose());
    CHECK(m == m.transpose());
    const RealVector ones = RealVector::Ones(k.rows());
    CHECK(std::abs(ones.dot(k * ones)) < 1e-10);
    CHECK((k * ones).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(sym_eigen(m).eigenvalues.minCoeff() > 0.0);
    // Lumping keeps the row sums.
    CHECK(((RealMatrix(f.lumped_mass) - m) * ones).cwiseAbs().maxCoeff() < 1e-14);
    if (graph_only) {
      const RealMatrix uncoupled =
          kron(RealMatrix::Identity(static_cast<Eigen::Index>(f.grid.edges),
                                    static_cast<Eigen::Index>(f.grid.edges)),
               stiffness_1d(n));
      CHECK(k == uncoupled);
    }
  }
}

TEST_CASE("node_constraints") {
  CHECK(form_of(single_edge(), 4).constraints.rows() == 0);

  // Path: only the middle node has two incidences; its row ties
  // edge0 at x=1 to edge1 at x=0.
  const DiscreteForm path = form_of(two_edge_path(), 4);
  REQUIRE(path.constraints.rows() == 1);
  const RealMatrix b(path.constraints);
  CHECK(b(0, 4) == -1.0);
  CHECK(b(0, 5) == 1.0);
  CHECK(b.cwiseAbs().sum() == 2.0);

  // Both section edges of the example end at v3 with identical traces of Cf,
  // so the only candidate row vanishes and is dropped.
  CHECK(form_of(hstar(), 4).constraints.rows() == 0);

  // Two hyperedges meeting at a node whose traces differ produce a row
  // involving every edge of both blocks.
  const auto h = build_hypergraph(
      {"a", "b", "c", "d"}, std::vector<RawHyperedge>{{{"a", "b"}, {"c"}}, {{"c"}, {"d"}}});
  const DiscreteForm f = form_of(h, 2);
  // c: ends of edges 0 and 1 (identical traces, dropped) and start of edge 2.
  REQUIRE(f.constraints.rows() == 1);
  const RealMatrix row(f.constraints);
  CHECK(row(0, f.grid.dof(0, 2)) == -0.5);
  CHECK(row(0, f.grid.dof(1, 2)) == -0.5);
  CHECK(row(0, f.grid.dof(2, 0)) == 1.0);
}

TEST_CASE("null_space") {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = random_hypergraph(rng, 6, 4);
    const DiscreteForm f = form_of(h, 3);
    const NullSpace ns = null_space(f.constraints);
    const auto cols = ns.basis.cols();
    CHECK(static_cast<std::size_t>(cols) + ns.rank == f.grid.dofs());
    CHECK(max_abs_diff(ns.basis.transpose() * ns.basis, RealMatrix::Identity(cols, cols)) <
          1e-12);
    if (f.constraints.rows() > 0)
      CHECK((f.constraints * ns.basis).cwiseAbs().maxCoeff() < 1e-12);
    // Same input, same basis.
    CHECK(null_space(f.constraints).basis == ns.basis);
  }
  // Dependent rows are detected.
  SparseMatrix b(2, 3);
  b.insert(0, 0) = 1.0;
  b.insert(0, 1) = -1.0;
  b.insert(1, 0) = 2.0;
  b.insert(1, 1) = -2.0;
  CHECK(null_space(b).rank == 1);
  CHECK(null_space(b).basis.cols() == 2);
}

TEST_CASE("solve_eigenproblem: quantum graphs") {
  SUBCASE("single edge is the Neumann interval") {
    const EigenResult r = solve_eigenproblem(form_of(single_edge(), 128), 3);
    CHECK(std::abs(r.eigenvalues(0)) < 1e-8);
    CHECK(std::abs(r.eigenvalues(1) / (kPi * kPi) - 1.0) < 2e-3);
    CHECK(std::abs(r.eigenvalues(2) / (4 * kPi * kPi) - 1.0) < 2e-3);
    for (std::size_t j = 1; j < 3; ++j)
      CHECK(std::abs(r.eigenvalues(static_cast<Eigen::Index>(j)) /
                         p1_neumann_eigenvalue(j, 128, 1.0 / 128) -
                     1.0) < 1e-9);
    CHECK(r.kernel_dim == 1);
  }
  SUBCASE("two-edge path is an interval of length two") {
    const EigenResult r = solve_eigenproblem(form_of(two_edge_path(), 128), 3);
    CHECK(std::abs(r.eigenvalues(0)) < 1e-8);
    CHECK(std::abs(r.eigenvalues(1) / (kPi * kPi / 4) - 1.0) < 2e-3);
    CHECK(std::abs(r.eigenvalues(2) / (kPi * kPi) - 1.0) < 2e-3);
    for (std::size_t j = 1; j < 3; ++j)
      CHECK(std::abs(r.eigenvalues(static_cast<Eigen::Index>(j)) /
                         p1_neumann_eigenvalue(j, 256, 1.0 / 128) -
                     1.0) < 1e-9);
    CHECK(r.constraint_rows == 1);
    CHECK(r.reduced_dim == r.dofs - 1);
  }
}

TEST_CASE("solve_eigenproblem: three-node hypergraph") {
  const std::size_t n = 16;
  const DiscreteForm f = form_of(hstar(), n);
  const EigenResult r = solve_eigenproblem(f, 2 * (n + 1));
  // ker C contributes n+1 zero modes, plus the constants.
  CHECK(r.kernel_dim == n + 2);
  // The rest matches the single-edge discrete Neumann spectrum.
  for (std::size_t j = 1; j + n + 1 < 2 * (n + 1); ++j)
    CHECK(std::abs(r.eigenvalues(static_cast<Eigen::Index>(n + 1 + j)) /
                       p1_neumann_eigenvalue(j, n, 1.0 / n) -
                   1.0) < 1e-9);
  // M-orthonormal eigenvectors.
  const RealMatrix& v = r.eigenvectors;
  const RealMatrix gram = v.transpose() * (f.mass * v);
  CHECK(max_abs_diff(gram, RealMatrix::Identity(gram.rows(), gram.cols())) < 1e-9);
  CHECK(reduced_stiffness_min_eigenvalue(f) >= -1e-9 * r.stiffness_norm);

  CHECK(code_of([&] { solve_eigenproblem(f, f.grid.dofs() + 1); }) ==
        ErrorCode::TooManyRequested);
}

TEST_CASE("eigenvectors satisfy the node constraints") {
  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 10; ++trial) {
    const DiscreteForm f = form_of(random_hypergraph(rng, 5, 3), 6);
    const EigenResult r = solve_eigenproblem(f, 5);
    if (f.constraints.rows() > 0)
      CHECK((f.constraints * r.eigenvectors).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(r.eigenvalues.minCoeff() >= -1e-9 * r.stiffness_norm);
    CHECK(r.dofs - r.constraint_rank == r.reduced_dim);
  }
}

TEST_CASE("Galerkin monotonicity under grid doubling") {
  std::mt19937_64 rng(109);
  for (int trial = 0; trial < 8; ++trial) {
    const auto h = random_hypergraph(rng, 5, 3);
    const DiscreteForm cf = form_of(h, 4);
    const auto k_max = std::min<std::size_t>(
        6, static_cast<std::size_t>(null_space(cf.constraints).basis.cols()));
    const EigenResult coarse = solve_eigenproblem(cf, k_max);
    const EigenResult fine = solve_eigenproblem(form_of(h, 8), k_max);
    for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(k_max); ++k)
      CHECK(fine.eigenvalues(k) <= coarse.eigenvalues(k) + 1e-9);
  }
}

TEST_CASE("qlap_heat") {
  const std::vector<double> times{0.0, 0.001, 0.01, 0.1};

  SUBCASE("constants are stationary") {
    const DiscreteForm f = form_of(hstar(), 8);
    const RealVector c = RealVector::Constant(static_cast<Eigen::Index>(f.grid.dofs()), 2.5);
    const QuantumHeatResult r = qlap_heat(f, c, times);
    for (const auto& s : r.trajectory.states) CHECK((s - c).cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("graph edge with lumped mass stays nonnegative") {
    const DiscreteForm f = form_of(single_edge(), 16);
    for (std::size_t d = 0; d < f.grid.dofs(); ++d) {
      const RealVector hat = RealVector::Unit(static_cast<Eigen::Index>(f.grid.dofs()),
                                              static_cast<Eigen::Index>(d));
      CHECK(qlap_heat(f, hat, times).min_entry >= -1e-8);
    }
  }
  SUBCASE("consistent mass is not positivity preserving at small times") {
    const DiscreteForm f = form_of(single_edge(), 16);
    const RealVector hat = RealVector::Unit(static_cast<Eigen::Index>(f.grid.dofs()), 8);
    CHECK(qlap_heat(f, hat, times, MassKind::Consistent).min_entry < -1e-4);
  }
  SUBCASE("coupled block produces negative values") {
    const DiscreteForm f = form_of(hstar(), 16);
    const RealVector hat = RealVector::Unit(static_cast<Eigen::Index>(f.grid.dofs()), 8);
    CHECK(qlap_heat(f, hat, times).min_entry < -1e-6);
  }
  SUBCASE("initial data off the constraint set") {
    const DiscreteForm f = form_of(two_edge_path(), 4);
    const auto dofs = static_cast<Eigen::Index>(f.grid.dofs());
    RealVector slightly = RealVector::Ones(dofs);
    slightly(4) += 0.01;
    const QuantumHeatResult r = qlap_heat(f, slightly, times);
    CHECK(r.projected);
    CHECK(r.projection_distance == doctest::Approx(0.01 / std::sqrt(2.0)));
    CHECK((f.constraints * r.trajectory.states[0]).cwiseAbs().maxCoeff() < 1e-12);

    const RealVector hat = RealVector::Unit(dofs, 4);
    CHECK(code_of([&] { qlap_heat(f, hat, times); }) == ErrorCode::ConstraintViolation);
    CHECK(code_of([&] { qlap_heat(f, RealVector::Ones(3), times); }) ==
          ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("convergence_study") {
  const std::vector<std::size_t> ns{16, 32, 64};
  SUBCASE("single edge converges at second order") {
    const OrientedSection s = oriented_section(single_edge());
    const std::vector<double> reference{kPi * kPi};
    const ConvergenceReport r = convergence_study(s, coupling_matrix(s), ns, 1, reference);
    REQUIRE(r.reference_error.size() == 3);
    for (std::size_t i = 0; i + 1 < 3; ++i) {
      const double ratio = r.reference_error[i][0] / r.reference_error[i + 1][0];
      CHECK(ratio > 3.6);
      CHECK(ratio < 4.4);
    }
    CHECK(std::abs(r.estimated_order[0][0] - 2.0) < 0.2);
    for (const auto& row : r.rows) CHECK(std::abs(row.lambda0) < 1e-9);
  }
  SUBCASE("three-node hypergraph: Cauchy differences shrink") {
    const OrientedSection s = oriented_section(hstar());
    const ConvergenceReport r = convergence_study(s, coupling_matrix(s), ns, 3);
    for (std::size_t j = 0; j < 3; ++j) CHECK(r.cauchy[1][j] < r.cauchy[0][j]);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(std::abs(r.rows[i].lambda0) < 1e-9);
      CHECK(r.rows[i].kernel_dim == ns[i] + 2);
    }
  }
  SUBCASE("argument checks") {
    const OrientedSection s = oriented_section(single_edge());
    const CouplingMatrix c = coupling_matrix(s);
    const std::vector<std::size_t> short_list{4, 8};
    const std::vector<std::size_t> descending{8, 4, 16};
    const std::vector<std::size_t> coarse{1, 4, 8};
    CHECK(code_of([&] { convergence_study(s, c, short_list, 1); }) ==
          ErrorCode::InvalidArgument);
    CHECK(code_of([&] { convergence_study(s, c, descending, 1); }) ==
          ErrorCode::InvalidArgument);
    CHECK(code_of([&] { convergence_study(s, c, coarse, 1); }) == ErrorCode::GridTooCoarse);
  }
}
