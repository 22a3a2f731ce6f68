#pragma once

// P1 finite-element discretization of the quantum hypergraph Laplacian.
//
// Every oriented-section edge is the interval [0,1] with n uniform
// subintervals and its own n+1 nodal values; edges do not share endpoint
// dofs. The quadratic form a(f,g) = sum_{f,g} C_fg int f' g' gives the
// stiffness K, the L2 inner product gives the mass M, and the node condition
// "Cf is continuous at every node" is imposed as linear constraints B f = 0.
// Eigenpairs come from Rayleigh-Ritz on null(B), which approximates the
// Friedrichs extension; endpoint derivative conditions are natural.

#include <Eigen/Sparse>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qhg/coupling.hpp"
#include "qhg/hypergraph.hpp"
#include "qhg/semigroup.hpp"

namespace qhg {

using SparseMatrix = Eigen::SparseMatrix<double>;

// Pivot threshold for the null-space elimination.
inline constexpr double kPivotTolerance = 1e-12;
// Eigenvalues with |lambda| <= kKernelTolerance * max(1, ||K||_inf) count
// towards the discrete kernel.
inline constexpr double kKernelTolerance = 1e-9;

struct EdgeGrid {
  std::size_t n = 2;      // subintervals per edge
  std::size_t edges = 0;  // oriented-section edges

  double h() const noexcept { return 1.0 / static_cast<double>(n); }
  std::size_t points_per_edge() const noexcept { return n + 1; }
  std::size_t dofs() const noexcept { return edges * (n + 1); }
  std::size_t dof(std::size_t edge, std::size_t point) const noexcept {
    return edge * (n + 1) + point;
  }
  // "edge<idx>:x<point>"
  std::string dof_label(std::size_t dof) const;
};

enum class MassKind { Consistent, Lumped };

struct DiscreteForm {
  EdgeGrid grid;
  OrientedSection section;
  CouplingMatrix coupling;
  SparseMatrix stiffness;
  SparseMatrix mass;         // consistent P1 mass
  SparseMatrix lumped_mass;  // row-sum lumping of `mass`
  SparseMatrix constraints;  // one row per retained node condition

  const SparseMatrix& mass_matrix(MassKind kind) const noexcept {
    return kind == MassKind::Lumped ? lumped_mass : mass;
  }
};

// 1D P1 matrices on [0,1] with n elements.
RealMatrix stiffness_1d(std::size_t n);
RealMatrix mass_1d(std::size_t n);

// Throws GridTooCoarse when n < 2.
DiscreteForm assemble(const OrientedSection& section, const CouplingMatrix& c,
                      std::size_t n);

// For every node with k >= 2 incident endpoints, k-1 rows equating
// consecutive traces of Cf. Rows that vanish identically are dropped.
SparseMatrix node_constraints(const OrientedSection& section,
                              const CouplingMatrix& c, const EdgeGrid& grid);

struct NullSpace {
  RealMatrix basis;  // orthonormal columns spanning null(B)
  std::size_t rank = 0;
};

// Gauss-Jordan elimination with partial pivoting (first maximal entry),
// followed by orthonormalization of the free-variable basis.
NullSpace null_space(const SparseMatrix& b, double pivot_tol = kPivotTolerance);

// Rayleigh-Ritz reduction of (K, M) onto null(B), factored for repeated use:
// Z^T M Z = L L^T and L^{-1} Z^T K Z L^{-T} = Y Lambda Y^T.
class ReducedPencil {
 public:
  ReducedPencil(const DiscreteForm& form, MassKind mass);

  const RealMatrix& basis() const noexcept { return basis_; }
  std::size_t constraint_rank() const noexcept { return rank_; }
  std::size_t dimension() const noexcept {
    return static_cast<std::size_t>(basis_.cols());
  }
  const RealVector& eigenvalues() const noexcept { return decomp_.eigenvalues; }
  // Column k: dof-space eigenvector for eigenvalue k, M-normalized.
  RealMatrix dof_eigenvectors(std::size_t count) const;
  // exp(-t M_r^{-1} K_r) applied to f0 = Z c0, returned in dof space.
  RealVector evolve(const RealVector& reduced_initial, double t) const;

 private:
  RealMatrix basis_;
  RealMatrix chol_lower_;
  SymSpectralDecomp decomp_;
  std::size_t rank_ = 0;
};

struct EigenResult {
  std::size_t n = 0;
  RealVector eigenvalues;    // lowest k, ascending
  RealMatrix eigenvectors;   // dofs x k
  std::size_t kernel_dim = 0;
  std::size_t constraint_rows = 0;
  std::size_t constraint_rank = 0;
  std::size_t reduced_dim = 0;
  std::size_t dofs = 0;
  double stiffness_norm = 0.0;  // ||K||_inf
  RealVector all_eigenvalues;
};

// Throws TooManyRequested when k exceeds dim null(B), RankDeficientMass when
// the reduced mass is not positive definite.
EigenResult solve_eigenproblem(const DiscreteForm& form, std::size_t k);

// Smallest eigenvalue of Z^T K Z.
double reduced_stiffness_min_eigenvalue(const DiscreteForm& form);

struct QuantumHeatResult {
  Trajectory trajectory;
  double min_entry = 0.0;
  bool projected = false;
  double projection_distance = 0.0;
};

// Evolves f' = -M^{-1} K f on null(B). f0 is projected onto null(B) when
// ||B f0||_inf > 1e-9; a projection distance above 0.1 ||f0|| raises
// ConstraintViolation. The lumped mass keeps the scheme positivity preserving
// whenever C is diagonal.
class QuantumHeatSolver {
 public:
  explicit QuantumHeatSolver(const DiscreteForm& form,
                             MassKind mass = MassKind::Lumped);

  QuantumHeatResult run(const RealVector& f0, std::span<const double> times) const;

 private:
  const DiscreteForm* form_;
  ReducedPencil pencil_;
};

QuantumHeatResult qlap_heat(const DiscreteForm& form, const RealVector& f0,
                            std::span<const double> times,
                            MassKind mass = MassKind::Lumped);

struct ConvergenceRow {
  std::size_t n = 0;
  double lambda0 = 0.0;
  std::size_t kernel_dim = 0;
  std::vector<double> nonzero;  // lowest k eigenvalues above the kernel
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  // cauchy[i][j] = |nonzero_j(n_{i+1}) - nonzero_j(n_i)|
  std::vector<std::vector<double>> cauchy;
  // Order estimated from successive Cauchy differences; assumes a constant
  // refinement ratio n_{i+1} / n_i.
  std::vector<std::vector<double>> estimated_order;
  // Present when reference limits were supplied.
  std::vector<std::vector<double>> reference_error;
  std::vector<std::vector<double>> reference_order;
};

// Requires at least three ascending resolutions, each >= 2.
ConvergenceReport convergence_study(const OrientedSection& section,
                                    const CouplingMatrix& c,
                                    std::span<const std::size_t> n_list,
                                    std::size_t k,
                                    std::span<const double> reference = {});

}  // namespace qhg
