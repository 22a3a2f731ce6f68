#include "qhg/quantum_laplacian.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "qhg/error.hpp"

namespace qhg {

namespace {

using Triplet = Eigen::Triplet<double>;

double inf_norm(const SparseMatrix& m) {
  RealVector sums = RealVector::Zero(m.rows());
  for (int col = 0; col < m.outerSize(); ++col)
    for (SparseMatrix::InnerIterator it(m, col); it; ++it)
      sums(it.row()) += std::abs(it.value());
  return m.rows() == 0 ? 0.0 : sums.maxCoeff();
}

}  // namespace

std::string EdgeGrid::dof_label(std::size_t dof) const {
  return "edge" + std::to_string(dof / (n + 1)) + ":x" +
         std::to_string(dof % (n + 1));
}

RealMatrix stiffness_1d(std::size_t n) {
  const auto size = static_cast<Eigen::Index>(n + 1);
  const double inv_h = static_cast<double>(n);
  RealMatrix s = RealMatrix::Zero(size, size);
  for (Eigen::Index e = 0; e + 1 < size; ++e) {
    s(e, e) += inv_h;
    s(e + 1, e + 1) += inv_h;
    s(e, e + 1) -= inv_h;
    s(e + 1, e) -= inv_h;
  }
  return s;
}

RealMatrix mass_1d(std::size_t n) {
  const auto size = static_cast<Eigen::Index>(n + 1);
  const double h = 1.0 / static_cast<double>(n);
  RealMatrix m = RealMatrix::Zero(size, size);
  for (Eigen::Index e = 0; e + 1 < size; ++e) {
    m(e, e) += 2.0 * h / 6.0;
    m(e + 1, e + 1) += 2.0 * h / 6.0;
    m(e, e + 1) += h / 6.0;
    m(e + 1, e) += h / 6.0;
  }
  return m;
}

SparseMatrix node_constraints(const OrientedSection& section,
                              const CouplingMatrix& c, const EdgeGrid& grid) {
  // Incident endpoints per node, in edge order; p = 0 at the source, p = 1
  // at the target.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> incident(
      section.nodes.size());
  for (std::size_t f = 0; f < section.edges.size(); ++f) {
    incident[section.edges[f].source].emplace_back(f, 0);
    incident[section.edges[f].target].emplace_back(f, grid.n);
  }

  // Trace of (Cf) on edge f at point p: sum over g in f's block of C_fg f_g(p).
  auto trace = [&](std::size_t f, std::size_t point) {
    std::map<std::size_t, double> row;
    const std::size_t b = c.block_of(f);
    for (std::size_t i = 0; i < c.block_sizes()[b]; ++i) {
      const std::size_t g = c.block_offset(b) + i;
      row[grid.dof(g, point)] += c.entry(f, g);
    }
    return row;
  };

  std::vector<Triplet> triplets;
  Eigen::Index rows = 0;
  for (const auto& ends : incident) {
    for (std::size_t i = 1; i < ends.size(); ++i) {
      std::map<std::size_t, double> diff = trace(ends[i].first, ends[i].second);
      for (const auto& [dof, v] : trace(ends[i - 1].first, ends[i - 1].second))
        diff[dof] -= v;
      bool vanishes = true;
      for (const auto& [dof, v] : diff)
        if (std::abs(v) > 1e-14) vanishes = false;
      if (vanishes) continue;
      for (const auto& [dof, v] : diff)
        if (v != 0.0)
          triplets.emplace_back(rows, static_cast<Eigen::Index>(dof), v);
      ++rows;
    }
  }
  SparseMatrix b(rows, static_cast<Eigen::Index>(grid.dofs()));
  b.setFromTriplets(triplets.begin(), triplets.end());
  return b;
}

DiscreteForm assemble(const OrientedSection& section, const CouplingMatrix& c,
                      std::size_t n) {
  if (n < 2) {
    throw Error(ErrorCode::GridTooCoarse,
                "n: grid needs at least 2 subintervals per edge, got " +
                    std::to_string(n));
  }
  if (c.dimension() != section.edge_count()) {
    throw Error(ErrorCode::DimensionMismatch,
                "coupling matrix dimension does not match the section");
  }
  const EdgeGrid grid{n, section.edge_count()};
  const auto dofs = static_cast<Eigen::Index>(grid.dofs());
  const double h = grid.h();

  std::vector<Triplet> k_trip;
  std::vector<Triplet> m_trip;
  std::vector<Triplet> lumped_trip;
  for (std::size_t f = 0; f < grid.edges; ++f) {
    const std::size_t b = c.block_of(f);
    for (std::size_t i = 0; i < c.block_sizes()[b]; ++i) {
      const std::size_t g = c.block_offset(b) + i;
      const double coef = c.entry(f, g) / h;
      for (std::size_t e = 0; e < n; ++e) {
        const auto f0 = static_cast<Eigen::Index>(grid.dof(f, e));
        const auto g0 = static_cast<Eigen::Index>(grid.dof(g, e));
        k_trip.emplace_back(f0, g0, coef);
        k_trip.emplace_back(f0 + 1, g0 + 1, coef);
        k_trip.emplace_back(f0, g0 + 1, -coef);
        k_trip.emplace_back(f0 + 1, g0, -coef);
      }
    }
    for (std::size_t e = 0; e < n; ++e) {
      const auto d = static_cast<Eigen::Index>(grid.dof(f, e));
      m_trip.emplace_back(d, d, 2.0 * h / 6.0);
      m_trip.emplace_back(d + 1, d + 1, 2.0 * h / 6.0);
      m_trip.emplace_back(d, d + 1, h / 6.0);
      m_trip.emplace_back(d + 1, d, h / 6.0);
      lumped_trip.emplace_back(d, d, h / 2.0);
      lumped_trip.emplace_back(d + 1, d + 1, h / 2.0);
    }
  }

  DiscreteForm form{grid, section, c, SparseMatrix(dofs, dofs),
                    SparseMatrix(dofs, dofs), SparseMatrix(dofs, dofs),
                    SparseMatrix()};
  form.stiffness.setFromTriplets(k_trip.begin(), k_trip.end());
  form.mass.setFromTriplets(m_trip.begin(), m_trip.end());
  form.lumped_mass.setFromTriplets(lumped_trip.begin(), lumped_trip.end());
  form.constraints = node_constraints(section, c, grid);
  return form;
}

NullSpace null_space(const SparseMatrix& b, double pivot_tol) {
  const Eigen::Index cols = b.cols();
  if (b.rows() == 0) return {RealMatrix::Identity(cols, cols), 0};

  RealMatrix r = RealMatrix(b);
  std::vector<Eigen::Index> pivot_cols;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < cols && row < r.rows(); ++col) {
    Eigen::Index best = row;
    for (Eigen::Index i = row + 1; i < r.rows(); ++i)
      if (std::abs(r(i, col)) > std::abs(r(best, col))) best = i;
    if (std::abs(r(best, col)) <= pivot_tol) continue;
    r.row(row).swap(r.row(best));
    r.row(row) /= r(row, col);
    for (Eigen::Index i = 0; i < r.rows(); ++i)
      if (i != row && r(i, col) != 0.0) r.row(i) -= r(i, col) * r.row(row);
    pivot_cols.push_back(col);
    ++row;
  }

  const auto rank = static_cast<Eigen::Index>(pivot_cols.size());
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (Eigen::Index pc : pivot_cols) is_pivot[static_cast<std::size_t>(pc)] = true;

  RealMatrix raw = RealMatrix::Zero(cols, cols - rank);
  Eigen::Index k = 0;
  for (Eigen::Index free = 0; free < cols; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    raw(free, k) = 1.0;
    for (Eigen::Index p = 0; p < rank; ++p) raw(pivot_cols[static_cast<std::size_t>(p)], k) = -r(p, free);
    ++k;
  }
  Eigen::HouseholderQR<RealMatrix> qr(raw);
  RealMatrix q = qr.householderQ() * RealMatrix::Identity(cols, cols - rank);
  return {std::move(q), static_cast<std::size_t>(rank)};
}

ReducedPencil::ReducedPencil(const DiscreteForm& form, MassKind mass) {
  NullSpace ns = null_space(form.constraints);
  basis_ = std::move(ns.basis);
  rank_ = ns.rank;

  const RealMatrix kz = form.stiffness * basis_;
  const RealMatrix mz = form.mass_matrix(mass) * basis_;
  RealMatrix k_red = basis_.transpose() * kz;
  RealMatrix m_red = basis_.transpose() * mz;
  k_red = 0.5 * (k_red + k_red.transpose());
  m_red = 0.5 * (m_red + m_red.transpose());

  Eigen::LLT<RealMatrix> llt(m_red);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::RankDeficientMass,
                "reduced mass matrix is not positive definite");
  }
  chol_lower_ = llt.matrixL();
  // L^{-1} K_r L^{-T}
  RealMatrix tmp = chol_lower_.triangularView<Eigen::Lower>().solve(k_red);
  RealMatrix a = chol_lower_.triangularView<Eigen::Lower>()
                     .solve(tmp.transpose())
                     .transpose();
  a = 0.5 * (a + a.transpose());
  decomp_ = sym_eigen(a, 1e-10);
}

RealMatrix ReducedPencil::dof_eigenvectors(std::size_t count) const {
  const auto k = static_cast<Eigen::Index>(count);
  const RealMatrix y = decomp_.eigenvectors.leftCols(k);
  const RealMatrix u =
      chol_lower_.transpose().triangularView<Eigen::Upper>().solve(y);
  return basis_ * u;
}

RealVector ReducedPencil::evolve(const RealVector& reduced_initial,
                                 double t) const {
  // c(t) = L^{-T} Y exp(-t Lambda) Y^T L^T c0
  const RealVector w = decomp_.eigenvectors.transpose() *
                       (chol_lower_.transpose() * reduced_initial);
  const RealVector decayed =
      (w.array() * (-t * decomp_.eigenvalues.array()).exp()).matrix();
  const RealVector c = chol_lower_.transpose()
                           .triangularView<Eigen::Upper>()
                           .solve(decomp_.eigenvectors * decayed);
  return basis_ * c;
}

EigenResult solve_eigenproblem(const DiscreteForm& form, std::size_t k) {
  ReducedPencil pencil(form, MassKind::Consistent);
  if (k > pencil.dimension()) {
    throw Error(ErrorCode::TooManyRequested,
                "k: requested " + std::to_string(k) +
                    " eigenpairs but the constrained space has dimension " +
                    std::to_string(pencil.dimension()));
  }
  EigenResult res;
  res.n = form.grid.n;
  res.dofs = form.grid.dofs();
  res.constraint_rows = static_cast<std::size_t>(form.constraints.rows());
  res.constraint_rank = pencil.constraint_rank();
  res.reduced_dim = pencil.dimension();
  res.stiffness_norm = inf_norm(form.stiffness);
  res.all_eigenvalues = pencil.eigenvalues();
  res.eigenvalues = pencil.eigenvalues().head(static_cast<Eigen::Index>(k));
  res.eigenvectors = pencil.dof_eigenvectors(k);
  const double kernel_tol = kKernelTolerance * std::max(1.0, res.stiffness_norm);
  for (Eigen::Index i = 0; i < res.all_eigenvalues.size(); ++i)
    if (std::abs(res.all_eigenvalues(i)) <= kernel_tol) ++res.kernel_dim;
  return res;
}

double reduced_stiffness_min_eigenvalue(const DiscreteForm& form) {
  const NullSpace ns = null_space(form.constraints);
  RealMatrix k_red = ns.basis.transpose() * (form.stiffness * ns.basis);
  k_red = 0.5 * (k_red + k_red.transpose());
  return sym_eigen(k_red, 1e-10).eigenvalues(0);
}

QuantumHeatSolver::QuantumHeatSolver(const DiscreteForm& form, MassKind mass)
    : form_(&form), pencil_(form, mass) {}

QuantumHeatResult QuantumHeatSolver::run(const RealVector& f0,
                                         std::span<const double> times) const {
  if (static_cast<std::size_t>(f0.size()) != form_->grid.dofs()) {
    throw Error(ErrorCode::DimensionMismatch,
                "init: expected " + std::to_string(form_->grid.dofs()) +
                    " dof values, got " + std::to_string(f0.size()));
  }
  check_times(times);

  QuantumHeatResult res;
  RealVector start = f0;
  const double residual =
      form_->constraints.rows() == 0
          ? 0.0
          : (form_->constraints * f0).cwiseAbs().maxCoeff();
  if (residual > 1e-9) {
    const RealMatrix& z = pencil_.basis();
    start = z * (z.transpose() * f0);
    res.projected = true;
    res.projection_distance = (f0 - start).norm();
    if (res.projection_distance > 0.1 * f0.norm()) {
      throw Error(ErrorCode::ConstraintViolation,
                  "init: vector is " + std::to_string(res.projection_distance) +
                      " away from the admissible space (limit 0.1 * ||f0||)");
    }
  }
  const RealVector reduced = pencil_.basis().transpose() * start;

  res.trajectory.times.assign(times.begin(), times.end());
  res.min_entry = std::numeric_limits<double>::infinity();
  for (double t : times) {
    RealVector state = t == 0.0 ? start : pencil_.evolve(reduced, t);
    if (state.size() > 0) res.min_entry = std::min(res.min_entry, state.minCoeff());
    res.trajectory.states.push_back(std::move(state));
  }
  return res;
}

QuantumHeatResult qlap_heat(const DiscreteForm& form, const RealVector& f0,
                            std::span<const double> times, MassKind mass) {
  return QuantumHeatSolver(form, mass).run(f0, times);
}

ConvergenceReport convergence_study(const OrientedSection& section,
                                    const CouplingMatrix& c,
                                    std::span<const std::size_t> n_list,
                                    std::size_t k,
                                    std::span<const double> reference) {
  if (n_list.size() < 3) {
    throw Error(ErrorCode::InvalidArgument,
                "n: convergence study needs at least 3 resolutions");
  }
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 2) {
      throw Error(ErrorCode::GridTooCoarse,
                  "n[" + std::to_string(i) + "]: must be at least 2");
    }
    if (i > 0 && n_list[i] <= n_list[i - 1]) {
      throw Error(ErrorCode::InvalidArgument,
                  "n[" + std::to_string(i) + "]: list must be ascending");
    }
  }

  ConvergenceReport report;
  for (std::size_t n : n_list) {
    const DiscreteForm form = assemble(section, c, n);
    const EigenResult eig = solve_eigenproblem(form, 0);
    ConvergenceRow row;
    row.n = n;
    row.kernel_dim = eig.kernel_dim;
    row.lambda0 = eig.all_eigenvalues.size() > 0 ? eig.all_eigenvalues(0) : 0.0;
    const auto total = static_cast<std::size_t>(eig.all_eigenvalues.size());
    if (eig.kernel_dim + k > total) {
      throw Error(ErrorCode::TooManyRequested,
                  "k: only " + std::to_string(total - eig.kernel_dim) +
                      " nonzero eigenvalues available at n = " +
                      std::to_string(n));
    }
    for (std::size_t j = 0; j < k; ++j)
      row.nonzero.push_back(
          eig.all_eigenvalues(static_cast<Eigen::Index>(eig.kernel_dim + j)));
    report.rows.push_back(std::move(row));
  }

  for (std::size_t i = 0; i + 1 < report.rows.size(); ++i) {
    std::vector<double> diffs;
    for (std::size_t j = 0; j < k; ++j)
      diffs.push_back(std::abs(report.rows[i + 1].nonzero[j] -
                               report.rows[i].nonzero[j]));
    report.cauchy.push_back(std::move(diffs));
  }
  for (std::size_t i = 0; i + 1 < report.cauchy.size(); ++i) {
    const double ratio = static_cast<double>(report.rows[i + 1].n) /
                         static_cast<double>(report.rows[i].n);
    std::vector<double> orders;
    for (std::size_t j = 0; j < k; ++j)
      orders.push_back(std::log(report.cauchy[i][j] / report.cauchy[i + 1][j]) /
                       std::log(ratio));
    report.estimated_order.push_back(std::move(orders));
  }

  if (!reference.empty()) {
    if (reference.size() < k) {
      throw Error(ErrorCode::DimensionMismatch,
                  "reference: need one limit per tracked eigenvalue");
    }
    for (const ConvergenceRow& row : report.rows) {
      std::vector<double> errs;
      for (std::size_t j = 0; j < k; ++j)
        errs.push_back(std::abs(row.nonzero[j] - reference[j]));
      report.reference_error.push_back(std::move(errs));
    }
    for (std::size_t i = 0; i + 1 < report.reference_error.size(); ++i) {
      const double ratio = static_cast<double>(report.rows[i + 1].n) /
                           static_cast<double>(report.rows[i].n);
      std::vector<double> orders;
      for (std::size_t j = 0; j < k; ++j)
        orders.push_back(std::log(report.reference_error[i][j] /
                                  report.reference_error[i + 1][j]) /
                         std::log(ratio));
      report.reference_order.push_back(std::move(orders));
    }
  }
  return report;
}

}  // namespace qhg
