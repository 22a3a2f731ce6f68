#include "qhg/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qhg/error.hpp"

namespace qhg {

namespace {

void require_symmetric(const RealMatrix& s, double tol, const char* what) {
  if (s.rows() != s.cols()) {
    throw Error(ErrorCode::NotSquare,
                std::string(what) + ": matrix is " + std::to_string(s.rows()) +
                    "x" + std::to_string(s.cols()));
  }
  const double scale =
      std::max(1.0, s.cwiseAbs().rowwise().sum().maxCoeff());
  for (Eigen::Index i = 0; i < s.rows(); ++i)
    for (Eigen::Index j = i + 1; j < s.cols(); ++j)
      if (std::abs(s(i, j) - s(j, i)) > tol * scale) {
        throw Error(ErrorCode::NotSymmetric,
                    std::string(what) + ": entries (" + std::to_string(i) +
                        "," + std::to_string(j) + ") and transpose differ");
      }
}

double off_diagonal_norm(const RealMatrix& a) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) sum += a(i, j) * a(i, j);
  return std::sqrt(sum);
}

}  // namespace

SymSpectralDecomp sym_eigen(const RealMatrix& s, double tol) {
  require_symmetric(s, tol, "sym_eigen");
  const Eigen::Index n = s.rows();
  RealMatrix a = 0.5 * (s + s.transpose());
  RealMatrix v = RealMatrix::Identity(n, n);
  const double scale = a.norm();

  bool converged = scale == 0.0;
  for (int sweep = 0; sweep < kJacobiMaxSweeps && !converged; ++sweep) {
    if (off_diagonal_norm(a) <= kJacobiThreshold * scale) {
      converged = true;
      break;
    }
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rutishauser's form of the rotation angle.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged && off_diagonal_norm(a) > kJacobiThreshold * scale) {
    throw Error(ErrorCode::NoConvergence,
                "sym_eigen: Jacobi iteration did not converge in " +
                    std::to_string(kJacobiMaxSweeps) + " sweeps");
  }

  // Stable sort keeps the result deterministic for repeated eigenvalues.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return a(x, x) < a(y, y); });

  SymSpectralDecomp out{RealVector(n), RealMatrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.eigenvalues(k) = a(src, src);
    out.eigenvectors.col(k) = v.col(src);
  }
  return out;
}

RealMatrix heat_kernel(const SymSpectralDecomp& decomp, double t) {
  if (t < 0.0) {
    throw Error(ErrorCode::NegativeTime,
                "heat_kernel: time " + std::to_string(t) + " is negative");
  }
  const RealVector decay = (-t * decomp.eigenvalues.array()).exp().matrix();
  const RealMatrix& q = decomp.eigenvectors;
  RealMatrix k = q * decay.asDiagonal() * q.transpose();
  return 0.5 * (k + k.transpose());
}

RealMatrix heat_kernel(const RealMatrix& l, double t) {
  if (t < 0.0) {
    throw Error(ErrorCode::NegativeTime,
                "heat_kernel: time " + std::to_string(t) + " is negative");
  }
  return heat_kernel(sym_eigen(l), t);
}

void check_times(std::span<const double> times) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i])) {
      throw Error(ErrorCode::InvalidArgument,
                  "times[" + std::to_string(i) + "] is not finite");
    }
    if (times[i] < 0.0) {
      throw Error(ErrorCode::NegativeTime,
                  "times[" + std::to_string(i) + "] is negative");
    }
    if (i > 0 && times[i] <= times[i - 1]) {
      throw Error(ErrorCode::InvalidArgument,
                  "times[" + std::to_string(i) + "] is not strictly increasing");
    }
  }
}

Trajectory heat_evolve(const RealMatrix& l, const RealVector& f0,
                       std::span<const double> times) {
  if (l.rows() != f0.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "heat_evolve: initial vector has " + std::to_string(f0.size()) +
                    " entries, operator has " + std::to_string(l.rows()) +
                    " rows");
  }
  check_times(times);
  const SymSpectralDecomp decomp = sym_eigen(l);
  const RealVector coeffs = decomp.eigenvectors.transpose() * f0;

  Trajectory traj;
  traj.times.assign(times.begin(), times.end());
  traj.states.reserve(times.size());
  for (double t : times) {
    if (t == 0.0) {
      traj.states.push_back(f0);
      continue;
    }
    const RealVector decayed =
        (coeffs.array() * (-t * decomp.eigenvalues.array()).exp()).matrix();
    traj.states.push_back(decomp.eigenvectors * decayed);
  }
  return traj;
}

PositivityResult is_positivity_preserving(const RealMatrix& l) {
  require_symmetric(l, 1e-12, "is_positivity_preserving");
  bool preserving = true;
  for (Eigen::Index i = 0; i < l.rows() && preserving; ++i)
    for (Eigen::Index j = 0; j < l.cols(); ++j)
      if (i != j && l(i, j) > 0.0) {
        preserving = false;
        break;
      }
  if (preserving) return {true, std::nullopt};

  const SymSpectralDecomp decomp = sym_eigen(l);
  PositivityWitness best;
  for (double t : kWitnessScanTimes) {
    const RealMatrix k = heat_kernel(decomp, t);
    // Column j is the evolution of the indicator of node j.
    for (Eigen::Index j = 0; j < k.cols(); ++j)
      for (Eigen::Index i = 0; i < k.rows(); ++i)
        if (k(i, j) < best.value) {
          best = {t, static_cast<std::size_t>(j), static_cast<std::size_t>(i),
                  k(i, j)};
        }
  }
  if (!(best.value < -1e-12)) {
    throw Error(ErrorCode::WitnessNotFound,
                "is_positivity_preserving: L has a positive off-diagonal entry "
                "but no negative heat-kernel entry was found at t = 0.01, 0.1, 1");
  }
  return {false, best};
}

double sampled_min_heat_entry(const RealMatrix& l) {
  const SymSpectralDecomp decomp = sym_eigen(l);
  double lowest = std::numeric_limits<double>::infinity();
  for (double t : kWitnessScanTimes)
    lowest = std::min(lowest, heat_kernel(decomp, t).minCoeff());
  return lowest;
}

RealMatrix to_real(const IntMatrix& m) {
  RealMatrix r(static_cast<Eigen::Index>(m.rows()),
               static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          m(i, j).convert_to<double>();
  return r;
}

}  // namespace qhg
