#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qhg/exact.hpp"

namespace qhg {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Cyclic Jacobi settings: stop once the off-diagonal Frobenius norm drops
// below kJacobiThreshold times the Frobenius norm of the input.
inline constexpr double kJacobiThreshold = 1e-12;
inline constexpr int kJacobiMaxSweeps = 100;

// Times probed when searching for a positivity counterexample.
inline constexpr std::array<double, 3> kWitnessScanTimes{0.01, 0.1, 1.0};

struct SymSpectralDecomp {
  RealVector eigenvalues;   // ascending
  RealMatrix eigenvectors;  // orthonormal columns, paired with eigenvalues
};

// Symmetric eigendecomposition by cyclic Jacobi rotations. `tol` bounds the
// accepted asymmetry |S_ij - S_ji| relative to max(1, ||S||_inf).
// Throws NotSquare, NotSymmetric, NoConvergence.
SymSpectralDecomp sym_eigen(const RealMatrix& s, double tol = 1e-12);

// Q exp(-t Lambda) Q^T for a precomputed decomposition of L.
RealMatrix heat_kernel(const SymSpectralDecomp& decomp, double t);

// exp(-t L) via spectral calculus. Throws NegativeTime, NotSymmetric.
RealMatrix heat_kernel(const RealMatrix& l, double t);

// exp(A) by scaling and squaring of a truncated Taylor series. Independent of
// the spectral route; used to cross-check heat_kernel.
RealMatrix matrix_exp_series_oracle(const RealMatrix& a, double tol = 1e-16);

struct Trajectory {
  std::vector<double> times;       // strictly increasing, >= 0
  std::vector<RealVector> states;  // one per time
};

// Solves df/dt = -L f, f(0) = f0 at the requested times.
// Throws DimensionMismatch, NegativeTime, InvalidArgument (times not
// strictly increasing).
Trajectory heat_evolve(const RealMatrix& l, const RealVector& f0,
                       std::span<const double> times);

// A nonnegative initial state (indicator of `source`) whose evolution at
// `time` has a negative entry `value` at `index`.
struct PositivityWitness {
  double time = 0.0;
  std::size_t source = 0;
  std::size_t index = 0;
  double value = 0.0;
};

struct PositivityResult {
  bool preserving = false;
  std::optional<PositivityWitness> witness;
};

// exp(-tL) is positivity preserving iff every off-diagonal entry of L is
// <= 0. When it is not, the most negative entry of exp(-tL) over
// kWitnessScanTimes is returned as a witness.
// Throws NotSymmetric, WitnessNotFound.
PositivityResult is_positivity_preserving(const RealMatrix& l);

// Minimum entry of exp(-tL) over kWitnessScanTimes.
double sampled_min_heat_entry(const RealMatrix& l);

RealMatrix to_real(const IntMatrix& m);

// Validates a time list: nonnegative and strictly increasing.
void check_times(std::span<const double> times);

}  // namespace qhg
