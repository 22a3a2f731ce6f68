// Matrix exponential by scaling and squaring a truncated Taylor series.
// Deliberately free of any eigendecomposition so it can check heat_kernel.

#include <cmath>

#include "qhg/semigroup.hpp"

namespace qhg {

RealMatrix matrix_exp_series_oracle(const RealMatrix& a, double tol) {
  const Eigen::Index n = a.rows();
  const double norm = n == 0 ? 0.0 : a.cwiseAbs().rowwise().sum().maxCoeff();

  // Scale so that ||A / 2^s||_inf <= 1/2.
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const RealMatrix scaled = a / std::ldexp(1.0, squarings);

  RealMatrix sum = RealMatrix::Identity(n, n);
  RealMatrix term = RealMatrix::Identity(n, n);
  for (int k = 1; k <= 60; ++k) {
    term = term * scaled / static_cast<double>(k);
    sum += term;
    if (term.cwiseAbs().maxCoeff() <= tol * sum.cwiseAbs().maxCoeff()) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

}  // namespace qhg
