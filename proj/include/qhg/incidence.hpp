#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qhg/exact.hpp"
#include "qhg/hypergraph.hpp"

namespace qhg {

// Off-diagonal sign census of a square matrix. Locations are (row, col)
// pairs in row-major order.
struct SignReport {
  std::size_t positive_count = 0;
  std::size_t negative_count = 0;
  std::size_t zero_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> positive_locations;
  std::vector<std::pair<std::size_t, std::size_t>> negative_locations;
};

// |V| x |E| matrix: +1 where v is in init(e), -1 where v is in term(e).
IntMatrix incidence_matrix(const OrientedHypergraph& h);

// L = I * I^T, exact.
IntMatrix laplacian(const OrientedHypergraph& h);

// Throws NotSquare.
SignReport offdiag_sign_report(const IntMatrix& m);

// L * 1 as a |V| x 1 column. Equal to I * d with d_e = |init(e)| - |term(e)|.
IntMatrix row_sum_vector(const OrientedHypergraph& h);

}  // namespace qhg
