#include "qhg/incidence.hpp"

#include <string>

#include "qhg/error.hpp"

namespace qhg {

IntMatrix incidence_matrix(const OrientedHypergraph& h) {
  IntMatrix inc(h.node_count(), h.hyperedge_count());
  for (std::size_t e = 0; e < h.hyperedge_count(); ++e) {
    const Hyperedge& he = h.hyperedges()[e];
    for (NodeIndex v : he.init) inc(v, e) = 1;
    for (NodeIndex v : he.term) inc(v, e) = -1;
  }
  return inc;
}

IntMatrix laplacian(const OrientedHypergraph& h) {
  const IntMatrix inc = incidence_matrix(h);
  return inc * inc.transpose();
}

SignReport offdiag_sign_report(const IntMatrix& m) {
  if (!m.is_square()) {
    throw Error(ErrorCode::NotSquare,
                "sign report needs a square matrix, got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  SignReport report;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (r == c) continue;
      const BigInt& x = m(r, c);
      if (x > 0) {
        ++report.positive_count;
        report.positive_locations.emplace_back(r, c);
      } else if (x < 0) {
        ++report.negative_count;
        report.negative_locations.emplace_back(r, c);
      } else {
        ++report.zero_count;
      }
    }
  }
  return report;
}

IntMatrix row_sum_vector(const OrientedHypergraph& h) {
  const IntMatrix lap = laplacian(h);
  IntMatrix sums(lap.rows(), 1);
  for (std::size_t r = 0; r < lap.rows(); ++r)
    for (std::size_t c = 0; c < lap.cols(); ++c) sums(r, 0) += lap(r, c);
  return sums;
}

}  // namespace qhg
