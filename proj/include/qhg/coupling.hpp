#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qhg/exact.hpp"
#include "qhg/hypergraph.hpp"
#include "qhg/semigroup.hpp"

namespace qhg {

// Block-diagonal coupling matrix over the oriented section's edges. The e-th
// block is M_e x M_e with every entry 1/M_e, which makes it an orthogonal
// projector of rank one. Stored by block sizes only.
class CouplingMatrix {
 public:
  explicit CouplingMatrix(std::vector<std::size_t> block_sizes);

  const std::vector<std::size_t>& block_sizes() const noexcept { return sizes_; }
  std::size_t block_count() const noexcept { return sizes_.size(); }
  std::size_t dimension() const noexcept { return dimension_; }

  // Block index of a section edge, and the first edge of each block.
  std::size_t block_of(std::size_t edge) const { return block_of_[edge]; }
  std::size_t block_offset(std::size_t block) const { return offsets_[block]; }

  // Entry (f, g) of the dense form.
  double entry(std::size_t f, std::size_t g) const;

  RationalMatrix dense_exact() const;
  RealMatrix dense_real() const;

 private:
  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> block_of_;
  std::size_t dimension_ = 0;
};

CouplingMatrix coupling_matrix(const OrientedSection& section);

struct ProjectorReport {
  bool symmetric = false;
  bool idempotent = false;
  bool psd_on_samples = false;
  bool rows_sum_to_one = false;
  bool trace_matches = false;
  Rational trace;
  std::size_t expected_trace = 0;

  bool all_passed() const noexcept {
    return symmetric && idempotent && psd_on_samples && rows_sum_to_one &&
           trace_matches;
  }
};

// Exact rational checks: C = C^T, C^2 = C, x^T C x >= 0 on `samples` random
// rational vectors, C 1 = 1, trace C = number of hyperedges.
ProjectorReport verify_projector(const CouplingMatrix& c,
                                 std::size_t samples = 100,
                                 std::uint64_t seed = 0x5eed);

// Same checks on an arbitrary dense matrix; `expected_trace` is |E|.
ProjectorReport verify_projector(const RationalMatrix& dense,
                                 std::size_t expected_trace,
                                 std::size_t samples = 100,
                                 std::uint64_t seed = 0x5eed);

// True iff every block has size one, i.e. the hypergraph is a graph.
bool is_positive_definite(const CouplingMatrix& c) noexcept;

}  // namespace qhg
