#include "qhg/coupling.hpp"

#include <algorithm>
#include <random>

namespace qhg {

CouplingMatrix::CouplingMatrix(std::vector<std::size_t> block_sizes)
    : sizes_(std::move(block_sizes)) {
  offsets_.reserve(sizes_.size());
  for (std::size_t b = 0; b < sizes_.size(); ++b) {
    if (sizes_[b] == 0) {
      throw Error(ErrorCode::InvalidArgument,
                  "coupling block " + std::to_string(b) + " has size zero");
    }
    offsets_.push_back(dimension_);
    block_of_.insert(block_of_.end(), sizes_[b], b);
    dimension_ += sizes_[b];
  }
}

double CouplingMatrix::entry(std::size_t f, std::size_t g) const {
  const std::size_t b = block_of_[f];
  return b == block_of_[g] ? 1.0 / static_cast<double>(sizes_[b]) : 0.0;
}

RationalMatrix CouplingMatrix::dense_exact() const {
  RationalMatrix m(dimension_, dimension_);
  for (std::size_t b = 0; b < sizes_.size(); ++b) {
    const Rational value(1, sizes_[b]);
    for (std::size_t i = 0; i < sizes_[b]; ++i)
      for (std::size_t j = 0; j < sizes_[b]; ++j)
        m(offsets_[b] + i, offsets_[b] + j) = value;
  }
  return m;
}

RealMatrix CouplingMatrix::dense_real() const {
  const auto n = static_cast<Eigen::Index>(dimension_);
  RealMatrix m = RealMatrix::Zero(n, n);
  for (std::size_t b = 0; b < sizes_.size(); ++b) {
    const auto off = static_cast<Eigen::Index>(offsets_[b]);
    const auto size = static_cast<Eigen::Index>(sizes_[b]);
    m.block(off, off, size, size).setConstant(1.0 / static_cast<double>(sizes_[b]));
  }
  return m;
}

CouplingMatrix coupling_matrix(const OrientedSection& section) {
  return CouplingMatrix(section.block_sizes);
}

ProjectorReport verify_projector(const RationalMatrix& dense,
                                 std::size_t expected_trace,
                                 std::size_t samples, std::uint64_t seed) {
  ProjectorReport report;
  report.expected_trace = expected_trace;
  if (!dense.is_square()) return report;
  const std::size_t n = dense.rows();

  report.symmetric = dense == dense.transpose();
  report.idempotent = dense * dense == dense;

  for (std::size_t i = 0; i < n; ++i) report.trace += dense(i, i);
  report.trace_matches = report.trace == Rational(expected_trace);

  report.rows_sum_to_one = true;
  for (std::size_t i = 0; i < n && report.rows_sum_to_one; ++i) {
    Rational sum = 0;
    for (std::size_t j = 0; j < n; ++j) sum += dense(i, j);
    report.rows_sum_to_one = sum == 1;
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> numer(-20, 20);
  std::uniform_int_distribution<int> denom(1, 10);
  report.psd_on_samples = true;
  for (std::size_t s = 0; s < samples && report.psd_on_samples; ++s) {
    std::vector<Rational> x(n);
    for (auto& xi : x) xi = Rational(numer(rng), denom(rng));
    Rational quad = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      Rational row = 0;
      for (std::size_t j = 0; j < n; ++j) row += dense(i, j) * x[j];
      quad += x[i] * row;
    }
    report.psd_on_samples = quad >= 0;
  }
  return report;
}

ProjectorReport verify_projector(const CouplingMatrix& c, std::size_t samples,
                                 std::uint64_t seed) {
  return verify_projector(c.dense_exact(), c.block_count(), samples, seed);
}

bool is_positive_definite(const CouplingMatrix& c) noexcept {
  return std::all_of(c.block_sizes().begin(), c.block_sizes().end(),
                     [](std::size_t m) { return m == 1; });
}

}  // namespace qhg
