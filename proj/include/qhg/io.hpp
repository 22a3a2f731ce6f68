#pragma once

// Text formats: hypergraph and vector input, matrix/report/trajectory output.
// Reals are printed with 17 significant digits so that output re-parses to
// the same double and is byte-identical across runs.

#include <string>
#include <string_view>
#include <vector>

#include "qhg/coupling.hpp"
#include "qhg/exact.hpp"
#include "qhg/hypergraph.hpp"
#include "qhg/incidence.hpp"
#include "qhg/quantum_laplacian.hpp"
#include "qhg/semigroup.hpp"

namespace qhg::io {

enum class Format { Json, Csv };

// {"nodes": [...], "hyperedges": [{"init": [...], "term": [...]}, ...]}
// Throws ParseError (with line/column for malformed JSON) or the validation
// errors of build_hypergraph.
OrientedHypergraph parse_hypergraph(std::string_view text);

// {"values": [...]}
std::vector<double> parse_values(std::string_view text);

std::string format_real(double x);
std::string format_rational(const Rational& q);  // "p/q", or "p" when q = 1

std::string write_matrix(const IntMatrix& m, Format fmt);
std::string write_matrix(const RationalMatrix& m, Format fmt);
std::string write_matrix(const RealMatrix& m, Format fmt);

// Inverse of write_matrix(..., Format::Json).
IntMatrix parse_int_matrix(std::string_view text);
RationalMatrix parse_rational_matrix(std::string_view text);
RealMatrix parse_real_matrix(std::string_view text);

std::string write_info(const OrientedHypergraph& h, Format fmt);
std::string write_section(const SimpleGraph& g, Format fmt);
std::string write_section(const OrientedSection& s, Format fmt);
std::string write_sign_report(const SignReport& r, Format fmt);
std::string write_eigenvalues(const RealVector& values, Format fmt);
std::string write_positivity(const PositivityResult& r,
                             const std::vector<std::string>& labels, Format fmt);
std::string write_projector_report(const ProjectorReport& r,
                                   bool positive_definite, Format fmt);

// CSV: header "t,<labels...>", one row per time.
std::string write_trajectory(const Trajectory& traj,
                             const std::vector<std::string>& labels, Format fmt);

std::string write_form(const DiscreteForm& form, Format fmt);
// {"n": ..., "eigenvalues": [...], "kernel_dim": ..., "constraint_rows": ...}
std::string write_eigen_report(const EigenResult& r, Format fmt);
std::string write_quantum_heat(const QuantumHeatResult& r,
                               const std::vector<std::string>& labels, Format fmt);
std::string write_convergence(const ConvergenceReport& r, Format fmt);

}  // namespace qhg::io
