#include "qhg/qhg.h"

#include <limits>
#include <new>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qhg/coupling.hpp"
#include "qhg/error.hpp"
#include "qhg/hypergraph.hpp"
#include "qhg/incidence.hpp"
#include "qhg/io.hpp"
#include "qhg/quantum_laplacian.hpp"
#include "qhg/semigroup.hpp"

struct qhg_hypergraph {
  qhg::OrientedHypergraph graph;
};

struct qhg_form {
  qhg::DiscreteForm form;
  std::vector<std::string> labels;
};

struct qhg_text {
  std::string data;
};

struct qhg_vector {
  std::vector<double> values;
};

namespace {

thread_local std::string last_error;

struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

qhg_status to_status(qhg::ErrorCode code) {
  using qhg::ErrorCode;
  switch (code) {
    case ErrorCode::DuplicateNode: return QHG_ERR_DUPLICATE_NODE;
    case ErrorCode::UnknownNode: return QHG_ERR_UNKNOWN_NODE;
    case ErrorCode::EmptySide: return QHG_ERR_EMPTY_SIDE;
    case ErrorCode::OverlappingSides: return QHG_ERR_OVERLAPPING_SIDES;
    case ErrorCode::ParseError: return QHG_ERR_PARSE;
    case ErrorCode::InvalidArgument: return QHG_ERR_INVALID_ARGUMENT;
    case ErrorCode::NotSquare: return QHG_ERR_NOT_SQUARE;
    case ErrorCode::DimensionMismatch: return QHG_ERR_DIMENSION_MISMATCH;
    case ErrorCode::NegativeTime: return QHG_ERR_NEGATIVE_TIME;
    case ErrorCode::GridTooCoarse: return QHG_ERR_GRID_TOO_COARSE;
    case ErrorCode::TooManyRequested: return QHG_ERR_TOO_MANY_REQUESTED;
    case ErrorCode::ConstraintViolation: return QHG_ERR_CONSTRAINT_VIOLATION;
    case ErrorCode::NotSymmetric: return QHG_ERR_NOT_SYMMETRIC;
    case ErrorCode::NoConvergence: return QHG_ERR_NO_CONVERGENCE;
    case ErrorCode::WitnessNotFound: return QHG_ERR_WITNESS_NOT_FOUND;
    case ErrorCode::RankDeficientMass: return QHG_ERR_RANK_DEFICIENT_MASS;
  }
  return QHG_ERR_INTERNAL;
}

qhg_status fail(qhg_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename Body>
qhg_status guarded(Body&& body) noexcept {
  try {
    body();
    return QHG_OK;
  } catch (const qhg::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const CapacityError& e) {
    return fail(QHG_ERR_CAPACITY, e.what());
  } catch (const std::bad_alloc&) {
    return fail(QHG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(QHG_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(QHG_ERR_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw qhg::Error(qhg::ErrorCode::InvalidArgument, what);
}

void require_capacity(std::size_t needed, std::size_t capacity) {
  if (capacity < needed) {
    throw CapacityError("output buffer holds " + std::to_string(capacity) +
                        " values, " + std::to_string(needed) + " needed");
  }
}

qhg::io::Format to_format(qhg_format fmt) {
  return fmt == QHG_FORMAT_CSV ? qhg::io::Format::Csv : qhg::io::Format::Json;
}

void emit(std::string text, qhg_text** out) { *out = new qhg_text{std::move(text)}; }

void copy_int_matrix(const qhg::IntMatrix& m, long long* out, std::size_t capacity) {
  require_capacity(m.entries().size(), capacity);
  for (std::size_t i = 0; i < m.entries().size(); ++i) {
    const qhg::BigInt& v = m.entries()[i];
    if (v > std::numeric_limits<long long>::max() ||
        v < std::numeric_limits<long long>::min()) {
      throw qhg::Error(qhg::ErrorCode::InvalidArgument,
                       "matrix entry does not fit in long long");
    }
    out[i] = v.convert_to<long long>();
  }
}

qhg::RealVector as_vector(const double* data, std::size_t len) {
  qhg::RealVector v(static_cast<Eigen::Index>(len));
  for (std::size_t i = 0; i < len; ++i) v(static_cast<Eigen::Index>(i)) = data[i];
  return v;
}

}  // namespace

extern "C" {

const char* qhg_last_error(void) { return last_error.c_str(); }

const char* qhg_status_name(qhg_status status) {
  switch (status) {
    case QHG_OK: return "OK";
    case QHG_ERR_PARSE: return "ParseError";
    case QHG_ERR_DUPLICATE_NODE: return "DuplicateNode";
    case QHG_ERR_UNKNOWN_NODE: return "UnknownNode";
    case QHG_ERR_EMPTY_SIDE: return "EmptySide";
    case QHG_ERR_OVERLAPPING_SIDES: return "OverlappingSides";
    case QHG_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case QHG_ERR_NOT_SQUARE: return "NotSquare";
    case QHG_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
    case QHG_ERR_NEGATIVE_TIME: return "NegativeTime";
    case QHG_ERR_GRID_TOO_COARSE: return "GridTooCoarse";
    case QHG_ERR_TOO_MANY_REQUESTED: return "TooManyRequested";
    case QHG_ERR_CONSTRAINT_VIOLATION: return "ConstraintViolation";
    case QHG_ERR_CAPACITY: return "Capacity";
    case QHG_ERR_NOT_SYMMETRIC: return "NotSymmetric";
    case QHG_ERR_NO_CONVERGENCE: return "NoConvergence";
    case QHG_ERR_WITNESS_NOT_FOUND: return "WitnessNotFound";
    case QHG_ERR_RANK_DEFICIENT_MASS: return "RankDeficientMass";
    case QHG_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

int qhg_status_is_numerical(qhg_status status) {
  return status >= QHG_ERR_NOT_SYMMETRIC && status < QHG_ERR_INTERNAL;
}

const char* qhg_text_data(const qhg_text* text) {
  return text ? text->data.c_str() : "";
}
size_t qhg_text_size(const qhg_text* text) { return text ? text->data.size() : 0; }
void qhg_text_free(qhg_text* text) { delete text; }

qhg_status qhg_vector_from_json(const char* json, size_t len, qhg_vector** out) {
  return guarded([&] {
    require(json != nullptr && out != nullptr, "null argument");
    *out = new qhg_vector{qhg::io::parse_values(std::string_view(json, len))};
  });
}
const double* qhg_vector_data(const qhg_vector* v) {
  return v ? v->values.data() : nullptr;
}
size_t qhg_vector_size(const qhg_vector* v) { return v ? v->values.size() : 0; }
void qhg_vector_free(qhg_vector* v) { delete v; }

qhg_status qhg_hypergraph_from_json(const char* json, size_t len,
                                    qhg_hypergraph** out) {
  return guarded([&] {
    require(json != nullptr && out != nullptr, "null argument");
    *out = new qhg_hypergraph{qhg::io::parse_hypergraph(std::string_view(json, len))};
  });
}

qhg_status qhg_hypergraph_create(size_t node_count, const char* const* labels,
                                 size_t edge_count, const size_t* init_offsets,
                                 const size_t* init_nodes,
                                 const size_t* term_offsets,
                                 const size_t* term_nodes,
                                 qhg_hypergraph** out) {
  return guarded([&] {
    require(out != nullptr, "null output handle");
    require(node_count == 0 || labels != nullptr, "labels is null");
    require(edge_count == 0 || (init_offsets && term_offsets && init_nodes && term_nodes),
            "hyperedge arrays are null");
    std::vector<std::string> nodes;
    for (std::size_t i = 0; i < node_count; ++i) {
      require(labels[i] != nullptr, "node label is null");
      nodes.emplace_back(labels[i]);
    }
    std::vector<qhg::Hyperedge> edges;
    for (std::size_t e = 0; e < edge_count; ++e) {
      require(init_offsets[e] <= init_offsets[e + 1] &&
                  term_offsets[e] <= term_offsets[e + 1],
              "hyperedge offsets must be nondecreasing");
      edges.push_back({{init_nodes + init_offsets[e], init_nodes + init_offsets[e + 1]},
                       {term_nodes + term_offsets[e], term_nodes + term_offsets[e + 1]}});
    }
    *out = new qhg_hypergraph{qhg::build_hypergraph(std::move(nodes), std::move(edges))};
  });
}

void qhg_hypergraph_free(qhg_hypergraph* h) { delete h; }

size_t qhg_hypergraph_node_count(const qhg_hypergraph* h) {
  return h ? h->graph.node_count() : 0;
}
size_t qhg_hypergraph_hyperedge_count(const qhg_hypergraph* h) {
  return h ? h->graph.hyperedge_count() : 0;
}
const char* qhg_hypergraph_node_label(const qhg_hypergraph* h, size_t node) {
  if (!h || node >= h->graph.node_count()) return nullptr;
  return h->graph.nodes()[node].c_str();
}
int qhg_hypergraph_is_graph(const qhg_hypergraph* h) {
  return h && qhg::is_graph(h->graph) ? 1 : 0;
}
size_t qhg_hypergraph_big_m(const qhg_hypergraph* h) {
  if (!h) return 0;
  std::size_t total = 0;
  for (const auto& e : h->graph.hyperedges()) total += e.section_edge_count();
  return total;
}

qhg_status qhg_incidence_values(const qhg_hypergraph* h, long long* out,
                                size_t capacity) {
  return guarded([&] {
    require(h && out, "null argument");
    copy_int_matrix(qhg::incidence_matrix(h->graph), out, capacity);
  });
}

qhg_status qhg_laplacian_values(const qhg_hypergraph* h, long long* out,
                                size_t capacity) {
  return guarded([&] {
    require(h && out, "null argument");
    copy_int_matrix(qhg::laplacian(h->graph), out, capacity);
  });
}

qhg_status qhg_heat_kernel_values(const qhg_hypergraph* h, double t, double* out,
                                  size_t capacity) {
  return guarded([&] {
    require(h && out, "null argument");
    const qhg::RealMatrix k = qhg::heat_kernel(qhg::to_real(qhg::laplacian(h->graph)), t);
    const auto n = static_cast<std::size_t>(k.rows());
    require_capacity(n * n, capacity);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        out[i * n + j] = k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  });
}

qhg_status qhg_positivity(const qhg_hypergraph* h, int* preserving,
                          double* witness_time, size_t* witness_source,
                          size_t* witness_index, double* witness_value) {
  return guarded([&] {
    require(h && preserving, "null argument");
    const qhg::PositivityResult r =
        qhg::is_positivity_preserving(qhg::to_real(qhg::laplacian(h->graph)));
    *preserving = r.preserving ? 1 : 0;
    if (r.witness) {
      if (witness_time) *witness_time = r.witness->time;
      if (witness_source) *witness_source = r.witness->source;
      if (witness_index) *witness_index = r.witness->index;
      if (witness_value) *witness_value = r.witness->value;
    }
  });
}

qhg_status qhg_render_info(const qhg_hypergraph* h, qhg_format fmt, qhg_text** out) {
  return guarded([&] {
    require(h && out, "null argument");
    emit(qhg::io::write_info(h->graph, to_format(fmt)), out);
  });
}

qhg_status qhg_render_section(const qhg_hypergraph* h, int oriented,
                              qhg_format fmt, qhg_text** out) {
  return guarded([&] {
    require(h && out, "null argument");
    emit(oriented ? qhg::io::write_section(qhg::oriented_section(h->graph), to_format(fmt))
                  : qhg::io::write_section(qhg::unoriented_section(h->graph), to_format(fmt)),
         out);
  });
}

qhg_status qhg_render_incidence(const qhg_hypergraph* h, qhg_mode mode,
                                qhg_format fmt, qhg_text** out) {
  return guarded([&] {
    require(h && out, "null argument");
    const qhg::IntMatrix m = qhg::incidence_matrix(h->graph);
    emit(mode == QHG_MODE_FLOAT ? qhg::io::write_matrix(qhg::to_real(m), to_format(fmt))
                                : qhg::io::write_matrix(m, to_format(fmt)),
         out);
  });
}

qhg_status qhg_render_laplacian(const qhg_hypergraph* h, qhg_mode mode,
                                qhg_format fmt, qhg_text** out) {
  return guarded([&] {
    require(h && out, "null argument");
    const qhg::IntMatrix m = qhg::laplacian(h->graph);
    emit(mode == QHG_MODE_FLOAT ? qhg::io::write_matrix(qhg::to_real(m), to_format(fmt))
                                : qhg::io::write_matrix(m, to_format(fmt)),
         out);
  });
}

qhg_status qhg_render_sign_report(const qhg_hypergraph* h, qhg_format fmt,
                                  qhg_text** out) {
  return guarded([&] {
    require(h && out, "null argument");
    emit(qhg::io::write_sign_report(qhg::offdiag_sign_report(qhg::laplacian(h->graph)),
                                    to_format(fmt)),
         out);
  });
}

qhg_status qhg_render_spectrum(const qhg_hypergraph* h, qhg_format fmt,
                               qhg_text** out) {
  return guarded([&] {
    require(h && out, "null argument");
    const auto decomp = qhg::sym_eigen(qhg::to_real(qhg::laplacian(h->graph)));
    emit(qhg::io::write_eigenvalues(decomp.eigenvalues, to_format(fmt)), out);
  });
}

qhg_status qhg_render_positivity(const qhg_hypergraph* h, qhg_format fmt,
                                 qhg_text** out) {
  return guarded([&] {
    require(h && out, "null argument");
    const auto r = qhg::is_positivity_preserving(qhg::to_real(qhg::laplacian(h->graph)));
    emit(qhg::io::write_positivity(r, h->graph.nodes(), to_format(fmt)), out);
  });
}

qhg_status qhg_render_heat(const qhg_hypergraph* h, const double* f0,
                           size_t f0_len, const double* times, size_t time_count,
                           qhg_format fmt, qhg_text** out) {
  return guarded([&] {
    require(h && out && (f0 || f0_len == 0) && (times || time_count == 0),
            "null argument");
    const auto traj = qhg::heat_evolve(qhg::to_real(qhg::laplacian(h->graph)),
                                       as_vector(f0, f0_len),
                                       std::span<const double>(times, time_count));
    emit(qhg::io::write_trajectory(traj, h->graph.nodes(), to_format(fmt)), out);
  });
}

qhg_status qhg_render_coupling(const qhg_hypergraph* h, qhg_mode mode, int verify,
                               qhg_format fmt, qhg_text** out) {
  return guarded([&] {
    require(h && out, "null argument");
    const qhg::CouplingMatrix c = qhg::coupling_matrix(qhg::oriented_section(h->graph));
    if (verify) {
      emit(qhg::io::write_projector_report(qhg::verify_projector(c),
                                           qhg::is_positive_definite(c), to_format(fmt)),
           out);
    } else if (mode == QHG_MODE_FLOAT) {
      emit(qhg::io::write_matrix(c.dense_real(), to_format(fmt)), out);
    } else {
      emit(qhg::io::write_matrix(c.dense_exact(), to_format(fmt)), out);
    }
  });
}

qhg_status qhg_form_assemble(const qhg_hypergraph* h, size_t n, qhg_form** out) {
  return guarded([&] {
    require(h && out, "null argument");
    const qhg::OrientedSection section = qhg::oriented_section(h->graph);
    const qhg::CouplingMatrix c = qhg::coupling_matrix(section);
    auto* form = new qhg_form{qhg::assemble(section, c, n), {}};
    for (std::size_t d = 0; d < form->form.grid.dofs(); ++d)
      form->labels.push_back(form->form.grid.dof_label(d));
    *out = form;
  });
}

void qhg_form_free(qhg_form* form) { delete form; }

size_t qhg_form_dof_count(const qhg_form* form) {
  return form ? form->form.grid.dofs() : 0;
}

size_t qhg_form_constraint_rows(const qhg_form* form) {
  return form ? static_cast<std::size_t>(form->form.constraints.rows()) : 0;
}

qhg_status qhg_form_eigenvalues(const qhg_form* form, size_t k, double* out) {
  return guarded([&] {
    require(form && (out || k == 0), "null argument");
    const auto r = qhg::solve_eigenproblem(form->form, k);
    for (std::size_t i = 0; i < k; ++i) out[i] = r.eigenvalues(static_cast<Eigen::Index>(i));
  });
}

qhg_status qhg_render_form(const qhg_form* form, qhg_format fmt, qhg_text** out) {
  return guarded([&] {
    require(form && out, "null argument");
    emit(qhg::io::write_form(form->form, to_format(fmt)), out);
  });
}

qhg_status qhg_render_form_spectrum(const qhg_form* form, size_t k, qhg_format fmt,
                                    qhg_text** out) {
  return guarded([&] {
    require(form && out, "null argument");
    emit(qhg::io::write_eigen_report(qhg::solve_eigenproblem(form->form, k),
                                     to_format(fmt)),
         out);
  });
}

qhg_status qhg_render_form_heat(const qhg_form* form, const double* f0,
                                size_t f0_len, const double* times,
                                size_t time_count, qhg_mass mass, qhg_format fmt,
                                double* min_entry, qhg_text** out) {
  return guarded([&] {
    require(form && out && (f0 || f0_len == 0) && (times || time_count == 0),
            "null argument");
    const auto r = qhg::qlap_heat(
        form->form, as_vector(f0, f0_len), std::span<const double>(times, time_count),
        mass == QHG_MASS_CONSISTENT ? qhg::MassKind::Consistent : qhg::MassKind::Lumped);
    if (min_entry) *min_entry = r.min_entry;
    emit(qhg::io::write_quantum_heat(r, form->labels, to_format(fmt)), out);
  });
}

qhg_status qhg_render_convergence(const qhg_hypergraph* h, const size_t* n_list,
                                  size_t count, size_t k, qhg_format fmt,
                                  qhg_text** out) {
  return guarded([&] {
    require(h && out && (n_list || count == 0), "null argument");
    const qhg::OrientedSection section = qhg::oriented_section(h->graph);
    const auto report = qhg::convergence_study(
        section, qhg::coupling_matrix(section), std::span<const size_t>(n_list, count), k);
    emit(qhg::io::write_convergence(report, to_format(fmt)), out);
  });
}

}  // extern "C"
