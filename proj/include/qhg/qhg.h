/* C interface to the oriented hypergraph / quantum hypergraph library.
 *
 * All objects are opaque handles released with the matching *_free call.
 * Every fallible function returns a qhg_status; on failure a description
 * naming the offending field is available from qhg_last_error() on the
 * calling thread until the next failing call. Output arrays are caller
 * allocated; functions check the supplied capacity.
 */
#ifndef QHG_QHG_H
#define QHG_QHG_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(QHG_BUILDING_LIBRARY)
#define QHG_API __attribute__((visibility("default")))
#else
#define QHG_API
#endif

typedef enum qhg_status {
  QHG_OK = 0,

  /* invalid input */
  QHG_ERR_PARSE = 1,
  QHG_ERR_DUPLICATE_NODE = 2,
  QHG_ERR_UNKNOWN_NODE = 3,
  QHG_ERR_EMPTY_SIDE = 4,
  QHG_ERR_OVERLAPPING_SIDES = 5,
  QHG_ERR_INVALID_ARGUMENT = 6,
  QHG_ERR_NOT_SQUARE = 7,
  QHG_ERR_DIMENSION_MISMATCH = 8,
  QHG_ERR_NEGATIVE_TIME = 9,
  QHG_ERR_GRID_TOO_COARSE = 10,
  QHG_ERR_TOO_MANY_REQUESTED = 11,
  QHG_ERR_CONSTRAINT_VIOLATION = 12,
  QHG_ERR_CAPACITY = 13,

  /* numerical failure */
  QHG_ERR_NOT_SYMMETRIC = 100,
  QHG_ERR_NO_CONVERGENCE = 101,
  QHG_ERR_WITNESS_NOT_FOUND = 102,
  QHG_ERR_RANK_DEFICIENT_MASS = 103,

  QHG_ERR_INTERNAL = 200
} qhg_status;

typedef enum qhg_format { QHG_FORMAT_JSON = 0, QHG_FORMAT_CSV = 1 } qhg_format;

/* Exact: integers and "p/q" rationals. Float: decimals, 17 digits. */
typedef enum qhg_mode { QHG_MODE_EXACT = 0, QHG_MODE_FLOAT = 1 } qhg_mode;

typedef enum qhg_mass { QHG_MASS_LUMPED = 0, QHG_MASS_CONSISTENT = 1 } qhg_mass;

typedef struct qhg_hypergraph qhg_hypergraph;
typedef struct qhg_form qhg_form;
typedef struct qhg_text qhg_text;
typedef struct qhg_vector qhg_vector;

QHG_API const char* qhg_last_error(void);
QHG_API const char* qhg_status_name(qhg_status status);
/* Nonzero for the numerical-failure group. */
QHG_API int qhg_status_is_numerical(qhg_status status);

/* ---- text and vector buffers ------------------------------------------ */

QHG_API const char* qhg_text_data(const qhg_text* text);
QHG_API size_t qhg_text_size(const qhg_text* text);
QHG_API void qhg_text_free(qhg_text* text);

/* Parses {"values": [...]}. */
QHG_API qhg_status qhg_vector_from_json(const char* json, size_t len,
                                        qhg_vector** out);
QHG_API const double* qhg_vector_data(const qhg_vector* v);
QHG_API size_t qhg_vector_size(const qhg_vector* v);
QHG_API void qhg_vector_free(qhg_vector* v);

/* ---- hypergraphs ------------------------------------------------------- */

QHG_API qhg_status qhg_hypergraph_from_json(const char* json, size_t len,
                                            qhg_hypergraph** out);

/* Index-based construction. Hyperedge e has init nodes
 * init_nodes[init_offsets[e] .. init_offsets[e+1]) and likewise for term;
 * both offset arrays have edge_count + 1 entries. */
QHG_API qhg_status qhg_hypergraph_create(size_t node_count,
                                         const char* const* labels,
                                         size_t edge_count,
                                         const size_t* init_offsets,
                                         const size_t* init_nodes,
                                         const size_t* term_offsets,
                                         const size_t* term_nodes,
                                         qhg_hypergraph** out);
QHG_API void qhg_hypergraph_free(qhg_hypergraph* h);

QHG_API size_t qhg_hypergraph_node_count(const qhg_hypergraph* h);
QHG_API size_t qhg_hypergraph_hyperedge_count(const qhg_hypergraph* h);
QHG_API const char* qhg_hypergraph_node_label(const qhg_hypergraph* h,
                                              size_t node);
QHG_API int qhg_hypergraph_is_graph(const qhg_hypergraph* h);
/* Number of oriented-section edges. */
QHG_API size_t qhg_hypergraph_big_m(const qhg_hypergraph* h);

/* Row-major |V| x |E| and |V| x |V| integer matrices. */
QHG_API qhg_status qhg_incidence_values(const qhg_hypergraph* h, long long* out,
                                        size_t capacity);
QHG_API qhg_status qhg_laplacian_values(const qhg_hypergraph* h, long long* out,
                                        size_t capacity);
/* Row-major exp(-tL). */
QHG_API qhg_status qhg_heat_kernel_values(const qhg_hypergraph* h, double t,
                                          double* out, size_t capacity);
/* *preserving is set to 1 or 0; the witness fields are written only when 0. */
QHG_API qhg_status qhg_positivity(const qhg_hypergraph* h, int* preserving,
                                  double* witness_time, size_t* witness_source,
                                  size_t* witness_index, double* witness_value);

QHG_API qhg_status qhg_render_info(const qhg_hypergraph* h, qhg_format fmt,
                                   qhg_text** out);
QHG_API qhg_status qhg_render_section(const qhg_hypergraph* h, int oriented,
                                      qhg_format fmt, qhg_text** out);
QHG_API qhg_status qhg_render_incidence(const qhg_hypergraph* h, qhg_mode mode,
                                        qhg_format fmt, qhg_text** out);
QHG_API qhg_status qhg_render_laplacian(const qhg_hypergraph* h, qhg_mode mode,
                                        qhg_format fmt, qhg_text** out);
QHG_API qhg_status qhg_render_sign_report(const qhg_hypergraph* h,
                                          qhg_format fmt, qhg_text** out);
QHG_API qhg_status qhg_render_spectrum(const qhg_hypergraph* h, qhg_format fmt,
                                       qhg_text** out);
QHG_API qhg_status qhg_render_positivity(const qhg_hypergraph* h,
                                         qhg_format fmt, qhg_text** out);
/* Trajectory of df/dt = -Lf; f0 is node-indexed. */
QHG_API qhg_status qhg_render_heat(const qhg_hypergraph* h, const double* f0,
                                   size_t f0_len, const double* times,
                                   size_t time_count, qhg_format fmt,
                                   qhg_text** out);
/* Dense coupling matrix, or the projector check report when verify != 0. */
QHG_API qhg_status qhg_render_coupling(const qhg_hypergraph* h, qhg_mode mode,
                                       int verify, qhg_format fmt,
                                       qhg_text** out);

/* ---- discretized quantum hypergraph Laplacian ------------------------- */

QHG_API qhg_status qhg_form_assemble(const qhg_hypergraph* h, size_t n,
                                     qhg_form** out);
QHG_API void qhg_form_free(qhg_form* form);
QHG_API size_t qhg_form_dof_count(const qhg_form* form);
QHG_API size_t qhg_form_constraint_rows(const qhg_form* form);

/* Lowest k eigenvalues of the constrained pencil, ascending. */
QHG_API qhg_status qhg_form_eigenvalues(const qhg_form* form, size_t k,
                                        double* out);
QHG_API qhg_status qhg_render_form(const qhg_form* form, qhg_format fmt,
                                   qhg_text** out);
QHG_API qhg_status qhg_render_form_spectrum(const qhg_form* form, size_t k,
                                            qhg_format fmt, qhg_text** out);
/* f0 is dof-indexed. min_entry, if non-null, receives the trajectory minimum. */
QHG_API qhg_status qhg_render_form_heat(const qhg_form* form, const double* f0,
                                        size_t f0_len, const double* times,
                                        size_t time_count, qhg_mass mass,
                                        qhg_format fmt, double* min_entry,
                                        qhg_text** out);
QHG_API qhg_status qhg_render_convergence(const qhg_hypergraph* h,
                                          const size_t* n_list, size_t count,
                                          size_t k, qhg_format fmt,
                                          qhg_text** out);

#ifdef __cplusplus
}
#endif

#endif /* QHG_QHG_H */
