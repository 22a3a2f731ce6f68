#include "qhg/io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "json.hpp"
#include "qhg/error.hpp"

namespace qhg::io {

namespace {

using nlohmann::json;

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError,
                std::string(what) + ": malformed JSON: " + e.what());
  }
}

[[noreturn]] void field_error(const std::string& field, const std::string& msg) {
  throw Error(ErrorCode::ParseError, field + ": " + msg);
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) field_error(where + key, "missing");
  return *it;
}

std::vector<std::string> string_list(const json& arr, const std::string& field) {
  if (!arr.is_array()) field_error(field, "expected an array of node labels");
  std::vector<std::string> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_string())
      field_error(field + "[" + std::to_string(i) + "]", "expected a string");
    out.push_back(arr[i].get<std::string>());
  }
  return out;
}

std::string quoted(const std::string& s) { return json(s).dump(); }

// Writes a JSON array from already-formatted items.
std::string json_array(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += items[i];
  }
  return out + "]";
}

std::string real_or_null(double x) {
  return std::isfinite(x) ? format_real(x) : "null";
}

std::vector<std::string> reals(const RealVector& v) {
  std::vector<std::string> out;
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(real_or_null(v(i)));
  return out;
}

std::vector<std::string> reals(const std::vector<double>& v) {
  std::vector<std::string> out;
  for (double x : v) out.push_back(real_or_null(x));
  return out;
}

template <typename Cell>
std::string write_grid(std::size_t rows, std::size_t cols, Format fmt,
                       Cell&& cell) {
  std::string out;
  if (fmt == Format::Csv) {
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        if (c) out += ',';
        out += cell(r, c, false);
      }
      out += '\n';
    }
    return out;
  }
  out = "{\n  \"rows\": " + std::to_string(rows) +
        ",\n  \"cols\": " + std::to_string(cols) + ",\n  \"entries\": [";
  for (std::size_t r = 0; r < rows; ++r) {
    out += r ? ",\n    [" : "\n    [";
    for (std::size_t c = 0; c < cols; ++c) {
      if (c) out += ", ";
      out += cell(r, c, true);
    }
    out += ']';
  }
  out += rows ? "\n  ]\n}\n" : "]\n}\n";
  return out;
}

struct GridShape {
  std::size_t rows;
  std::size_t cols;
  const json* entries;
};

GridShape read_grid(const json& doc) {
  if (!doc.is_object()) field_error("matrix", "expected an object");
  const json& rows = require(doc, "rows", "");
  const json& cols = require(doc, "cols", "");
  const json& entries = require(doc, "entries", "");
  if (!rows.is_number_unsigned() && !rows.is_number_integer())
    field_error("rows", "expected a nonnegative integer");
  if (!cols.is_number_unsigned() && !cols.is_number_integer())
    field_error("cols", "expected a nonnegative integer");
  const auto r = rows.get<std::size_t>();
  const auto c = cols.get<std::size_t>();
  if (!entries.is_array() || entries.size() != r)
    field_error("entries", "expected " + std::to_string(r) + " rows");
  for (std::size_t i = 0; i < r; ++i)
    if (!entries[i].is_array() || entries[i].size() != c)
      field_error("entries[" + std::to_string(i) + "]",
                  "expected " + std::to_string(c) + " values");
  return {r, c, &entries};
}

std::string cell_field(std::size_t r, std::size_t c) {
  return "entries[" + std::to_string(r) + "][" + std::to_string(c) + "]";
}

}  // namespace

OrientedHypergraph parse_hypergraph(std::string_view text) {
  const json doc = parse_json(text, "input");
  if (!doc.is_object()) field_error("input", "expected a JSON object");
  std::vector<std::string> nodes = string_list(require(doc, "nodes", ""), "nodes");
  const json& edges = require(doc, "hyperedges", "");
  if (!edges.is_array()) field_error("hyperedges", "expected an array");
  std::vector<RawHyperedge> raw;
  raw.reserve(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const std::string where = "hyperedges[" + std::to_string(e) + "]";
    if (!edges[e].is_object()) field_error(where, "expected an object");
    raw.push_back({string_list(require(edges[e], "init", where + "."), where + ".init"),
                   string_list(require(edges[e], "term", where + "."), where + ".term")});
  }
  return build_hypergraph(std::move(nodes), raw);
}

std::vector<double> parse_values(std::string_view text) {
  const json doc = parse_json(text, "init");
  if (!doc.is_object()) field_error("init", "expected a JSON object");
  const json& values = require(doc, "values", "init.");
  if (!values.is_array()) field_error("init.values", "expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values[i].is_number())
      field_error("init.values[" + std::to_string(i) + "]", "expected a number");
    out.push_back(values[i].get<double>());
  }
  return out;
}

std::string format_real(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string format_rational(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string write_matrix(const IntMatrix& m, Format fmt) {
  return write_grid(m.rows(), m.cols(), fmt,
                    [&](std::size_t r, std::size_t c, bool) { return m(r, c).str(); });
}

std::string write_matrix(const RationalMatrix& m, Format fmt) {
  return write_grid(m.rows(), m.cols(), fmt, [&](std::size_t r, std::size_t c, bool js) {
    const std::string s = format_rational(m(r, c));
    return js ? quoted(s) : s;
  });
}

std::string write_matrix(const RealMatrix& m, Format fmt) {
  return write_grid(static_cast<std::size_t>(m.rows()),
                    static_cast<std::size_t>(m.cols()), fmt,
                    [&](std::size_t r, std::size_t c, bool) {
                      return format_real(m(static_cast<Eigen::Index>(r),
                                           static_cast<Eigen::Index>(c)));
                    });
}

IntMatrix parse_int_matrix(std::string_view text) {
  const json doc = parse_json(text, "matrix");
  const GridShape g = read_grid(doc);
  IntMatrix m(g.rows, g.cols);
  for (std::size_t r = 0; r < g.rows; ++r)
    for (std::size_t c = 0; c < g.cols; ++c) {
      const json& v = (*g.entries)[r][c];
      if (v.is_number_integer()) {
        m(r, c) = v.get<std::int64_t>();
      } else if (v.is_number_unsigned()) {
        m(r, c) = v.get<std::uint64_t>();
      } else if (v.is_string()) {
        m(r, c) = BigInt(v.get<std::string>());
      } else {
        field_error(cell_field(r, c), "expected an integer");
      }
    }
  return m;
}

RationalMatrix parse_rational_matrix(std::string_view text) {
  const json doc = parse_json(text, "matrix");
  const GridShape g = read_grid(doc);
  RationalMatrix m(g.rows, g.cols);
  for (std::size_t r = 0; r < g.rows; ++r)
    for (std::size_t c = 0; c < g.cols; ++c) {
      const json& v = (*g.entries)[r][c];
      if (v.is_number_integer()) {
        m(r, c) = Rational(v.get<std::int64_t>());
        continue;
      }
      if (!v.is_string()) field_error(cell_field(r, c), "expected \"p/q\"");
      const std::string s = v.get<std::string>();
      try {
        const auto slash = s.find('/');
        m(r, c) = slash == std::string::npos
                      ? Rational(BigInt(s))
                      : Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
      } catch (const std::exception&) {
        field_error(cell_field(r, c), "cannot parse rational '" + s + "'");
      }
    }
  return m;
}

RealMatrix parse_real_matrix(std::string_view text) {
  const json doc = parse_json(text, "matrix");
  const GridShape g = read_grid(doc);
  RealMatrix m(static_cast<Eigen::Index>(g.rows), static_cast<Eigen::Index>(g.cols));
  for (std::size_t r = 0; r < g.rows; ++r)
    for (std::size_t c = 0; c < g.cols; ++c) {
      const json& v = (*g.entries)[r][c];
      if (!v.is_number()) field_error(cell_field(r, c), "expected a number");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v.get<double>();
    }
  return m;
}

std::string write_info(const OrientedHypergraph& h, Format fmt) {
  const OrientedSection s = oriented_section(h);
  std::vector<std::string> sizes;
  for (std::size_t m : s.block_sizes) sizes.push_back(std::to_string(m));
  const std::string graph = is_graph(h) ? "true" : "false";
  if (fmt == Format::Csv) {
    std::string m_list;
    for (std::size_t i = 0; i < sizes.size(); ++i) m_list += (i ? ";" : "") + sizes[i];
    return "key,value\nnodes," + std::to_string(h.node_count()) +
           "\nhyperedges," + std::to_string(h.hyperedge_count()) +
           "\nis_graph," + graph + "\nM_e," + m_list +
           "\nbigM," + std::to_string(s.big_m) + "\n";
  }
  return "{\n  \"nodes\": " + std::to_string(h.node_count()) +
         ",\n  \"hyperedges\": " + std::to_string(h.hyperedge_count()) +
         ",\n  \"is_graph\": " + graph + ",\n  \"M_e\": " + json_array(sizes) +
         ",\n  \"bigM\": " + std::to_string(s.big_m) + "\n}\n";
}

std::string write_section(const SimpleGraph& g, Format fmt) {
  if (fmt == Format::Csv) {
    std::string out = "u,v\n";
    for (auto [a, b] : g.edges) out += g.nodes[a] + "," + g.nodes[b] + "\n";
    return out;
  }
  std::vector<std::string> labels, edges;
  for (const auto& n : g.nodes) labels.push_back(quoted(n));
  for (auto [a, b] : g.edges)
    edges.push_back(json_array({quoted(g.nodes[a]), quoted(g.nodes[b])}));
  return "{\n  \"nodes\": " + json_array(labels) + ",\n  \"edges\": " +
         json_array(edges) + "\n}\n";
}

std::string write_section(const OrientedSection& s, Format fmt) {
  if (fmt == Format::Csv) {
    std::string out = "source,target,hyperedge\n";
    for (const auto& e : s.edges)
      out += s.nodes[e.source] + "," + s.nodes[e.target] + "," +
             std::to_string(e.hyperedge) + "\n";
    return out;
  }
  std::vector<std::string> labels, edges, sizes;
  for (const auto& n : s.nodes) labels.push_back(quoted(n));
  for (const auto& e : s.edges)
    edges.push_back("{\"source\": " + quoted(s.nodes[e.source]) +
                    ", \"target\": " + quoted(s.nodes[e.target]) +
                    ", \"hyperedge\": " + std::to_string(e.hyperedge) + "}");
  for (std::size_t m : s.block_sizes) sizes.push_back(std::to_string(m));
  return "{\n  \"nodes\": " + json_array(labels) + ",\n  \"edges\": " +
         json_array(edges) + ",\n  \"M_e\": " + json_array(sizes) +
         ",\n  \"bigM\": " + std::to_string(s.big_m) + "\n}\n";
}

std::string write_sign_report(const SignReport& r, Format fmt) {
  auto locations = [](const auto& locs) {
    std::vector<std::string> items;
    for (auto [i, j] : locs)
      items.push_back("[" + std::to_string(i) + ", " + std::to_string(j) + "]");
    return json_array(items);
  };
  if (fmt == Format::Csv) {
    std::string out = "sign,row,col\n";
    for (auto [i, j] : r.positive_locations)
      out += "+," + std::to_string(i) + "," + std::to_string(j) + "\n";
    for (auto [i, j] : r.negative_locations)
      out += "-," + std::to_string(i) + "," + std::to_string(j) + "\n";
    return out;
  }
  return "{\n  \"positive_count\": " + std::to_string(r.positive_count) +
         ",\n  \"negative_count\": " + std::to_string(r.negative_count) +
         ",\n  \"zero_count\": " + std::to_string(r.zero_count) +
         ",\n  \"positive_locations\": " + locations(r.positive_locations) +
         ",\n  \"negative_locations\": " + locations(r.negative_locations) +
         "\n}\n";
}

std::string write_eigenvalues(const RealVector& values, Format fmt) {
  if (fmt == Format::Csv) {
    std::string out = "index,eigenvalue\n";
    for (Eigen::Index i = 0; i < values.size(); ++i)
      out += std::to_string(i) + "," + format_real(values(i)) + "\n";
    return out;
  }
  return "{\n  \"eigenvalues\": " + json_array(reals(values)) + "\n}\n";
}

std::string write_positivity(const PositivityResult& r,
                             const std::vector<std::string>& labels, Format fmt) {
  if (fmt == Format::Csv) {
    std::string out = "preserving,time,source,index,value\n";
    out += r.preserving ? "true" : "false";
    if (r.witness)
      out += "," + format_real(r.witness->time) + "," + labels[r.witness->source] +
             "," + labels[r.witness->index] + "," + format_real(r.witness->value);
    else
      out += ",,,,";
    return out + "\n";
  }
  std::string out = "{\n  \"positivity_preserving\": ";
  out += r.preserving ? "true" : "false";
  if (r.witness) {
    out += ",\n  \"witness\": {\"time\": " + format_real(r.witness->time) +
           ", \"source\": " + quoted(labels[r.witness->source]) +
           ", \"index\": " + quoted(labels[r.witness->index]) +
           ", \"value\": " + format_real(r.witness->value) + "}";
  } else {
    out += ",\n  \"witness\": null";
  }
  return out + "\n}\n";
}

std::string write_projector_report(const ProjectorReport& r,
                                   bool positive_definite, Format fmt) {
  auto b = [](bool v) { return std::string(v ? "true" : "false"); };
  if (fmt == Format::Csv) {
    return "check,result\nsymmetric," + b(r.symmetric) + "\nidempotent," +
           b(r.idempotent) + "\npsd_on_samples," + b(r.psd_on_samples) +
           "\nrows_sum_to_one," + b(r.rows_sum_to_one) + "\ntrace_matches," +
           b(r.trace_matches) + "\ntrace," + format_rational(r.trace) +
           "\nhyperedges," + std::to_string(r.expected_trace) +
           "\npositive_definite," + b(positive_definite) + "\n";
  }
  return "{\n  \"symmetric\": " + b(r.symmetric) +
         ",\n  \"idempotent\": " + b(r.idempotent) +
         ",\n  \"psd_on_samples\": " + b(r.psd_on_samples) +
         ",\n  \"rows_sum_to_one\": " + b(r.rows_sum_to_one) +
         ",\n  \"trace_matches\": " + b(r.trace_matches) +
         ",\n  \"trace\": " + quoted(format_rational(r.trace)) +
         ",\n  \"hyperedges\": " + std::to_string(r.expected_trace) +
         ",\n  \"positive_definite\": " + b(positive_definite) +
         ",\n  \"all_passed\": " + b(r.all_passed()) + "\n}\n";
}

std::string write_trajectory(const Trajectory& traj,
                             const std::vector<std::string>& labels, Format fmt) {
  if (fmt == Format::Csv) {
    std::string out = "t";
    for (const auto& l : labels) out += "," + l;
    out += '\n';
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
      out += format_real(traj.times[i]);
      for (Eigen::Index j = 0; j < traj.states[i].size(); ++j)
        out += "," + format_real(traj.states[i](j));
      out += '\n';
    }
    return out;
  }
  std::vector<std::string> quoted_labels, states;
  for (const auto& l : labels) quoted_labels.push_back(quoted(l));
  for (const auto& s : traj.states) states.push_back(json_array(reals(s)));
  std::string out = "{\n  \"labels\": " + json_array(quoted_labels) +
                    ",\n  \"times\": " + json_array(reals(traj.times)) +
                    ",\n  \"states\": [";
  for (std::size_t i = 0; i < states.size(); ++i)
    out += (i ? ",\n    " : "\n    ") + states[i];
  out += states.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

std::string write_form(const DiscreteForm& form, Format fmt) {
  auto triplets = [](const SparseMatrix& m, const char* name, std::string& out) {
    for (int col = 0; col < m.outerSize(); ++col)
      for (SparseMatrix::InnerIterator it(m, col); it; ++it)
        out += std::string(name) + "," + std::to_string(it.row()) + "," +
               std::to_string(it.col()) + "," + format_real(it.value()) + "\n";
  };
  if (fmt == Format::Csv) {
    std::string out = "matrix,row,col,value\n";
    triplets(form.stiffness, "K", out);
    triplets(form.mass, "M", out);
    triplets(form.constraints, "B", out);
    return out;
  }
  auto sparse_json = [](const SparseMatrix& m) {
    std::vector<std::string> items;
    for (int col = 0; col < m.outerSize(); ++col)
      for (SparseMatrix::InnerIterator it(m, col); it; ++it)
        items.push_back("[" + std::to_string(it.row()) + ", " +
                        std::to_string(it.col()) + ", " +
                        format_real(it.value()) + "]");
    return "{\"rows\": " + std::to_string(m.rows()) + ", \"cols\": " +
           std::to_string(m.cols()) + ", \"triplets\": " + json_array(items) + "}";
  };
  return "{\n  \"n\": " + std::to_string(form.grid.n) +
         ",\n  \"edges\": " + std::to_string(form.grid.edges) +
         ",\n  \"dofs\": " + std::to_string(form.grid.dofs()) +
         ",\n  \"constraint_rows\": " + std::to_string(form.constraints.rows()) +
         ",\n  \"stiffness\": " + sparse_json(form.stiffness) +
         ",\n  \"mass\": " + sparse_json(form.mass) +
         ",\n  \"constraints\": " + sparse_json(form.constraints) + "\n}\n";
}

std::string write_eigen_report(const EigenResult& r, Format fmt) {
  if (fmt == Format::Csv) {
    std::string out = "index,eigenvalue\n";
    for (Eigen::Index i = 0; i < r.eigenvalues.size(); ++i)
      out += std::to_string(i) + "," + format_real(r.eigenvalues(i)) + "\n";
    return out;
  }
  return "{\n  \"n\": " + std::to_string(r.n) +
         ",\n  \"eigenvalues\": " + json_array(reals(r.eigenvalues)) +
         ",\n  \"kernel_dim\": " + std::to_string(r.kernel_dim) +
         ",\n  \"constraint_rows\": " + std::to_string(r.constraint_rows) +
         ",\n  \"constraint_rank\": " + std::to_string(r.constraint_rank) +
         ",\n  \"dofs\": " + std::to_string(r.dofs) +
         ",\n  \"reduced_dim\": " + std::to_string(r.reduced_dim) + "\n}\n";
}

std::string write_quantum_heat(const QuantumHeatResult& r,
                               const std::vector<std::string>& labels, Format fmt) {
  if (fmt == Format::Csv) return write_trajectory(r.trajectory, labels, fmt);
  std::string traj = write_trajectory(r.trajectory, labels, fmt);
  // Splice the report fields into the trajectory object.
  traj.erase(traj.size() - 3);  // "\n}\n"
  return traj + ",\n  \"min_entry\": " + real_or_null(r.min_entry) +
         ",\n  \"projected\": " + (r.projected ? "true" : "false") +
         ",\n  \"projection_distance\": " + format_real(r.projection_distance) +
         "\n}\n";
}

std::string write_convergence(const ConvergenceReport& r, Format fmt) {
  if (fmt == Format::Csv) {
    std::string out = "n,lambda0,kernel_dim";
    const std::size_t k = r.rows.empty() ? 0 : r.rows.front().nonzero.size();
    for (std::size_t j = 0; j < k; ++j) out += ",lambda_nz" + std::to_string(j);
    out += '\n';
    for (const auto& row : r.rows) {
      out += std::to_string(row.n) + "," + format_real(row.lambda0) + "," +
             std::to_string(row.kernel_dim);
      for (double x : row.nonzero) out += "," + format_real(x);
      out += '\n';
    }
    return out;
  }
  auto nested = [](const std::vector<std::vector<double>>& rows) {
    std::vector<std::string> items;
    for (const auto& row : rows) items.push_back(json_array(reals(row)));
    return json_array(items);
  };
  std::vector<std::string> rows;
  for (const auto& row : r.rows)
    rows.push_back("{\"n\": " + std::to_string(row.n) +
                   ", \"lambda0\": " + format_real(row.lambda0) +
                   ", \"kernel_dim\": " + std::to_string(row.kernel_dim) +
                   ", \"nonzero_eigenvalues\": " + json_array(reals(row.nonzero)) + "}");
  std::string out = "{\n  \"rows\": [";
  for (std::size_t i = 0; i < rows.size(); ++i)
    out += (i ? ",\n    " : "\n    ") + rows[i];
  out += "\n  ],\n  \"cauchy_differences\": " + nested(r.cauchy) +
         ",\n  \"estimated_order\": " + nested(r.estimated_order);
  if (!r.reference_error.empty())
    out += ",\n  \"reference_error\": " + nested(r.reference_error) +
           ",\n  \"reference_order\": " + nested(r.reference_order);
  return out + "\n}\n";
}

}  // namespace qhg::io
