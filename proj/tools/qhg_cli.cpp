// qhg: command-line front end over the C API in qhg/qhg.h.
//
// Exit codes: 0 success, 1 invalid input, 2 numerical failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qhg/qhg.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitNumerical = 2;

struct HypergraphDeleter {
  void operator()(qhg_hypergraph* h) const { qhg_hypergraph_free(h); }
};
struct FormDeleter {
  void operator()(qhg_form* f) const { qhg_form_free(f); }
};
struct TextDeleter {
  void operator()(qhg_text* t) const { qhg_text_free(t); }
};
struct VectorDeleter {
  void operator()(qhg_vector* v) const { qhg_vector_free(v); }
};
using HypergraphPtr = std::unique_ptr<qhg_hypergraph, HypergraphDeleter>;
using FormPtr = std::unique_ptr<qhg_form, FormDeleter>;
using TextPtr = std::unique_ptr<qhg_text, TextDeleter>;
using VectorPtr = std::unique_ptr<qhg_vector, VectorDeleter>;

// Carries an exit code out of nested helpers.
struct Failure {
  int exit_code;
};

struct Options {
  std::string input;
  std::string output;
  std::string format;
  std::string mode;
  std::string init;
  std::string mass = "lumped";
  std::vector<double> times;
  std::vector<std::size_t> n_list;
  std::size_t n = 0;
  std::size_t k = 0;
  bool verify = false;
  bool oriented = false;
  bool unoriented = false;
};

[[noreturn]] void fail_status(qhg_status status) {
  std::cerr << "error: " << qhg_status_name(status) << ": " << qhg_last_error() << "\n";
  throw Failure{qhg_status_is_numerical(status) ? kExitNumerical : kExitInvalid};
}

void check(qhg_status status) {
  if (status != QHG_OK) fail_status(status);
}

[[noreturn]] void fail_usage(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  throw Failure{kExitInvalid};
}

std::string read_file(const std::string& path, const char* field) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_usage(std::string(field) + ": cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

HypergraphPtr load_hypergraph(const Options& opt) {
  const std::string text = read_file(opt.input, "input");
  qhg_hypergraph* h = nullptr;
  check(qhg_hypergraph_from_json(text.data(), text.size(), &h));
  return HypergraphPtr(h);
}

VectorPtr load_vector(const Options& opt) {
  if (opt.init.empty()) fail_usage("init: --init is required");
  const std::string text = read_file(opt.init, "init");
  qhg_vector* v = nullptr;
  check(qhg_vector_from_json(text.data(), text.size(), &v));
  return VectorPtr(v);
}

qhg_format format_of(const Options& opt, qhg_format fallback) {
  if (opt.format.empty()) return fallback;
  return opt.format == "csv" ? QHG_FORMAT_CSV : QHG_FORMAT_JSON;
}

qhg_mode mode_of(const Options& opt, qhg_mode fallback) {
  if (opt.mode.empty()) return fallback;
  return opt.mode == "float" ? QHG_MODE_FLOAT : QHG_MODE_EXACT;
}

void write_output(const Options& opt, qhg_text* raw) {
  TextPtr text(raw);
  if (opt.output.empty() || opt.output == "-") {
    std::cout.write(qhg_text_data(text.get()),
                    static_cast<std::streamsize>(qhg_text_size(text.get())));
    std::cout.flush();
    return;
  }
  std::ofstream out(opt.output, std::ios::binary);
  if (!out) fail_usage("output: cannot write '" + opt.output + "'");
  out.write(qhg_text_data(text.get()),
            static_cast<std::streamsize>(qhg_text_size(text.get())));
}

FormPtr assemble(const qhg_hypergraph* h, std::size_t n) {
  qhg_form* f = nullptr;
  check(qhg_form_assemble(h, n, &f));
  return FormPtr(f);
}

int run_command(const std::string& name, const Options& opt) {
  HypergraphPtr h = load_hypergraph(opt);
  qhg_text* text = nullptr;
  const qhg_format json = format_of(opt, QHG_FORMAT_JSON);

  if (name == "info") {
    check(qhg_render_info(h.get(), json, &text));
  } else if (name == "section") {
    if (opt.oriented == opt.unoriented)
      fail_usage("section: pass exactly one of --oriented / --unoriented");
    check(qhg_render_section(h.get(), opt.oriented ? 1 : 0, json, &text));
  } else if (name == "incidence") {
    check(qhg_render_incidence(h.get(), mode_of(opt, QHG_MODE_EXACT), json, &text));
  } else if (name == "laplacian") {
    check(qhg_render_laplacian(h.get(), mode_of(opt, QHG_MODE_EXACT), json, &text));
  } else if (name == "sign-report") {
    check(qhg_render_sign_report(h.get(), json, &text));
  } else if (name == "spectrum") {
    check(qhg_render_spectrum(h.get(), json, &text));
  } else if (name == "positivity") {
    check(qhg_render_positivity(h.get(), json, &text));
  } else if (name == "heat") {
    VectorPtr f0 = load_vector(opt);
    check(qhg_render_heat(h.get(), qhg_vector_data(f0.get()), qhg_vector_size(f0.get()),
                          opt.times.data(), opt.times.size(),
                          format_of(opt, QHG_FORMAT_CSV), &text));
  } else if (name == "coupling") {
    check(qhg_render_coupling(h.get(), mode_of(opt, QHG_MODE_EXACT), opt.verify ? 1 : 0,
                              json, &text));
  } else if (name == "qlap-assemble") {
    FormPtr form = assemble(h.get(), opt.n);
    check(qhg_render_form(form.get(), json, &text));
  } else if (name == "qlap-spectrum") {
    FormPtr form = assemble(h.get(), opt.n);
    check(qhg_render_form_spectrum(form.get(), opt.k, json, &text));
  } else if (name == "qlap-heat") {
    FormPtr form = assemble(h.get(), opt.n);
    VectorPtr f0 = load_vector(opt);
    double min_entry = 0.0;
    check(qhg_render_form_heat(
        form.get(), qhg_vector_data(f0.get()), qhg_vector_size(f0.get()),
        opt.times.data(), opt.times.size(),
        opt.mass == "consistent" ? QHG_MASS_CONSISTENT : QHG_MASS_LUMPED,
        format_of(opt, QHG_FORMAT_CSV), &min_entry, &text));
  } else if (name == "qlap-converge") {
    check(qhg_render_convergence(h.get(), opt.n_list.data(), opt.n_list.size(), opt.k,
                                 json, &text));
  }
  write_output(opt, text);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Oriented hypergraph Laplacians, heat semigroups and the "
               "quantum hypergraph Laplacian"};
  app.require_subcommand(1);
  Options opt;

  auto common = [&](CLI::App* sub, bool with_mode) {
    sub->add_option("-i,--input", opt.input, "Hypergraph JSON file")->required();
    sub->add_option("-o,--output", opt.output, "Output file (default stdout)");
    sub->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    if (with_mode)
      sub->add_option("--mode", opt.mode, "Number rendering")
          ->check(CLI::IsMember({"exact", "float"}));
  };
  auto times = [&](CLI::App* sub) {
    sub->add_option("--times", opt.times, "Comma-separated ascending times")
        ->delimiter(',')
        ->required();
    sub->add_option("--init", opt.init, "Initial vector JSON {\"values\": [...]}")
        ->required();
  };

  common(app.add_subcommand("info", "Counts, is_graph, M_e list and bigM"), false);
  auto* section = app.add_subcommand("section", "Oriented or unoriented section");
  common(section, false);
  section->add_flag("--oriented", opt.oriented, "Oriented section (init -> term edges)");
  section->add_flag("--unoriented", opt.unoriented, "Unoriented (Berge) section");
  common(app.add_subcommand("incidence", "Incidence matrix"), true);
  common(app.add_subcommand("laplacian", "Laplacian L = I I^T"), true);
  common(app.add_subcommand("sign-report", "Off-diagonal sign census of L"), false);
  common(app.add_subcommand("spectrum", "Eigenvalues of L"), false);
  common(app.add_subcommand("positivity", "Positivity of exp(-tL), with witness"), false);
  auto* heat = app.add_subcommand("heat", "Trajectory of df/dt = -Lf");
  common(heat, false);
  times(heat);
  auto* coupling = app.add_subcommand("coupling", "Coupling matrix C");
  common(coupling, true);
  coupling->add_flag("--verify", opt.verify, "Run the exact projector checks");

  auto grid = [&](CLI::App* sub) {
    sub->add_option("-n", opt.n, "Subintervals per edge")->required();
  };
  auto* assemble = app.add_subcommand("qlap-assemble", "Stiffness, mass and constraints");
  common(assemble, false);
  grid(assemble);
  auto* qspec = app.add_subcommand("qlap-spectrum", "Lowest eigenvalues of the discretization");
  common(qspec, false);
  grid(qspec);
  qspec->add_option("-k", opt.k, "Number of eigenvalues")->required();
  auto* qheat = app.add_subcommand("qlap-heat", "Heat trajectory of the discretization");
  common(qheat, false);
  grid(qheat);
  times(qheat);
  qheat->add_option("--mass", opt.mass, "Mass matrix used for time evolution")
      ->check(CLI::IsMember({"lumped", "consistent"}));
  auto* converge = app.add_subcommand("qlap-converge", "Eigenvalue convergence table");
  common(converge, false);
  converge->add_option("-n", opt.n_list, "Comma-separated ascending resolutions")
      ->delimiter(',')
      ->required();
  converge->add_option("-k", opt.k, "Nonzero eigenvalues to track")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    return run_command(app.get_subcommands().front()->get_name(), opt);
  } catch (const Failure& f) {
    return f.exit_code;
  }
}
