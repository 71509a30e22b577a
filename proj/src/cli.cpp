#include "cylwig/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cylwig/config.hpp"
#include "cylwig/error.hpp"
#include "cylwig/grid.hpp"
#include "cylwig/kernels.hpp"
#include "cylwig/numberphase.hpp"
#include "cylwig/quantizer.hpp"
#include "cylwig/star.hpp"
#include "cylwig/states.hpp"
#include "cylwig/table.hpp"
#include "cylwig/wigner.hpp"

#ifndef CYLWIG_VERSION
#define CYLWIG_VERSION "0.0.0"
#endif

namespace cylwig::cli {

using json = nlohmann::json;

namespace {

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
  }
}

template <class T>
T field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) throw InvalidArgument("'" + path + "' lacks field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw InvalidArgument("'" + path + "': field '" + key + "' has the wrong type");
  }
}

CMatrix read_complex(const json& j, int rows, int cols, const std::string& path) {
  const auto re = field<std::vector<std::vector<double>>>(j, "re", path);
  const auto im = field<std::vector<std::vector<double>>>(j, "im", path);
  if (static_cast<int>(re.size()) != rows || static_cast<int>(im.size()) != rows)
    throw InvalidArgument("'" + path + "': expected " + std::to_string(rows) + " rows in re and im");
  CMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(re[r].size()) != cols || static_cast<int>(im[r].size()) != cols)
      throw InvalidArgument("'" + path + "': row " + std::to_string(r) + " must have " + std::to_string(cols) + " entries");
    for (int c = 0; c < cols; ++c) m(r, c) = {re[r][c], im[r][c]};
  }
  return m;
}

json complex_to_json(const CMatrix& m) {
  json re = json::array(), im = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json a = json::array(), b = json::array();
    for (int c = 0; c < m.cols(); ++c) {
      a.push_back(m(r, c).real());
      b.push_back(m(r, c).imag());
    }
    re.push_back(std::move(a));
    im.push_back(std::move(b));
  }
  return json{{"re", re}, {"im", im}};
}

struct Common {
  std::string format = "csv";
  double hbar = 1.0;
};

void emit(const Table& t, const Common& c, std::ostream& out) {
  if (c.format == "json") write_json(t, out);
  else write_csv(t, out);
}

void add_common_meta(Table& t, const std::string& command, const Config& cfg) {
  t.meta.insert(t.meta.begin(), {{"tool", std::string("cylwig ") + CYLWIG_VERSION},
                                 {"command", command},
                                 {"hbar", format_double(cfg.hbar)},
                                 {"tol", format_double(cfg.tol)}});
}

std::string band_text(const MomentumBand& b) {
  return "[" + std::to_string(b.n_min) + "," + std::to_string(b.n_max) + "]";
}

Table operator_table(const CylinderOperator& op) {
  Table t;
  t.columns = {"j", "k", "re", "im"};
  for (int j = op.band().n_min; j <= op.band().n_max; ++j)
    for (int k = op.band().n_min; k <= op.band().n_max; ++k)
      t.add_row({double(j), double(k), op.at(j, k).real(), op.at(j, k).imag()});
  return t;
}

Table function_table(const CylinderFunction& f) {
  Table t;
  t.columns = {"theta", "n", "re", "im"};
  for (int j = 0; j < f.grid().size(); ++j)
    for (int n = f.band().n_min; n <= f.band().n_max; ++n)
      t.add_row({f.grid().point(j), double(n), f.at(j, n).real(), f.at(j, n).imag()});
  return t;
}

State load_state(const std::string& text, int nf, double tail) {
  StateSpec s = parse_state_spec(text);
  if (nf >= 0) s.n_f = nf;
  if (tail >= 0.0) s.tail_allowance = tail;
  validate(s);
  return build_state(s);
}

}  // namespace

CylinderOperator load_density_file(const std::string& path) {
  const json j = read_json(path);
  const int n_min = field<int>(j, "n_min", path);
  const int dim = field<int>(j, "dim", path);
  if (dim < 1) throw InvalidArgument("'" + path + "': dim must be positive");
  return {MomentumBand(n_min, n_min + dim - 1), read_complex(j, dim, dim, path)};
}

std::string density_to_json(const CylinderOperator& op) {
  json j{{"n_min", op.band().n_min}, {"dim", op.dim()}};
  j.update(complex_to_json(op.matrix()));
  return j.dump();
}

CylinderFunction load_symbol_file(const std::string& path, double hbar) {
  const json j = read_json(path);
  const int M = field<int>(j, "M", path);
  const int n_min = field<int>(j, "n_min", path);
  const int dim = field<int>(j, "dim", path);
  if (dim < 1) throw InvalidArgument("'" + path + "': dim must be positive");
  return {AngleGrid(M), MomentumBand(n_min, n_min + dim - 1), read_complex(j, M, dim, path), hbar};
}

std::string symbol_to_json(const CylinderFunction& f) {
  json j{{"M", f.grid().size()}, {"n_min", f.band().n_min}, {"dim", f.band().dim()}};
  j.update(complex_to_json(f.values()));
  return j.dump();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weyl quantization and Wigner functions on the cylinder and in number-phase space", "cylwig"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--hbar", common.hbar, "Action unit for cylinder commands");

  std::function<void(const Config&)> action;

  // wigner
  std::string state_text;
  int grid_m = 64, nf = -1;
  double tail = -1.0;
  std::string kernel_name = "symmetric";
  auto* wig = app.add_subcommand("wigner", "Number-phase Wigner function W(phi, n) of a state");
  wig->add_option("--state", state_text, "State, e.g. fock:N=3")->required();
  wig->add_option("--grid", grid_m, "Number of phase grid points");
  wig->add_option("--kernel", kernel_name, "Quantization kernel");
  wig->add_option("--nf", nf, "Fock truncation N_F");
  wig->add_option("--tail-allowance", tail, "Largest tail mass accepted for truncated states");
  wig->callback([&] {
    action = [&](const Config& cfg) {
      const State st = load_state(state_text, nf, tail);
      const AngleGrid grid(grid_m);
      const NumberPhaseWigner w = number_phase_wigner(st.density, grid, kernel_by_name(kernel_name), cfg);
      Table t;
      t.columns = {"phi", "n", "W"};
      for (int j = 0; j < grid.size(); ++j)
        for (int n = 0; n <= w.n_f; ++n) t.add_row({grid.point(j), double(n), w.at(j, n)});
      t.add_meta("state", to_string(st.spec));
      t.add_meta("kernel", kernel_name);
      t.add_meta("grid", std::to_string(grid_m));
      t.add_meta("nf", std::to_string(st.n_f));
      t.add_meta("tail_mass", format_double(st.tail_mass));
      add_common_meta(t, "wigner", cfg);
      emit(t, common, out);
    };
  });

  // marginals
  auto* mar = app.add_subcommand("marginals", "Phase and photon-number distributions of a state");
  mar->add_option("--state", state_text, "State")->required();
  mar->add_option("--grid", grid_m, "Number of phase grid points");
  mar->add_option("--nf", nf, "Fock truncation N_F");
  mar->add_option("--tail-allowance", tail, "Largest tail mass accepted");
  mar->callback([&] {
    action = [&](const Config& cfg) {
      const State st = load_state(state_text, nf, tail);
      const AngleGrid grid(grid_m);
      Table t;
      t.columns = {"kind", "x", "P"};
      const std::vector<double> ph = phase_distribution(st.density, grid);
      for (int j = 0; j < grid.size(); ++j) t.add_row({std::string("phase"), grid.point(j), ph[j]});
      const std::vector<double> nd = number_distribution(st.density);
      for (int n = 0; n <= st.n_f; ++n) t.add_row({std::string("number"), double(n), nd[n]});
      t.add_meta("state", to_string(st.spec));
      t.add_meta("grid", std::to_string(grid_m));
      t.add_meta("nf", std::to_string(st.n_f));
      t.add_meta("tail_mass", format_double(st.tail_mass));
      add_common_meta(t, "marginals", cfg);
      emit(t, common, out);
    };
  });

  // cyl-wigner
  std::string rho_path;
  int band_n = -1, cyl_grid = -1;
  auto* cyl = app.add_subcommand("cyl-wigner", "Cylinder Wigner function of a density matrix file");
  cyl->add_option("--rho", rho_path, "Density matrix JSON file")->required();
  cyl->add_option("--band", band_n, "Evaluate on the band [-N, N] (default: the file's band)");
  cyl->add_option("--kernel", kernel_name, "Quantization kernel");
  cyl->add_option("--grid", cyl_grid, "Number of angle grid points (default 4 dim + 1)");
  cyl->callback([&] {
    action = [&](const Config& cfg) {
      CylinderOperator op = load_density_file(rho_path);
      if (band_n >= 0) {
        const MomentumBand target = MomentumBand::symmetric(band_n);
        if (op.band().n_min < target.n_min || op.band().n_max > target.n_max)
          throw InvalidArgument("cyl-wigner: band [-N, N] must contain the file's band " + band_text(op.band()));
        CMatrix m = CMatrix::Zero(target.dim(), target.dim());
        m.block(target.index(op.band().n_min), target.index(op.band().n_min), op.dim(), op.dim()) = op.matrix();
        op = CylinderOperator(target, std::move(m));
      }
      const DensityOperator rho(op, cfg.tol);
      const AngleGrid grid(cyl_grid > 0 ? cyl_grid : grid_size_for(op.dim()));
      const WignerGrid w = wigner_function(kernel_by_name(kernel_name), rho, grid, cfg);
      Table t;
      t.columns = {"theta", "n", "W"};
      for (int j = 0; j < grid.size(); ++j)
        for (int n = w.band.n_min; n <= w.band.n_max; ++n) t.add_row({grid.point(j), double(n), w.at(j, n)});
      t.add_meta("kernel", kernel_name);
      t.add_meta("band", band_text(w.band));
      t.add_meta("grid", std::to_string(grid.size()));
      t.add_meta("max_imag", format_double(w.max_imag));
      add_common_meta(t, "cyl-wigner", cfg);
      emit(t, common, out);
    };
  });

  // reconstruct
  std::string wigner_path;
  bool paper_literal = false;
  auto* rec = app.add_subcommand("reconstruct", "Density matrix from a symmetric-kernel Wigner function");
  rec->add_option("--wigner", wigner_path, "Wigner function in the symbol file format")->required();
  rec->add_flag("--paper-literal", paper_literal, "Read coherences straight off the Fourier moments");
  rec->callback([&] {
    action = [&](const Config& cfg) {
      const CylinderFunction f = load_symbol_file(wigner_path, cfg.hbar);
      const Kernel ks = kernel_symmetric();
      const WignerGrid w{f.grid(), f.band(), f.values().real(), cfg.hbar, ks.name(), ks.flags(), f.max_imag()};
      const CylinderOperator r =
          reconstruct_matrix(w, paper_literal ? ReconstructionMode::paper_literal : ReconstructionMode::chain);
      const DensityCheck chk = check_density(r.matrix());
      // Round trip: W of the reconstruction against the input.
      const CylinderFunction back = trace_symbol(ks, r, f.grid(), cfg.hbar, cfg);
      const double rt = (back.values() / kTwoPi - f.values().real().cast<cplx>()).cwiseAbs().maxCoeff();
      Table t = operator_table(r);
      t.add_meta("mode", paper_literal ? "paper-literal" : "chain");
      t.add_meta("band", band_text(r.band()));
      t.add_meta("grid", std::to_string(f.grid().size()));
      t.add_meta("roundtrip_error", format_double(rt));
      t.add_meta("hermiticity", format_double(chk.hermiticity));
      t.add_meta("min_eigenvalue", format_double(chk.min_eigenvalue));
      t.add_meta("trace_error", format_double(chk.trace_error));
      add_common_meta(t, "reconstruct", cfg);
      emit(t, common, out);
    };
  });

  // quantize
  std::string symbol_path;
  auto* qua = app.add_subcommand("quantize", "Operator matrix of a symbol");
  qua->add_option("--symbol", symbol_path, "Symbol JSON file")->required();
  qua->add_option("--kernel", kernel_name, "Quantization kernel");
  qua->callback([&] {
    action = [&](const Config& cfg) {
      const CylinderFunction f = load_symbol_file(symbol_path, cfg.hbar);
      const CylinderOperator op = quantize(kernel_by_name(kernel_name), f, cfg);
      Table t = operator_table(op);
      t.add_meta("kernel", kernel_name);
      t.add_meta("band", band_text(op.band()));
      t.add_meta("grid", std::to_string(f.grid().size()));
      add_common_meta(t, "quantize", cfg);
      emit(t, common, out);
    };
  });

  // star
  std::string f_path, g_path, backend = "operator";
  std::string star_kernel = "weyl";
  auto* sta = app.add_subcommand("star", "Star product of two symbols");
  sta->add_option("--f", f_path, "Left symbol file")->required();
  sta->add_option("--g", g_path, "Right symbol file")->required();
  sta->add_option("--backend", backend, "trace or operator")->check(CLI::IsMember({"trace", "operator"}));
  sta->add_option("--kernel", star_kernel, "Quantization kernel");
  sta->callback([&] {
    action = [&](const Config& cfg) {
      const CylinderFunction f = load_symbol_file(f_path, cfg.hbar);
      const CylinderFunction g = load_symbol_file(g_path, cfg.hbar);
      const StarBackend b = backend == "trace" ? StarBackend::triple_trace : StarBackend::operator_route;
      const CylinderFunction h = star_product(b, kernel_by_name(star_kernel), f, g, cfg);
      Table t = function_table(h);
      t.add_meta("kernel", star_kernel);
      t.add_meta("backend", backend);
      t.add_meta("band", band_text(h.band()));
      t.add_meta("grid", std::to_string(h.grid().size()));
      add_common_meta(t, "star", cfg);
      emit(t, common, out);
    };
  });

  // kernel-report
  int l_range = 8, probes = 64, j_max = 8, n_depth = 8;
  auto* rep = app.add_subcommand("kernel-report", "Kernel conditions and Fock-space admissibility");
  rep->add_option("--kernel", kernel_name, "Quantization kernel")->required();
  rep->add_option("--l-range", l_range, "Largest |l| probed");
  rep->add_option("--probes", probes, "Sigma probes on the circle");
  rep->add_option("--j-max", j_max, "Largest Fock index in the admissibility check");
  rep->add_option("--n-depth", n_depth, "Negative momenta checked for admissibility");
  rep->callback([&] {
    action = [&](const Config& cfg) {
      const Kernel k = kernel_by_name(kernel_name);
      const KernelReport r = check_kernel_conditions(k, l_range, probes, cfg);
      const AdmissibilityReport a = check_admissibility(k, j_max, n_depth, cfg);
      Table t;
      t.columns = {"check", "holds", "worst", "sigma", "l"};
      auto row = [&](const char* name, const ConditionVerdict& v) {
        t.add_row({std::string(name), std::string(v.holds ? "true" : "false"), v.worst, v.sigma, double(v.l)});
      };
      row("cond_theta", r.cond_theta);
      row("cond_L", r.cond_L);
      row("cond_sym", r.cond_sym);
      row("nonvanishing", r.nonvanishing);
      t.add_row({std::string("admissible"), std::string(a.admissible ? "true" : "false"), a.worst, 0.0, double(a.j - a.k)});
      t.add_meta("kernel", kernel_name);
      t.add_meta("l_range", std::to_string(l_range));
      t.add_meta("sigma_probes", std::to_string(probes));
      t.add_meta("admissible", a.admissible ? "true" : "false");
      t.add_meta("admissibility_witness", "j=" + std::to_string(a.j) + ",k=" + std::to_string(a.k) +
                                               ",n=" + std::to_string(a.n));
      add_common_meta(t, "kernel-report", cfg);
      emit(t, common, out);
    };
  });

  // figures
  std::string which;
  int fig_grid = 256;
  auto* fig = app.add_subcommand("figures", "Figure data tables");
  fig->add_option("--which", which, "max, coh, squeezed or cat")
      ->required()
      ->check(CLI::IsMember({"max", "coh", "squeezed", "cat"}));
  fig->add_option("--grid", fig_grid, "Number of phase grid points");
  fig->callback([&] {
    action = [&](const Config& cfg) {
      Table t = figure_data(which, fig_grid);
      t.add_meta("grid", std::to_string(fig_grid));
      add_common_meta(t, "figures", cfg);
      emit(t, common, out);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "cylwig: " << e.what() << '\n';
    return 2;
  }

  try {
    Config cfg = Config::from_env();
    cfg.hbar = common.hbar;
    cfg.validate();
    action(cfg);
    return 0;
  } catch (const Error& e) {
    err << "cylwig: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "cylwig: internal error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace cylwig::cli
