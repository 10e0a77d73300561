#include "qks_cli/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "qks/curie.hpp"
#include "qks/hamiltonian.hpp"
#include "qks/qcg.hpp"
#include "qks/spectrum.hpp"
#include "qks/table.hpp"
#include "qks/thermo.hpp"

namespace qks::cli {

namespace {

struct RunConfig {
  std::optional<int> N;
  std::string j = "1/2";
  std::string spins;
  std::optional<double> eta;
  std::optional<double> q;
  double I = 1.0;
  double h = 0.0;
  double gamma = 1.0;
  double k_B = 1.0;
  std::string scaling;
  std::string format = "csv";
  std::string out;
  std::optional<std::size_t> size_cap;
  bool confirm_size_cap = false;
  std::optional<unsigned> threads;

  // spectrum
  bool verify = false;
  std::string mode = "auto";
  std::string dump_matrix;
  std::string dump_format = "text";
  // dos
  int bins = 50;
  // states
  std::optional<std::string> state_J;
  std::optional<std::string> state_m;
  // thermo, weights, curie
  std::optional<double> T;
  double T_min = 0.05;
  double T_max = 2.0;
  int T_steps = 200;
  std::string method = "susceptibility_peak";
  int grid = 400;
};

std::optional<std::string> env(const char* name) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::string(v);
}

std::size_t parse_size(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    const auto v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw ValidationError(fmt::format("{} must be a non-negative integer, got '{}'", what, s));
  }
}

std::size_t size_cap(const RunConfig& rc) {
  std::optional<std::size_t> cap = rc.size_cap;
  if (!cap) {
    if (auto e = env("QKS_SIZE_CAP")) cap = parse_size(*e, "QKS_SIZE_CAP");
  }
  if (!cap) return kDefaultSizeCap;
  if (*cap > kDefaultSizeCap && !rc.confirm_size_cap && !env("QKS_SIZE_CAP")) {
    throw ValidationError(fmt::format(
        "size cap {} exceeds the default {}; pass --confirm-size-cap to allow it", *cap,
        kDefaultSizeCap));
  }
  return *cap;
}

unsigned threads(const RunConfig& rc) {
  if (rc.threads) return *rc.threads;
  if (auto e = env("QKS_THREADS")) return static_cast<unsigned>(parse_size(*e, "QKS_THREADS"));
  return 0;
}

std::vector<HalfInt> parse_spin_list(const std::string& text) {
  std::vector<HalfInt> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(HalfInt::parse(item));
  if (out.empty()) throw ValidationError("--spins must list at least one spin");
  return out;
}

ModelConfig model(const RunConfig& rc, Scaling default_scaling = Scaling::raw) {
  ModelConfig cfg;
  if (!rc.spins.empty()) {
    cfg.spins = parse_spin_list(rc.spins);
  } else {
    const HalfInt j = HalfInt::parse(rc.j);
    cfg = ModelConfig::uniform(rc.N.value_or(2), j);
  }
  if (rc.q) {
    cfg.eta = Deformation::from_q(*rc.q).eta();
  } else if (rc.eta) {
    cfg.eta = *rc.eta;
  }
  cfg.I = rc.I;
  cfg.h = rc.h;
  cfg.gamma = rc.gamma;
  cfg.k_B = rc.k_B;
  if (rc.scaling.empty()) {
    cfg.scaling = default_scaling;
  } else if (rc.scaling == "raw") {
    cfg.scaling = Scaling::raw;
  } else if (rc.scaling == "thermodynamic") {
    cfg.scaling = Scaling::thermodynamic;
  } else {
    throw ValidationError("--scaling must be raw or thermodynamic");
  }
  cfg.size_cap = size_cap(rc);
  cfg.validate();
  return cfg;
}

std::vector<double> temperatures(const RunConfig& rc) {
  if (rc.T) return {*rc.T};
  if (rc.T_steps < 1) throw ValidationError("--Tsteps must be >= 1");
  if (!(rc.T_min > 0.0) || rc.T_max < rc.T_min) {
    throw ValidationError("temperature range must satisfy 0 < Tmin <= Tmax");
  }
  std::vector<double> t;
  for (int i = 0; i < rc.T_steps; ++i) {
    t.push_back(rc.T_steps == 1 ? rc.T_min
                                : rc.T_min + (rc.T_max - rc.T_min) * i / (rc.T_steps - 1));
  }
  return t;
}

void emit(const RunConfig& rc, const Table& table, std::ostream& out) {
  if (rc.format != "csv" && rc.format != "json") {
    throw ValidationError("--format must be csv or json");
  }
  const std::string text = rc.format == "json" ? to_json(table) : to_csv(table);
  if (rc.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(rc.out, std::ios::binary);
  if (!f) throw ValidationError("cannot open output file " + rc.out);
  f << text;
}

void dump_matrix(const OperatorMatrix& H, const std::string& path, const std::string& format) {
  if (format == "binary") {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot open matrix dump file " + path);
    const std::int64_t dims[2] = {H.rows(), H.cols()};
    f.write(reinterpret_cast<const char*>(dims), sizeof dims);
    for (Eigen::Index r = 0; r < H.rows(); ++r) {
      for (Eigen::Index c = 0; c < H.cols(); ++c) {
        const double pair[2] = {H(r, c).real(), H(r, c).imag()};
        f.write(reinterpret_cast<const char*>(pair), sizeof pair);
      }
    }
    return;
  }
  if (format != "text") throw ValidationError("--dump-format must be text or binary");
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot open matrix dump file " + path);
  f << H.rows() << ' ' << H.cols() << '\n';
  for (Eigen::Index r = 0; r < H.rows(); ++r) {
    for (Eigen::Index c = 0; c < H.cols(); ++c) {
      f << (c ? " " : "") << format_real(H(r, c).real()) << ' ' << format_real(H(r, c).imag());
    }
    f << '\n';
  }
}

MultiplicityMode parse_mode(const std::string& s) {
  if (s == "auto") return MultiplicityMode::automatic;
  if (s == "exact") return MultiplicityMode::exact;
  if (s == "log") return MultiplicityMode::log;
  throw ValidationError("--mode must be auto, exact or log");
}

double oracle_deviation(const ModelConfig& cfg, const std::vector<SpectrumLine>& lines) {
  const OperatorMatrix H = build_qks_verified(cfg);
  return max_relative_deviation(diagonalize_oracle(H, cfg.size_cap),
                                expanded_eigenvalues(lines, cfg.size_cap));
}

int cmd_spectrum(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  const ModelConfig cfg = model(rc);
  const auto lines = analytic_levels(cfg, parse_mode(rc.mode));
  if (!rc.dump_matrix.empty()) dump_matrix(build_qks_verified(cfg), rc.dump_matrix, rc.dump_format);
  emit(rc, spectrum_table(lines), out);
  if (rc.verify) {
    const double dev = oracle_deviation(cfg, lines);
    err << "max_relative_deviation " << format_real(dev) << '\n';
    if (dev > 1e-9) return kFailedCheck;
  }
  return kOk;
}

int cmd_dos(const RunConfig& rc, std::ostream& out) {
  emit(rc, dos_table(density_of_states(analytic_levels(model(rc)), rc.bins)), out);
  return kOk;
}

int cmd_states(const RunConfig& rc, std::ostream& out) {
  const ModelConfig cfg = model(rc);
  const SiteLayout layout = cfg.layout();
  CouplingTransform t = couple_all(layout, cfg.effective_deformation(), cfg.size_cap);
  if (rc.state_J || rc.state_m) {
    const auto want_J = rc.state_J ? std::optional(HalfInt::parse(*rc.state_J)) : std::nullopt;
    const auto want_m = rc.state_m ? std::optional(HalfInt::parse(*rc.state_m)) : std::nullopt;
    CouplingTransform kept;
    std::vector<Eigen::Index> cols;
    for (std::size_t c = 0; c < t.labels.size(); ++c) {
      const auto& lab = t.labels[c];
      if (want_J && lab.J != *want_J) continue;
      if (want_m && lab.m != *want_m) continue;
      cols.push_back(static_cast<Eigen::Index>(c));
      kept.labels.push_back(lab);
    }
    kept.matrix = OperatorMatrix(t.matrix.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) {
      kept.matrix.col(static_cast<Eigen::Index>(k)) = t.matrix.col(cols[k]);
    }
    t = std::move(kept);
  }
  emit(rc, states_table(t, layout), out);
  return kOk;
}

int cmd_thermo(const RunConfig& rc, std::ostream& out) {
  const ThermoModel m(model(rc));
  emit(rc, thermo_table(observables_sweep(m, temperatures(rc), threads(rc))), out);
  return kOk;
}

int cmd_weights(const RunConfig& rc, std::ostream& out) {
  if (!rc.T) throw ValidationError("weights needs --T");
  emit(rc, weights_table(ThermoModel(model(rc)).partition_function(*rc.T)), out);
  return kOk;
}

int cmd_curie(const RunConfig& rc, std::ostream& out) {
  const CurieMethod method = parse_curie_method(rc.method);
  CurieEstimate e;
  e.method = method;
  e.eta = rc.q ? Deformation::from_q(*rc.q).eta() : rc.eta.value_or(0.0);
  switch (method) {
    case CurieMethod::limit_formula:
      e.T_C = curie_limit(e.eta);
      break;
    case CurieMethod::fit_reference:
      e.T_C = curie_fit_reference(e.eta);
      break;
    case CurieMethod::analytic_formula: {
      e.N = rc.N.value_or(2);
      e.T_C = curie_analytic(e.N, e.eta, rc.I, rc.k_B);
      break;
    }
    default: {
      const ModelConfig cfg = model(rc, Scaling::thermodynamic);
      const TRange range{rc.T_min, rc.T_max};
      const CurieOptions opt{rc.grid, threads(rc)};
      e = method == CurieMethod::susceptibility_peak ? curie_susceptibility(cfg, range, opt)
          : method == CurieMethod::equal_maxima      ? curie_equal_maxima(cfg, range, opt)
                                                     : curie_weight_minimax(cfg, range, opt);
    }
  }
  emit(rc, curie_table({e}), out);
  return kOk;
}

int cmd_verify(const RunConfig& rc, std::ostream& out) {
  const ModelConfig cfg = model(rc);
  Table t;
  t.schema = "qks.verify";
  t.columns = {{"check", ColumnType::text},
               {"value", ColumnType::real},
               {"tolerance", ColumnType::real},
               {"pass", ColumnType::text}};
  bool ok = true;
  auto row = [&](const std::string& name, double value, double tol) {
    const bool pass = value <= tol;
    ok = ok && pass;
    t.add_row({name, value, tol, std::string(pass ? "true" : "false")});
  };
  const OperatorMatrix coalgebra = build_qks_coalgebra(cfg);
  const OperatorMatrix expl = build_qks_explicit(cfg);
  const double scale = std::max(1.0, max_abs_entry(coalgebra));
  row("route_equivalence", max_abs_difference(coalgebra, expl) / scale, 1e-10);
  row("hermiticity", max_abs_entry(coalgebra - coalgebra.adjoint()), 1e-12);
  const LadderPair lad = collective_ladders(cfg);
  const OperatorMatrix z = coproduct_z(cfg.layout());
  row("commutator_Lz", max_abs_entry(coalgebra * z - z * coalgebra), 1e-10);
  if (cfg.h == 0.0) {
    row("commutator_Lplus", max_abs_entry(coalgebra * lad.plus - lad.plus * coalgebra), 1e-10);
    row("commutator_Lminus", max_abs_entry(coalgebra * lad.minus - lad.minus * coalgebra), 1e-10);
  }
  const auto lines = analytic_levels(cfg, MultiplicityMode::exact);
  row("oracle_vs_analytic", max_relative_deviation(diagonalize_oracle(coalgebra, cfg.size_cap),
                                                   expanded_eigenvalues(lines, cfg.size_cap)),
      1e-9);
  emit(rc, t, out);
  return ok ? kOk : kFailedCheck;
}

void add_model_options(CLI::App* app, RunConfig& rc) {
  app->set_help_flag("--help", "print this help and exit");
  auto* n = app->add_option("--N", rc.N, "number of sites")->check(CLI::PositiveNumber);
  auto* sp = app->add_option("--spins", rc.spins, "comma-separated per-site spins, e.g. 1/2,1");
  n->excludes(sp);
  app->add_option("--j", rc.j, "spin per site (1/2, 1, 3/2, ...)")->capture_default_str()->excludes(sp);
  auto* eta = app->add_option("--eta", rc.eta, "deformation eta = ln q");
  auto* q = app->add_option("--q", rc.q, "deformation q > 0");
  eta->excludes(q);
  app->add_option("--I", rc.I, "coupling (> 0 ferromagnetic)")->capture_default_str();
  app->add_option("--h", rc.h, "external field")->capture_default_str();
  app->add_option("--gamma", rc.gamma, "gyromagnetic factor")->capture_default_str();
  app->add_option("--kB", rc.k_B, "Boltzmann constant")->capture_default_str();
  app->add_option("--scaling", rc.scaling, "raw | thermodynamic (I/N, eta/N)");
  app->add_option("--format", rc.format, "csv | json")->capture_default_str();
  app->add_option("--out", rc.out, "output file (default stdout)");
  app->add_option("--size-cap", rc.size_cap, "matrix dimension limit");
  app->add_flag("--confirm-size-cap", rc.confirm_size_cap, "allow a size cap above the default");
  app->add_option("--threads", rc.threads, "worker threads (0 = all cores)");
}

void add_temperature_options(CLI::App* app, RunConfig& rc) {
  auto* t = app->add_option("--T", rc.T, "single temperature");
  app->add_option("--Tmin", rc.T_min, "lowest temperature")->capture_default_str()->excludes(t);
  app->add_option("--Tmax", rc.T_max, "highest temperature")->capture_default_str()->excludes(t);
  app->add_option("--Tsteps", rc.T_steps, "grid points")->capture_default_str()->excludes(t);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  CLI::App app{"Spectrum, states and thermodynamics of the q-deformed Kittel-Shore model", "qks"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);

  auto* spectrum = app.add_subcommand("spectrum", "analytic energy levels");
  add_model_options(spectrum, rc);
  spectrum->add_flag("--verify", rc.verify, "compare with exact diagonalization");
  spectrum->add_option("--mode", rc.mode, "multiplicities: auto | exact | log")->capture_default_str();
  spectrum->add_option("--dump-matrix", rc.dump_matrix, "write the Hamiltonian matrix to a file");
  spectrum->add_option("--dump-format", rc.dump_format, "text | binary")->capture_default_str();

  auto* dos = app.add_subcommand("dos", "density of energy levels");
  add_model_options(dos, rc);
  dos->add_option("--bins", rc.bins, "number of bins")->capture_default_str();

  auto* states = app.add_subcommand("states", "coupled-basis eigenstates");
  add_model_options(states, rc);
  states->add_option("--block-J", rc.state_J, "only blocks with this J");
  states->add_option("--block-m", rc.state_m, "only vectors with this m");

  auto* thermo = app.add_subcommand("thermo", "F, C_V, chi, M on a temperature grid");
  add_model_options(thermo, rc);
  add_temperature_options(thermo, rc);

  auto* weights = app.add_subcommand("weights", "normalized level weights z_p/Z");
  add_model_options(weights, rc);
  weights->add_option("--T", rc.T, "temperature")->required();

  auto* curie = app.add_subcommand("curie", "Curie temperature estimate");
  add_model_options(curie, rc);
  curie->add_option("--method", rc.method,
                    "susceptibility_peak | equal_maxima | weight_minimax | analytic_formula | "
                    "limit_formula | fit_reference")
      ->capture_default_str();
  curie->add_option("--Tmin", rc.T_min, "search range start")->capture_default_str();
  curie->add_option("--Tmax", rc.T_max, "search range end")->capture_default_str();
  curie->add_option("--grid", rc.grid, "coarse grid points")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "cross-check matrices, symmetries and spectrum");
  add_model_options(verify, rc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (spectrum->parsed()) return cmd_spectrum(rc, out, err);
    if (dos->parsed()) return cmd_dos(rc, out);
    if (states->parsed()) return cmd_states(rc, out);
    if (thermo->parsed()) return cmd_thermo(rc, out);
    if (weights->parsed()) return cmd_weights(rc, out);
    if (curie->parsed()) return cmd_curie(rc, out);
    if (verify->parsed()) return cmd_verify(rc, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const RegimeError& e) {
    err << "regime: " << e.what() << '\n';
    return kRegime;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kValidation;
}

}  // namespace qks::cli
