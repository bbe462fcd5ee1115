// tomolab command line: simulate homodyne datasets, reconstruct
// quasidistributions / density matrices / moments, emit figure data,
// and validate reconstruction requests against the sampling bounds.
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tomolab/cli_io.hpp"
#include "tomolab/errors.hpp"
#include "tomolab/gaussian_sim.hpp"
#include "tomolab/kernels.hpp"
#include "tomolab/reconstruct.hpp"

namespace fs = std::filesystem;
using namespace tomolab;

namespace {

struct CommonFlags {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  double eta = -1.0;
  int threads = 0;
  bool binary = false;
  bool expanded = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON run configuration");
  cmd->add_option("--out", flags.out_dir, "output directory");
  cmd->add_option("--seed", flags.seed, "RNG seed");
  cmd->add_option("--eta", flags.eta, "detection efficiency");
  cmd->add_option("--threads", flags.threads,
                  "worker threads (0 = TOMOLAB_THREADS or hardware)");
  cmd->add_flag("--binary", flags.binary, "binary dataset encoding");
  cmd->add_flag("--expanded", flags.expanded, "explicit theta/psi CSV columns");
}

RunConfig load_config(const CLI::App* cmd, const CommonFlags& flags) {
  RunConfig cfg;
  if (!flags.config_path.empty()) cfg = parse_run_config(flags.config_path);
  if (cmd->count("--out")) cfg.out_dir = flags.out_dir;
  if (cmd->count("--seed")) cfg.seed = flags.seed;
  if (cmd->count("--eta")) cfg.eta = flags.eta;
  if (cmd->count("--threads")) cfg.threads = flags.threads;
  if (cmd->count("--binary")) cfg.binary = flags.binary;
  if (cmd->count("--expanded")) cfg.expanded = flags.expanded;
  return cfg;
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.out_dir);
  return (fs::path(cfg.out_dir) / name).string();
}

void write_csv_header_row(std::ofstream& out, const std::string& header) {
  out.precision(17);
  out << header << '\n';
}

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out.precision(17);
  return out;
}

int run_simulate(const CLI::App* cmd, const CommonFlags& flags,
                 const std::string& state, double r, int modes,
                 const std::string& grid_kind, int theta_count, int psi_count,
                 int per_point) {
  RunConfig c = load_config(cmd, flags);
  if (cmd->count("--state")) c.state_type = state;
  if (cmd->count("--r")) c.r = r;
  if (cmd->count("--modes")) c.modes = modes;
  if (cmd->count("--grid")) c.grid_kind = grid_kind;
  if (cmd->count("--theta-count")) c.theta_count = theta_count;
  if (cmd->count("--psi-count")) c.psi_count = psi_count;
  if (cmd->count("--per-point")) c.per_point = per_point;
  const GaussianState sim_state = build_state(c);
  const SamplingGrid grid = build_grid_from(c);
  const auto data = simulate_dataset(sim_state, grid, c.per_point, c.eta, c.seed);
  const std::string file =
      out_path(c, c.binary ? "dataset.bin" : "dataset.csv");
  write_dataset(data, file, c.binary, c.expanded);
  std::cout << "wrote " << data.records.size() << " records over "
            << grid.size() << " grid points to " << file << '\n';
  return 0;
}

std::vector<PhaseSpacePoint> diagonal_cut(int modes, double lo, double hi,
                                          int count) {
  std::vector<PhaseSpacePoint> pts(count);
  for (int i = 0; i < count; ++i) {
    const double a = lo + (hi - lo) * i / (count - 1);
    pts[i].alpha.assign(modes, std::complex<double>(a, 0.0));
  }
  return pts;
}

int run_reconstruct(const CLI::App* cmd, const CommonFlags& flags,
                    const std::string& data_path, std::string task,
                    double s, int cutoff, int max_order, bool with_analytic) {
  RunConfig cfg = load_config(cmd, flags);
  if (task.empty()) task = cfg.task == "simulate" ? "q" : cfg.task;
  const QuadratureDataset data = read_dataset(data_path);

  if (task == "q") {
    write_validation_file(validate_quasidist_request(data, s),
                          out_path(cfg, "validation.json"));
    const auto points = diagonal_cut(data.grid.modes, -3.0, 3.0, 21);
    const auto table = estimate_quasidist(data, s, points, cfg.threads);
    write_quasidist_files(table, out_path(cfg, "q_cut"));
    if (with_analytic || !flags.config_path.empty()) {
      const GaussianState state = build_state(cfg);
      auto out = open_csv(out_path(cfg, "q_cut_compare.csv"));
      write_csv_header_row(out, "a,value,std_error,analytic,delta");
      for (std::size_t i = 0; i < points.size(); ++i) {
        const double exact = analytic_q(state, points[i].alpha);
        out << points[i].alpha[0].real() << ','
            << table.values[i].value.real() << ',' << table.values[i].std_error
            << ',' << exact << ',' << table.values[i].value.real() - exact
            << '\n';
      }
    }
    std::cout << "Q cut written; Q(0) = " << table.values[10].value.real()
              << " +- " << table.values[10].std_error << '\n';
  } else if (task == "rho") {
    write_validation_file(validate_rho_request(data, cutoff),
                          out_path(cfg, "validation.json"));
    const auto table = estimate_rho(data, cutoff, cfg.threads);
    write_rho_files(table, out_path(cfg, "rho"));
    std::cout << "rho block written (" << table.indices.size() << " entries)\n";
  } else if (task == "moments") {
    write_validation_file(validate_moment_request(data, s == -1.0 ? 1.0 : s,
                                                  max_order),
                          out_path(cfg, "validation.json"));
    const double s_m = s == -1.0 ? 1.0 : s;  // moments default to normal order
    const auto table = estimate_moments(data, s_m, max_order, cfg.threads);
    write_moments_files(table, out_path(cfg, "moments"));
    std::cout << "moment table written (" << table.indices.size()
              << " entries)\n";
    for (int j = 0; j < table.modes; ++j) {
      try {
        const auto q = mandel_q(table, j);
        std::cout << "mode " << j + 1 << ": Mandel Q = " << q.q << " +- "
                  << q.std_error << '\n';
      } catch (const std::exception&) {
        // vacuum-like mode; nothing to report
      }
    }
  } else {
    throw io_error("unknown reconstruction task '" + task + "'");
  }
  return 0;
}

int run_validate(const CLI::App* cmd, const CommonFlags& flags,
                 const std::string& data_path, const std::string& task,
                 double s, int cutoff, int max_order) {
  RunConfig cfg = load_config(cmd, flags);
  const QuadratureDataset data = read_dataset(data_path);
  ValidationReport rep;
  if (task == "q")
    rep = validate_quasidist_request(data, s);
  else if (task == "rho")
    rep = validate_rho_request(data, cutoff);
  else if (task == "moments")
    rep = validate_moment_request(data, s == -1.0 ? 1.0 : s, max_order);
  else
    throw io_error("unknown validation task '" + task + "'");
  write_validation_file(rep, out_path(cfg, "validation.json"));
  for (const auto& c : rep.checks)
    std::cout << (c.passed ? "pass" : "FAIL") << "  " << c.name << ": "
              << c.detail << '\n';
  if (rep.sufficient_points)
    std::cout << "sufficient sampling points R = " << rep.sufficient_points
              << ", free parameters P = " << rep.free_parameters << '\n';
  return rep.passed() ? 0 : 2;
}

int run_figures(const CLI::App* cmd, const CommonFlags& flags, int which,
                int per_point_override) {
  RunConfig cfg = load_config(cmd, flags);
  if (!cmd->count("--seed")) cfg.seed = 7;
  if (!cmd->count("--eta")) cfg.eta = 0.8;

  if (which == 3) {
    auto out = open_csv(out_path(cfg, "fig3.csv"));
    write_csv_header_row(out, "xi,S1,S2,S3,S4");
    for (int i = 0; i <= 400; ++i) {
      const double xi = -4.0 + 0.02 * i;
      out << xi;
      for (int n = 1; n <= 4; ++n)
        out << ',' << s_kernel(xi, KernelSpec{n, -1.0, 1.0});
      out << '\n';
    }
    std::cout << "wrote fig3.csv\n";
    return 0;
  }
  if (which == 4) {
    auto out = open_csv(out_path(cfg, "fig4.csv"));
    write_csv_header_row(out, "theta,F0,F1,F2");
    for (int i = 0; i <= 200; ++i) {
      const double th = 3.14159265358979323846 * i / 200;
      out << th;
      for (int m = 0; m <= 2; ++m) out << ',' << f_biorthogonal_closed(m, 2, th);
      out << '\n';
    }
    std::cout << "wrote fig4.csv\n";
    return 0;
  }

  const GaussianState state = three_mode_demo_state(1.0);
  if (which == 6) {
    const int per_point = per_point_override > 0 ? per_point_override : 50;
    const auto grid = build_grid(3, 10, 10, WeightKind::quasidistribution);
    const auto data = simulate_dataset(state, grid, per_point, cfg.eta, cfg.seed);
    const auto points = diagonal_cut(3, -3.0, 3.0, 21);
    const auto table = estimate_quasidist(data, -1.0, points, cfg.threads);
    auto out = open_csv(out_path(cfg, "fig6.csv"));
    write_csv_header_row(out, "a,q,std_error,analytic,delta");
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double exact = analytic_q(state, points[i].alpha);
      out << points[i].alpha[0].real() << ',' << table.values[i].value.real()
          << ',' << table.values[i].std_error << ',' << exact << ','
          << table.values[i].value.real() - exact << '\n';
    }
    std::cout << "wrote fig6.csv\n";
    return 0;
  }
  if (which == 7 || which == 8) {
    const int per_point = per_point_override > 0 ? per_point_override : 200;
    const auto grid = build_grid(3, 10, 10, WeightKind::moment);
    const auto data = simulate_dataset(state, grid, per_point, cfg.eta, cfg.seed);
    const int max_order = 6;
    const auto table = estimate_moments(data, 1.0, max_order, cfg.threads);
    auto out = open_csv(out_path(cfg, which == 7 ? "fig7.csv" : "fig8.csv"));
    write_csv_header_row(out, "label,m,n,value_re,std_error,exact_re");
    auto emit = [&](const std::string& label, const std::vector<int>& m,
                    const std::vector<int>& n) {
      const auto& e = table.at(m, n);
      const auto exact = analytic_moment(state, m, n, 1.0);
      out << label << ",\"";
      for (int v : m) out << v << ' ';
      out << "\",\"";
      for (int v : n) out << v << ' ';
      out << "\"," << e.value.real() << ',' << e.std_error << ','
          << exact.real() << '\n';
    };
    if (which == 7) {
      for (int k = 1; k * 2 <= max_order; ++k)
        emit(":n1^" + std::to_string(k) + ":", {k, 0, 0}, {k, 0, 0});
      for (int k = 1; k <= max_order; ++k)
        emit("a1^" + std::to_string(k), {0, 0, 0}, {k, 0, 0});
    } else {
      emit(":n1 n2:", {1, 1, 0}, {1, 1, 0});
      emit(":n1 n2 n3:", {1, 1, 1}, {1, 1, 1});
      emit("a1 a2", {0, 0, 0}, {1, 1, 0});
      emit("a1+ a2", {1, 0, 0}, {0, 1, 0});
      emit("a1 a2 a3", {0, 0, 0}, {1, 1, 1});
    }
    std::cout << "wrote fig" << which << ".csv\n";
    return 0;
  }
  throw io_error("unknown figure " + std::to_string(which) +
                 " (choose 3, 4, 6, 7 or 8)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "tomolab: multimode homodyne tomography simulation and reconstruction"};
  app.require_subcommand(1);

  CommonFlags sim_flags, rec_flags, val_flags, fig_flags;

  auto* sim = app.add_subcommand("simulate", "generate a quadrature dataset");
  add_common(sim, sim_flags);
  std::string sim_state, sim_grid;
  double sim_r = 1.0;
  int sim_modes = 0, sim_theta = 0, sim_psi = 0, sim_per_point = 0;
  sim->add_option("--state", sim_state, "demo | vacuum | coherent");
  sim->add_option("--r", sim_r, "demo squeezing parameter");
  sim->add_option("--modes", sim_modes, "mode count (vacuum state)");
  sim->add_option("--grid", sim_grid, "quasidistribution | moment");
  sim->add_option("--theta-count", sim_theta, "points per theta axis");
  sim->add_option("--psi-count", sim_psi, "points per psi axis");
  sim->add_option("--per-point", sim_per_point, "records per grid point");

  auto* rec = app.add_subcommand("reconstruct", "estimate from a dataset");
  add_common(rec, rec_flags);
  std::string rec_data, rec_task;
  double rec_s = -1.0;
  int rec_cutoff = 1, rec_order = 4;
  bool rec_analytic = false;
  rec->add_option("--data", rec_data, "dataset file")->required();
  rec->add_option("--task", rec_task, "q | rho | moments");
  rec->add_option("--s", rec_s, "ordering parameter");
  rec->add_option("--cutoff", rec_cutoff, "Fock cutoff per mode");
  rec->add_option("--max-order", rec_order, "maximum total moment order");
  rec->add_flag("--analytic", rec_analytic,
                "add exact-value comparison columns (demo state)");

  auto* val = app.add_subcommand("validate", "check sampling bounds");
  add_common(val, val_flags);
  std::string val_data, val_task = "moments";
  double val_s = -1.0;
  int val_cutoff = 1, val_order = 4;
  val->add_option("--data", val_data, "dataset file")->required();
  val->add_option("--task", val_task, "q | rho | moments");
  val->add_option("--s", val_s, "ordering parameter");
  val->add_option("--cutoff", val_cutoff, "Fock cutoff per mode");
  val->add_option("--max-order", val_order, "maximum total moment order");

  auto* fig = app.add_subcommand("figures", "emit plot data as CSV");
  add_common(fig, fig_flags);
  int fig_which = 3, fig_per_point = 0;
  fig->add_option("which", fig_which, "figure number: 3, 4, 6, 7 or 8")
      ->required();
  fig->add_option("--per-point", fig_per_point,
                  "override records per grid point for figures 6-8");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (sim->parsed())
      return run_simulate(sim, sim_flags, sim_state, sim_r, sim_modes, sim_grid,
                          sim_theta, sim_psi, sim_per_point);
    if (rec->parsed())
      return run_reconstruct(rec, rec_flags, rec_data, rec_task, rec_s,
                             rec_cutoff, rec_order, rec_analytic);
    if (val->parsed())
      return run_validate(val, val_flags, val_data, val_task, val_s, val_cutoff,
                          val_order);
    if (fig->parsed()) return run_figures(fig, fig_flags, fig_which, fig_per_point);
  } catch (const bound_error& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 2;
  } catch (const io_error& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
