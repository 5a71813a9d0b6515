// Command-line front end: batch experiment runs with CSV / Matrix Market
// input and CSV + gnuplot-ready output. One run per process; the MADMM_THREADS
// environment variable caps Eigen's internal parallelism (default 1 so that
// repeated runs with the same seed are byte-identical apart from timings).

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "CLI11.hpp"
#include "json.hpp"

#include "madmm/baselines.hpp"
#include "madmm/cmodes.hpp"
#include "madmm/funcorr.hpp"
#include "madmm/io.hpp"
#include "madmm/ree.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace madmm;

namespace {

// Command-line mistakes that CLI11 cannot catch on its own (cross-option
// constraints like k <= n). Mapped to exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int thread_count_from_env() {
  const char* raw = std::getenv("MADMM_THREADS");
  if (raw == nullptr) return 1;
  char* end = nullptr;
  long v = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || v < 1) return 1;
  return static_cast<int>(v);
}

void write_manifest(const fs::path& dir, const json& config) {
  const fs::path path = dir / "manifest.json";
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << config.dump(2) << "\n";
}

// trace CSV plus two-column plot data (objective against iteration and
// against wall time).
void write_trace_outputs(const fs::path& dir, const std::string& stem,
                         const ConvergenceTrace& trace) {
  write_trace_csv(dir / (stem + ".csv"), trace);
  std::vector<std::pair<double, double>> by_iter;
  std::vector<std::pair<double, double>> by_time;
  by_iter.reserve(trace.rows.size());
  by_time.reserve(trace.rows.size());
  for (const auto& row : trace.rows) {
    by_iter.emplace_back(static_cast<double>(row.iter), row.objective);
    by_time.emplace_back(row.seconds, row.objective);
  }
  write_xy_data(dir / (stem + "_objective_vs_iter.dat"), by_iter);
  write_xy_data(dir / (stem + "_objective_vs_time.dat"), by_time);
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// ---------------------------------------------------------------- cmodes ---

struct CmodesConfig {
  Eigen::Index line_graph_n = 0;
  std::string input;
  Eigen::Index k = 10;
  double mu = 1e-2;
  double rho = 2.0;
  int inner = 3;
  int outer = 400;
  double primal_tol = -1.0;
  double obj_rel_tol = 1e-8;
  std::uint64_t seed = 1;
  int restarts = 1;
  std::string output_dir = ".";
};

void run_cmodes(const CmodesConfig& cfg) {
  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);

  SparseMatrix lap = cfg.input.empty() ? line_graph_laplacian(cfg.line_graph_n)
                                       : read_matrix_market_sparse(cfg.input);
  validate_laplacian(lap);
  if (cfg.k > lap.rows()) throw UsageError("cmodes: k exceeds the Laplacian size");

  MadmmOptions opts = cmodes_default_options();
  opts.rho = cfg.rho;
  opts.inner_iters = cfg.inner;
  opts.max_outer = cfg.outer;
  opts.primal_tol = cfg.primal_tol;
  opts.obj_rel_tol = cfg.obj_rel_tol;

  json manifest = {
      {"subcommand", "cmodes"},
      {"k", cfg.k},
      {"mu", cfg.mu},
      {"rho", opts.rho},
      {"inner_iters", opts.inner_iters},
      {"max_outer", opts.max_outer},
      {"primal_tol", opts.primal_tol},
      {"obj_rel_tol", opts.obj_rel_tol},
      {"seed", cfg.seed},
      {"restarts", cfg.restarts},
      {"threads", Eigen::nbThreads()},
  };
  if (cfg.input.empty())
    manifest["line_graph"] = cfg.line_graph_n;
  else
    manifest["input"] = cfg.input;
  write_manifest(dir, manifest);

  if (cfg.restarts <= 1) {
    CmodesResult res = compressed_modes(lap, cfg.k, cfg.mu, opts, cfg.seed);
    write_dense_csv(dir / "modes.csv", res.modes);
    write_trace_outputs(dir, "trace", res.trace);
    const Matrix gram = res.modes.transpose() * res.modes;
    const double ortho = (gram - Matrix::Identity(cfg.k, cfg.k)).norm();
    std::cout << "objective " << format_double(res.trace.final_objective()) << "\n"
              << "orthonormality_violation " << format_double(ortho) << "\n"
              << "mean_support_fraction " << format_double(mean_of(res.support_fraction))
              << "\n"
              << "outer_iterations " << res.trace.rows.back().iter << "\n";
    return;
  }

  // Restarts run sequentially in seed order; the summary lists one row per
  // seed so the spread of final objectives is directly inspectable.
  const fs::path summary_path = dir / "restart_summary.csv";
  std::ofstream summary(summary_path);
  if (!summary) throw IoError("cannot write " + summary_path.string());
  summary << "seed,objective,mean_support_fraction\n";
  std::vector<double> objectives;
  for (int r = 0; r < cfg.restarts; ++r) {
    const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(r);
    CmodesResult res = compressed_modes(lap, cfg.k, cfg.mu, opts, seed);
    const std::string tag = "seed" + std::to_string(seed);
    write_dense_csv(dir / ("modes_" + tag + ".csv"), res.modes);
    write_trace_outputs(dir, "trace_" + tag, res.trace);
    objectives.push_back(res.trace.final_objective());
    summary << seed << "," << format_double(objectives.back()) << ","
            << format_double(mean_of(res.support_fraction)) << "\n";
  }
  const double lo = *std::min_element(objectives.begin(), objectives.end());
  const double hi = *std::max_element(objectives.begin(), objectives.end());
  const double spread = (hi - lo) / std::max(1e-12, std::abs(mean_of(objectives)));
  std::cout << "restarts " << cfg.restarts << "\n"
            << "objective_min " << format_double(lo) << "\n"
            << "objective_max " << format_double(hi) << "\n"
            << "relative_spread " << format_double(spread) << "\n";
}

// --------------------------------------------------------------- funcorr ---

struct FuncorrConfig {
  Eigen::Index synth_n = 0;
  std::string input;
  int shapes = 2;
  Eigen::Index k = 25;
  Eigen::Index q = 25;
  double outlier_frac = 0.16;
  double mu = -1.0;  // negative keeps the problem's own value
  double rho = 1.0;
  int inner = 4;
  int outer = 300;
  double primal_tol = -1.0;
  double obj_rel_tol = 1e-8;
  std::uint64_t seed = 1;
  std::string baseline;
  double epsilon = 1e-2;
  int baseline_iters = 300;
  std::string save_problem;
  std::string output_dir = ".";
  bool synthetic_given = false;
};

void run_funcorr(const FuncorrConfig& cfg) {
  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);

  CorrespondenceProblem prob;
  if (cfg.synthetic_given) {
    if (cfg.k > cfg.synth_n) throw UsageError("funcorr: k exceeds the synthetic size n");
    prob = synth_correspondence_problem(cfg.seed, cfg.shapes, cfg.synth_n, cfg.k, cfg.q,
                                        cfg.outlier_frac)
               .problem;
  } else {
    prob = read_correspondence_problem(cfg.input);
  }
  if (cfg.mu >= 0.0) prob.mu = cfg.mu;
  prob.validate();
  if (!cfg.save_problem.empty()) write_correspondence_problem(cfg.save_problem, prob);

  MadmmOptions opts = funcorr_default_options();
  opts.rho = cfg.rho;
  opts.inner_iters = cfg.inner;
  opts.max_outer = cfg.outer;
  opts.primal_tol = cfg.primal_tol;
  opts.obj_rel_tol = cfg.obj_rel_tol;

  json manifest = {
      {"subcommand", "funcorr"},
      {"mu", prob.mu},
      {"rho", opts.rho},
      {"inner_iters", opts.inner_iters},
      {"max_outer", opts.max_outer},
      {"primal_tol", opts.primal_tol},
      {"obj_rel_tol", opts.obj_rel_tol},
      {"seed", cfg.seed},
      {"threads", Eigen::nbThreads()},
  };
  if (cfg.synthetic_given) {
    manifest["synthetic"] = {{"n", cfg.synth_n},
                             {"shapes", cfg.shapes},
                             {"k", cfg.k},
                             {"q", cfg.q},
                             {"outlier_frac", cfg.outlier_frac}};
  } else {
    manifest["input"] = cfg.input;
  }
  if (!cfg.baseline.empty()) {
    manifest["baseline"] = cfg.baseline;
    manifest["epsilon"] = cfg.epsilon;
    manifest["baseline_iters"] = cfg.baseline_iters;
  }
  if (!cfg.save_problem.empty()) manifest["save_problem"] = cfg.save_problem;
  write_manifest(dir, manifest);

  FuncorrResult res = funcorr_solve(prob, opts);
  for (std::size_t i = 0; i < res.rotations.size(); ++i)
    write_dense_csv(dir / ("X_" + std::to_string(i + 1) + ".csv"), res.rotations[i]);
  write_trace_outputs(dir, "trace", res.trace);
  std::cout << "objective " << format_double(res.objective.total()) << "\n"
            << "data_term " << format_double(res.objective.data_term) << "\n"
            << "coupling_term " << format_double(res.objective.coupling_term) << "\n"
            << "outer_iterations " << res.trace.rows.back().iter << "\n";

  if (cfg.baseline == "smoothed") {
    SmoothedL21Options bopts;
    bopts.epsilon = cfg.epsilon;
    bopts.solver.max_iters = cfg.baseline_iters;
    FuncorrResult bres = smoothed_l21_solve(prob, bopts);
    for (std::size_t i = 0; i < bres.rotations.size(); ++i)
      write_dense_csv(dir / ("baseline_X_" + std::to_string(i + 1) + ".csv"),
                      bres.rotations[i]);
    write_trace_outputs(dir, "baseline_trace", bres.trace);
    std::cout << "baseline_objective " << format_double(bres.objective.total()) << "\n";
  }
}

// ------------------------------------------------------------------- ree ---

struct ReeConfig {
  Eigen::Index synth_n = 0;
  std::string input;
  bool square_input = false;
  Eigen::Index k = 2;
  double outlier_frac = 0.05;
  double factor = 2.0;
  double rho = 10.0;
  int inner = 2;
  int outer = 200;
  double primal_tol = -1.0;
  double obj_rel_tol = 1e-8;
  std::uint64_t seed = 1;
  std::string baseline;
  double c = 1e-3;
  int baseline_iters = 500;
  std::string output_dir = ".";
  bool synthetic_given = false;
};

void run_ree(const ReeConfig& cfg) {
  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);

  Matrix ground;  // synthetic runs keep the generating configuration
  Matrix d;
  if (cfg.synthetic_given) {
    ground = planar_config(cfg.synth_n, cfg.seed);
    d = outlier_contaminate(squared_distance_matrix(ground), cfg.outlier_frac, cfg.factor,
                            cfg.seed + 1);
    write_dense_csv(dir / "ground_truth.csv", ground);
  } else {
    d = read_distance_csv(cfg.input);
    if (cfg.square_input) d = d.cwiseProduct(d);
    validate_distance_matrix(d);
  }
  if (cfg.k > d.rows()) throw UsageError("ree: k exceeds the number of points");

  MadmmOptions opts = ree_default_options();
  opts.rho = cfg.rho;
  opts.inner_iters = cfg.inner;
  opts.max_outer = cfg.outer;
  opts.primal_tol = cfg.primal_tol;
  opts.obj_rel_tol = cfg.obj_rel_tol;

  json manifest = {
      {"subcommand", "ree"},
      {"k", cfg.k},
      {"rho", opts.rho},
      {"inner_iters", opts.inner_iters},
      {"max_outer", opts.max_outer},
      {"primal_tol", opts.primal_tol},
      {"obj_rel_tol", opts.obj_rel_tol},
      {"seed", cfg.seed},
      {"threads", Eigen::nbThreads()},
  };
  if (cfg.synthetic_given) {
    manifest["synthetic"] = {{"n", cfg.synth_n},
                             {"outlier_frac", cfg.outlier_frac},
                             {"factor", cfg.factor}};
  } else {
    manifest["input"] = cfg.input;
    manifest["square_input"] = cfg.square_input;
  }
  if (!cfg.baseline.empty()) {
    manifest["baseline"] = cfg.baseline;
    manifest["c"] = cfg.c;
    manifest["baseline_iters"] = cfg.baseline_iters;
  }
  write_manifest(dir, manifest);

  const Matrix mds = classical_mds(d, cfg.k);
  write_dense_csv(dir / "mds.csv", mds);
  const double l1_mds = (d - dist_from_gram(mds * mds.transpose())).cwiseAbs().sum();

  ReeResult res = ree_solve(d, cfg.k, opts);
  write_dense_csv(dir / "madmm.csv", res.embedding);
  write_trace_outputs(dir, "trace", res.trace);
  std::cout << "l1_error_mds " << format_double(l1_mds) << "\n"
            << "l1_error_madmm " << format_double(res.trace.final_objective()) << "\n"
            << "outer_iterations " << res.trace.rows.back().iter << "\n";
  if (ground.size() > 0 && ground.cols() == cfg.k) {
    std::cout << "procrustes_rms_mds " << format_double(procrustes_rms(mds, ground)) << "\n"
              << "procrustes_rms_madmm "
              << format_double(procrustes_rms(res.embedding, ground)) << "\n";
  }

  if (cfg.baseline == "subgradient") {
    SubgradientOptions sopts;
    sopts.c = cfg.c;
    sopts.max_iters = cfg.baseline_iters;
    SubgradientResult sres = ree_subgradient(d, cfg.k, sopts);
    write_dense_csv(dir / "subgradient.csv", sres.embedding);
    write_trace_outputs(dir, "subgradient_trace", sres.trace);
    std::cout << "l1_error_subgradient " << format_double(sres.trace.final_objective())
              << "\n"
              << "subgradient_diverged " << (sres.diverged ? 1 : 0) << "\n";
  }
}

// ----------------------------------------------------------------- bench ---

struct BenchConfig {
  std::string app = "cmodes";
  std::vector<Eigen::Index> sizes;
  Eigen::Index k = 10;
  double mu = 1e-2;
  int outer = 10;
  std::uint64_t seed = 1;
  std::string output_dir = ".";
};

void run_bench(const BenchConfig& cfg) {
  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);

  json manifest = {
      {"subcommand", "bench"}, {"app", cfg.app},   {"sizes", cfg.sizes},
      {"k", cfg.k},            {"mu", cfg.mu},     {"outer", cfg.outer},
      {"seed", cfg.seed},      {"threads", Eigen::nbThreads()},
  };
  write_manifest(dir, manifest);

  const fs::path csv_path = dir / "bench.csv";
  std::ofstream out(csv_path);
  if (!out) throw IoError("cannot write " + csv_path.string());
  out << "n,seconds_per_iter\n";

  for (const Eigen::Index n : cfg.sizes) {
    if (cfg.k > n) throw UsageError("bench: k exceeds a requested size");
    double seconds = 0.0;
    int iters = 0;
    if (cfg.app == "cmodes") {
      MadmmOptions opts = cmodes_default_options();
      opts.max_outer = cfg.outer;
      opts.primal_tol = 0.0;  // run the full budget so timings are comparable
      opts.obj_rel_tol = 0.0;
      CmodesResult res =
          compressed_modes(line_graph_laplacian(n), cfg.k, cfg.mu, opts, cfg.seed);
      seconds = res.trace.rows.back().seconds;
      iters = res.trace.rows.back().iter;
    } else {  // ree
      const Matrix pts = planar_config(n, cfg.seed);
      const Matrix d =
          outlier_contaminate(squared_distance_matrix(pts), 0.05, 2.0, cfg.seed + 1);
      MadmmOptions opts = ree_default_options();
      opts.max_outer = cfg.outer;
      opts.primal_tol = 0.0;
      opts.obj_rel_tol = 0.0;
      ReeResult res = ree_solve(d, std::min<Eigen::Index>(cfg.k, 2), opts);
      seconds = res.trace.rows.back().seconds;
      iters = res.trace.rows.back().iter;
    }
    const double per_iter = seconds / std::max(1, iters);
    out << n << "," << format_double(per_iter) << "\n";
    std::cout << "n " << n << " seconds_per_iter " << format_double(per_iter) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  Eigen::setNbThreads(thread_count_from_env());

  CLI::App app{"Non-smooth optimization on matrix manifolds by ADMM splitting"};
  app.require_subcommand(1);

  CmodesConfig c1;
  CLI::App* cm = app.add_subcommand("cmodes", "Compressed modes of a graph Laplacian");
  CLI::App* cm_src = cm->add_option_group("source", "Laplacian source (exactly one)");
  cm_src->add_option("--line-graph", c1.line_graph_n, "path graph with n vertices")
      ->check(CLI::PositiveNumber);
  cm_src->add_option("--input", c1.input, "Matrix Market coordinate file");
  cm_src->require_option(1);
  cm->add_option("--k", c1.k, "number of modes")->check(CLI::PositiveNumber);
  cm->add_option("--mu", c1.mu, "L1 weight")->check(CLI::NonNegativeNumber);
  cm->add_option("--rho", c1.rho, "penalty parameter")->check(CLI::PositiveNumber);
  cm->add_option("--inner", c1.inner, "inner descent iterations per outer pass")
      ->check(CLI::PositiveNumber);
  cm->add_option("--outer", c1.outer, "maximum outer iterations")->check(CLI::PositiveNumber);
  cm->add_option("--primal-tol", c1.primal_tol, "negative = scale by sqrt(#entries)");
  cm->add_option("--obj-tol", c1.obj_rel_tol, "relative objective-change tolerance")
      ->check(CLI::NonNegativeNumber);
  cm->add_option("--seed", c1.seed, "seed of the random orthonormal start");
  cm->add_option("--restarts", c1.restarts, "run this many consecutive seeds")
      ->check(CLI::PositiveNumber);
  cm->add_option("--output-dir", c1.output_dir, "where result files go");

  FuncorrConfig c2;
  CLI::App* fc = app.add_subcommand("funcorr", "Joint alignment of spectral bases");
  CLI::App* fc_src = fc->add_option_group("source", "problem source (exactly one)");
  CLI::Option* fc_synth =
      fc_src->add_option("--synthetic", c2.synth_n, "random problem with n vertices per shape")
          ->check(CLI::PositiveNumber);
  fc_src->add_option("--input", c2.input, "problem directory written by --save-problem");
  fc_src->require_option(1);
  fc->add_option("--shapes", c2.shapes, "number of shapes (synthetic)")
      ->check(CLI::Range(2, 1 << 20));
  fc->add_option("--k", c2.k, "basis size (synthetic)")->check(CLI::PositiveNumber);
  fc->add_option("--q", c2.q, "corresponding functions per pair (synthetic)")
      ->check(CLI::PositiveNumber);
  fc->add_option("--outlier-frac", c2.outlier_frac, "fraction of corrupted columns")
      ->check(CLI::Range(0.0, 0.999));
  fc->add_option("--mu", c2.mu, "coupling weight; negative keeps the problem's value");
  fc->add_option("--rho", c2.rho, "penalty parameter")->check(CLI::PositiveNumber);
  fc->add_option("--inner", c2.inner, "inner descent iterations per outer pass")
      ->check(CLI::PositiveNumber);
  fc->add_option("--outer", c2.outer, "maximum outer iterations")->check(CLI::PositiveNumber);
  fc->add_option("--primal-tol", c2.primal_tol, "negative = scale by sqrt(#entries)");
  fc->add_option("--obj-tol", c2.obj_rel_tol, "relative objective-change tolerance")
      ->check(CLI::NonNegativeNumber);
  fc->add_option("--seed", c2.seed, "synthetic-problem seed");
  fc->add_option("--baseline", c2.baseline, "comparison method")
      ->check(CLI::IsMember({"smoothed"}));
  fc->add_option("--epsilon", c2.epsilon, "smoothing parameter of the baseline")
      ->check(CLI::PositiveNumber);
  fc->add_option("--baseline-iters", c2.baseline_iters, "iteration budget of the baseline")
      ->check(CLI::PositiveNumber);
  fc->add_option("--save-problem", c2.save_problem, "also write the problem to this directory");
  fc->add_option("--output-dir", c2.output_dir, "where result files go");

  ReeConfig c3;
  CLI::App* re = app.add_subcommand("ree", "Robust Euclidean embedding");
  CLI::App* re_src = re->add_option_group("source", "distance source (exactly one)");
  CLI::Option* re_synth =
      re_src->add_option("--synthetic", c3.synth_n, "planar configuration with n points")
          ->check(CLI::PositiveNumber);
  re_src->add_option("--input", c3.input, "distance matrix CSV (first line n)");
  re_src->require_option(1);
  re->add_flag("--square-input", c3.square_input,
               "input file holds plain distances; square them on load");
  re->add_option("--k", c3.k, "embedding dimension")->check(CLI::PositiveNumber);
  re->add_option("--outlier-frac", c3.outlier_frac, "fraction of contaminated pairs")
      ->check(CLI::Range(0.0, 0.999));
  re->add_option("--factor", c3.factor, "distance multiplier of contaminated pairs")
      ->check(CLI::PositiveNumber);
  re->add_option("--rho", c3.rho, "penalty parameter")->check(CLI::PositiveNumber);
  re->add_option("--inner", c3.inner, "inner descent iterations per outer pass")
      ->check(CLI::PositiveNumber);
  re->add_option("--outer", c3.outer, "maximum outer iterations")->check(CLI::PositiveNumber);
  re->add_option("--primal-tol", c3.primal_tol, "negative = scale by sqrt(#entries)");
  re->add_option("--obj-tol", c3.obj_rel_tol, "relative objective-change tolerance")
      ->check(CLI::NonNegativeNumber);
  re->add_option("--seed", c3.seed, "synthetic-data seed");
  re->add_option("--baseline", c3.baseline, "comparison method")
      ->check(CLI::IsMember({"subgradient"}));
  re->add_option("--c", c3.c, "initial step size of the subgradient baseline")
      ->check(CLI::PositiveNumber);
  re->add_option("--baseline-iters", c3.baseline_iters, "iteration budget of the baseline")
      ->check(CLI::PositiveNumber);
  re->add_option("--output-dir", c3.output_dir, "where result files go");

  BenchConfig c4;
  CLI::App* be = app.add_subcommand("bench", "Per-outer-iteration timing across sizes");
  be->add_option("--app", c4.app, "which solver to time")
      ->check(CLI::IsMember({"cmodes", "ree"}));
  be->add_option("--sizes", c4.sizes, "comma-separated problem sizes")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  be->add_option("--k", c4.k, "modes / embedding dimension")->check(CLI::PositiveNumber);
  be->add_option("--mu", c4.mu, "L1 weight (cmodes)")->check(CLI::NonNegativeNumber);
  be->add_option("--outer", c4.outer, "outer iterations per size")
      ->check(CLI::PositiveNumber);
  be->add_option("--seed", c4.seed, "instance seed");
  be->add_option("--output-dir", c4.output_dir, "where result files go");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  c2.synthetic_given = fc_synth->count() > 0;
  c3.synthetic_given = re_synth->count() > 0;

  try {
    if (cm->parsed())
      run_cmodes(c1);
    else if (fc->parsed())
      run_funcorr(c2);
    else if (re->parsed())
      run_ree(c3);
    else
      run_bench(c4);
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    // validation failures on loaded data are treated as parse-level problems
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
