// osa: subspace approximation with outliers.
// Subcommands: gen, solve, oracle, eval, bench. Every run prints (or
// writes with --out) a manifest JSON sufficient to reproduce it.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <osa/osa.hpp>

using nlohmann::json;

namespace {

bool verbose_enabled() {
  const char* v = std::getenv("OSA_LOG");
  return v != nullptr && *v != '\0';
}

void log_line(const std::string& msg) {
  if (verbose_enabled()) std::cerr << "[osa] " << msg << "\n";
}

struct LossSpec {
  osa::LossFunction loss = osa::LossFunction::pth_power(2.0);
  bool is_pth_power = true;
};

LossSpec parse_loss(const std::string& text, double default_p) {
  LossSpec spec;
  if (text.empty()) {
    spec.loss = osa::LossFunction::pth_power(default_p);
    return spec;
  }
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw osa::InvalidArgument("--loss expects lp:<p>, huber:<t> or tukey:<t>, got '" +
                               text + "'");
  }
  const std::string kind = text.substr(0, colon);
  double value = 0.0;
  try {
    value = std::stod(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw osa::InvalidArgument("--loss parameter in '" + text + "' is not a number");
  }
  if (kind == "lp") {
    spec.loss = osa::LossFunction::pth_power(value);
    spec.is_pth_power = true;
  } else if (kind == "huber") {
    spec.loss = osa::LossFunction::huber(value);
    spec.is_pth_power = false;
  } else if (kind == "tukey") {
    spec.loss = osa::LossFunction::tukey(value);
    spec.is_pth_power = false;
  } else {
    throw osa::InvalidArgument("unknown loss kind '" + kind + "'");
  }
  return spec;
}

json basis_to_json(const osa::Basis& basis) {
  json rows = json::array();
  for (osa::Index j = 0; j < basis.dim(); ++j) {
    json row = json::array();
    for (osa::Index i = 0; i < basis.ambient_dim(); ++i) {
      row.push_back(basis.vectors()(i, j));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const osa::Vector& v) {
  json arr = json::array();
  for (osa::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

json indices_to_json(const std::vector<osa::Index>& idx) {
  json arr = json::array();
  for (osa::Index i : idx) arr.push_back(i);
  return arr;
}

json solver_config_to_json(const osa::SolverConfig& cfg) {
  return json{{"k", cfg.k},
              {"p", cfg.p},
              {"alpha", cfg.alpha},
              {"epsilon", cfg.epsilon},
              {"delta", cfg.delta},
              {"rounds_T", cfg.rounds_T},
              {"inner_batches", cfg.inner_batches},
              {"batch_size", cfg.batch_size},
              {"batch_constant", cfg.batch_constant},
              {"trial_constant", cfg.trial_constant},
              {"trials", cfg.trials},
              {"extraction_iters", cfg.extraction_iters},
              {"seed", cfg.seed.value}};
}

json solve_report_to_json(const osa::SolveReport& rep) {
  json rounds = json::array();
  for (const auto& r : rep.trace.rounds) rounds.push_back(r.size());
  return json{{"span_dim", rep.span_dim},
              {"trimmed_cost_k", rep.trimmed_cost_k},
              {"trimmed_cost_span", rep.trimmed_cost_span},
              {"inlier_indices", indices_to_json(rep.inlier_indices)},
              {"coreset", indices_to_json(rep.trace.all)},
              {"coreset_size", rep.trace.all.size()},
              {"round_draw_counts", rounds},
              {"per_round_residual_mass", rep.per_round_residual_mass},
              {"degenerate_early_success", rep.trace.degenerate},
              {"subspace", basis_to_json(rep.subspace)},
              {"wall_time_ms", rep.wall_time_ms}};
}

void emit_manifest(const json& manifest, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << manifest.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw osa::DataFormatError("cannot open " + out_path + " for writing");
    out << manifest.dump(2) << "\n";
  }
}

json make_manifest(const std::string& command, std::uint64_t seed) {
  return json{{"command", command},
              {"version", osa::kVersion},
              {"seed", seed}};
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                   start)
      .count();
}

// ---------------------------------------------------------------- gen ----

struct GenArgs {
  osa::Index n = 200, d = 20, k = 3;
  double alpha = 0.25, sigma = 0.05, outlier_scale = 3.0, origin_scale = 0.0;
  std::string model = "uniform-far";
  bool affine = false;
  std::uint64_t seed = 1;
  std::string out = "instance";
};

int run_gen(const GenArgs& a) {
  const auto start = std::chrono::steady_clock::now();
  const osa::OutlierModel model = osa::outlier_model_from_string(a.model);
  auto [points, truth] =
      a.affine ? osa::gen_affine_planted(a.n, a.d, a.k, a.alpha, a.sigma, model,
                                         osa::Seed(a.seed), a.origin_scale,
                                         a.outlier_scale)
               : osa::gen_planted(a.n, a.d, a.k, a.alpha, a.sigma, model,
                                  osa::Seed(a.seed), a.outlier_scale);

  const std::string points_path = a.out + ".points.csv";
  const std::string truth_path = a.out + ".truth.json";
  osa::write_points_csv(points_path, points);

  json truth_json{{"subspace", basis_to_json(truth.subspace)},
                  {"inlier_indices", indices_to_json(truth.inlier_indices)},
                  {"sigma_in", truth.sigma_in},
                  {"outlier_scale", truth.outlier_scale},
                  {"delta_source", truth.delta_source},
                  {"achieved_delta",
                   truth.achieved_delta.exact_fit
                       ? json("exact-fit")
                       : json(truth.achieved_delta.value)}};
  if (truth.affine_origin.has_value()) {
    truth_json["affine_origin"] = vector_to_json(*truth.affine_origin);
  }
  {
    std::ofstream out(truth_path);
    if (!out) throw osa::DataFormatError("cannot open " + truth_path + " for writing");
    out << truth_json.dump(2) << "\n";
  }

  json manifest = make_manifest("gen", a.seed);
  manifest["config"] = json{{"n", a.n},
                            {"d", a.d},
                            {"k", a.k},
                            {"alpha", a.alpha},
                            {"sigma", a.sigma},
                            {"outlier_model", a.model},
                            {"outlier_scale", a.outlier_scale},
                            {"origin_scale", a.origin_scale},
                            {"affine", a.affine}};
  manifest["outputs"] = json{{"points", points_path}, {"truth", truth_path}};
  manifest["input_checksum"] = "-";
  manifest["results"] = json{{"n", points.size()},
                             {"d", points.dim()},
                             {"points_checksum", osa::file_checksum_hex(points_path)},
                             {"achieved_delta", truth_json["achieved_delta"]},
                             {"delta_source", truth.delta_source}};
  manifest["timing_ms"] = elapsed_ms(start);
  emit_manifest(manifest, "");
  log_line("gen wrote " + points_path);
  return 0;
}

// -------------------------------------------------------------- solve ----

struct SolveArgs {
  std::string in;
  osa::SolverConfig cfg;
  std::string loss;
  bool affine = false;
  double eta = 0.5;
  int jobs = 1;
  double sample_constant = 0.0;
  bool no_refine = false;
  std::string out;
};

int run_solve(const SolveArgs& a) {
  const auto start = std::chrono::steady_clock::now();
  const osa::PointSet points = osa::read_points_csv(a.in);
  const LossSpec loss = parse_loss(a.loss, a.cfg.p);

  json manifest = make_manifest("solve", a.cfg.seed.value);
  manifest["input"] = a.in;
  manifest["input_checksum"] = osa::file_checksum_hex(a.in);

  json results;
  if (a.affine) {
    if (!loss.is_pth_power || loss.loss.p != 2.0) {
      throw osa::InvalidArgument("--affine supports squared error only");
    }
    osa::AffineConfig cfg;
    cfg.eta = a.eta;
    cfg.inner = a.cfg;
    cfg.jobs = a.jobs;
    const osa::AffineReport rep = osa::affine_solve(points, cfg);
    results = solve_report_to_json(rep.report);
    results["algorithm"] = "affine";
    results["origin"] = vector_to_json(rep.placement.origin);
    results["partitions_evaluated"] = rep.partitions_evaluated;
    manifest["config"] = solver_config_to_json(rep.report.config);
    manifest["config"]["eta"] = a.eta;
    manifest["config"]["jobs"] = a.jobs;
  } else if (!loss.is_pth_power) {
    osa::MEstimatorConfig cfg;
    cfg.loss = loss.loss;
    cfg.inner = a.cfg;
    cfg.sample_constant = a.sample_constant;
    cfg.refine = !a.no_refine;
    const osa::MEstimatorReport rep = osa::m_estimator_solve(points, cfg);
    results = solve_report_to_json(rep.report);
    results["algorithm"] = "m-estimator";
    results["loss"] = loss.loss.describe();
    results["p_cost_k"] = rep.p_cost_k;
    results["p_cost_span"] = rep.p_cost_span;
    results["init_approx_C"] = rep.init_approx_C;
    results["expected_sample_size"] = rep.sample_probability_sum;
    manifest["config"] = solver_config_to_json(rep.report.config);
    manifest["config"]["loss"] = loss.loss.describe();
    manifest["config"]["sample_constant"] = cfg.resolved().sample_constant;
  } else {
    osa::SolverConfig cfg = a.cfg;
    cfg.p = loss.loss.p;
    const bool line_case = (cfg.k == 1 && cfg.p == 2.0);
    const osa::SolveReport rep =
        line_case ? osa::line_solver(points, cfg) : osa::solve_outliers(points, cfg);
    results = solve_report_to_json(rep);
    results["algorithm"] = line_case ? "line" : "lp-coreset";
    manifest["config"] = solver_config_to_json(rep.config);
  }

  manifest["results"] = std::move(results);
  manifest["timing_ms"] = elapsed_ms(start);
  emit_manifest(manifest, a.out);
  return 0;
}

// ------------------------------------------------------------- oracle ----

struct OracleArgs {
  std::string in;
  osa::Index k = 1;
  double alpha = 0.0;
  double p = 2.0;
  std::string out;
};

int run_oracle(const OracleArgs& a) {
  const auto start = std::chrono::steady_clock::now();
  const osa::PointSet points = osa::read_points_csv(a.in);
  const osa::OracleResult res =
      (a.p == 2.0) ? osa::exact_optimum_p2(points, a.k, a.alpha)
                   : osa::exact_optimum_p_general(points, a.k, a.alpha, a.p);

  json manifest = make_manifest("oracle", 0);
  manifest["input"] = a.in;
  manifest["input_checksum"] = osa::file_checksum_hex(a.in);
  manifest["config"] = json{{"k", a.k}, {"alpha", a.alpha}, {"p", a.p}};
  manifest["results"] = json{{"best_cost", res.best_cost},
                             {"best_inliers", indices_to_json(res.best_inliers)},
                             {"best_subspace", basis_to_json(res.best_subspace)},
                             {"subsets_evaluated", res.subsets_evaluated},
                             {"upper_bound_only", res.upper_bound_only}};
  manifest["timing_ms"] = elapsed_ms(start);
  emit_manifest(manifest, a.out);
  return 0;
}

// --------------------------------------------------------------- eval ----

struct EvalArgs {
  std::string in;
  std::string basis;
  double alpha = 0.0;
  double p = 2.0;
  std::string out;
};

int run_eval(const EvalArgs& a) {
  const auto start = std::chrono::steady_clock::now();
  const osa::PointSet points = osa::read_points_csv(a.in);
  const osa::Matrix rows = osa::read_vectors_csv(a.basis);
  if (rows.cols() != points.dim()) {
    throw osa::DataFormatError("basis vectors have dimension " +
                               std::to_string(rows.cols()) + ", points have " +
                               std::to_string(points.dim()));
  }

  const osa::Matrix cols = rows.transpose();
  bool reorthonormalized = false;
  osa::Basis basis(points.dim());
  const osa::Matrix gram = cols.transpose() * cols;
  const double gram_err =
      (gram - osa::Matrix::Identity(cols.cols(), cols.cols())).cwiseAbs().maxCoeff();
  if (gram_err <= osa::kOrthTolerance) {
    basis = osa::Basis(cols);
  } else {
    basis = osa::orthonormalize(cols);
    reorthonormalized = true;
    log_line("eval: input basis was not orthonormal; orthonormalized");
  }

  const double cost = osa::trimmed_cost(points, basis, a.alpha, a.p);
  const auto inliers = osa::nearest_inliers(points, basis, a.alpha);

  json manifest = make_manifest("eval", 0);
  manifest["input"] = a.in;
  manifest["input_checksum"] = osa::file_checksum_hex(a.in);
  manifest["config"] = json{{"basis", a.basis},
                            {"basis_checksum", osa::file_checksum_hex(a.basis)},
                            {"alpha", a.alpha},
                            {"p", a.p}};
  manifest["results"] = json{{"trimmed_cost", cost},
                             {"basis_dim", basis.dim()},
                             {"basis_orthonormalized", reorthonormalized},
                             {"inlier_indices", indices_to_json(inliers)}};
  manifest["timing_ms"] = elapsed_ms(start);
  emit_manifest(manifest, a.out);
  return 0;
}

// -------------------------------------------------------------- bench ----

struct BenchArgs {
  std::vector<osa::Index> ns{100};
  std::vector<osa::Index> ds{10};
  std::vector<osa::Index> ks{2};
  std::vector<double> alphas{0.25};
  std::vector<double> epsilons{0.3};
  std::vector<double> deltas{0.1};
  double p = 2.0;
  double sigma = 0.05;
  double outlier_scale = 1.5;
  std::string model = "uniform-far";
  int trials = 3;
  int jobs = 1;
  std::uint64_t seed = 1;
  std::string out = "bench.csv";
};

int run_bench(const BenchArgs& a) {
  const auto start = std::chrono::steady_clock::now();
  const osa::OutlierModel model = osa::outlier_model_from_string(a.model);

  struct Cell {
    osa::Index n, d, k;
    double alpha, epsilon, delta;
    int trial;
  };
  std::vector<Cell> cells;
  for (osa::Index n : a.ns)
    for (osa::Index d : a.ds)
      for (osa::Index k : a.ks)
        for (double alpha : a.alphas)
          for (double eps : a.epsilons)
            for (double delta : a.deltas)
              for (int t = 0; t < a.trials; ++t)
                cells.push_back({n, d, k, alpha, eps, delta, t});

  std::vector<std::string> lines(cells.size());
  std::vector<std::string> errors(cells.size());
  osa::parallel_for(cells.size(), a.jobs, [&](std::size_t i) {
    const Cell& c = cells[i];
    try {
      if (c.k >= c.d) throw osa::InvalidArgument("bench: k must be < d");
      const osa::Seed cell_seed = osa::derive_seed(osa::Seed(a.seed), i, 17);
      auto [points, truth] = osa::gen_planted(c.n, c.d, c.k, c.alpha, a.sigma, model,
                                              cell_seed, a.outlier_scale);
      osa::SolverConfig cfg;
      cfg.k = c.k;
      cfg.p = a.p;
      cfg.alpha = c.alpha;
      cfg.epsilon = c.epsilon;
      cfg.delta = c.delta;
      cfg.seed = osa::derive_seed(cell_seed, 23);
      const auto t0 = std::chrono::steady_clock::now();
      const osa::SolveReport rep = osa::solve_outliers(points, cfg);
      const double ms = elapsed_ms(t0);

      // reference: exhaustive oracle when affordable, planted truth otherwise
      double reference = 0.0;
      const osa::Index m = static_cast<osa::Index>(
          std::floor((1.0 - c.alpha) * static_cast<double>(c.n)));
      const bool oracle_ok =
          osa::detail::count_combinations_capped(c.n, m, osa::kOracleSubsetBudget) <=
              osa::kOracleSubsetBudget &&
          a.p == 2.0;
      if (oracle_ok) {
        reference = osa::exact_optimum_p2(points, c.k, c.alpha).best_cost;
      } else {
        const osa::Vector r = residual_norms(points, truth.subspace);
        for (osa::Index idx : truth.inlier_indices) {
          reference += std::pow(r(idx), a.p);
        }
      }
      const double ratio =
          (reference > 0.0) ? rep.trimmed_cost_k / reference
                            : (rep.trimmed_cost_k <= 1e-12 ? 1.0 : -1.0);
      char buf[256];
      std::snprintf(buf, sizeof(buf), "%lld,%lld,%lld,%g,%g,%g,%d,%.10g,%.10g,%.6g,%.3f",
                    static_cast<long long>(c.n), static_cast<long long>(c.d),
                    static_cast<long long>(c.k), c.alpha, c.epsilon, c.delta, c.trial,
                    rep.trimmed_cost_k, reference, ratio, ms);
      lines[i] = buf;
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });

  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i].empty()) {
      throw osa::InvalidArgument("bench cell " + std::to_string(i) + ": " + errors[i]);
    }
  }

  std::ofstream out(a.out);
  if (!out) throw osa::DataFormatError("cannot open " + a.out + " for writing");
  out << "n,d,k,alpha,epsilon,delta,trial,cost,oracle_cost,ratio,ms\n";
  for (const auto& line : lines) out << line << "\n";
  out.close();

  json manifest = make_manifest("bench", a.seed);
  manifest["config"] = json{{"n", a.ns},       {"d", a.ds},
                            {"k", a.ks},       {"alpha", a.alphas},
                            {"epsilon", a.epsilons}, {"delta", a.deltas},
                            {"p", a.p},        {"sigma", a.sigma},
                            {"outlier_scale", a.outlier_scale},
                            {"outlier_model", a.model},
                            {"trials", a.trials},
                            {"jobs", a.jobs}};
  manifest["input_checksum"] = "-";
  manifest["results"] = json{{"rows", lines.size()},
                             {"output", a.out},
                             {"output_checksum", osa::file_checksum_hex(a.out)}};
  manifest["timing_ms"] = elapsed_ms(start);
  emit_manifest(manifest, "");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subspace approximation with outliers: weak coresets by adaptive "
               "residual sampling, M-estimator and affine variants, planted "
               "instances and a brute-force oracle"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* cmd_gen = app.add_subcommand("gen", "generate a planted instance (points CSV + truth JSON)");
  cmd_gen->add_option("--n", gen.n, "number of points");
  cmd_gen->add_option("--d", gen.d, "ambient dimension");
  cmd_gen->add_option("--k", gen.k, "planted subspace dimension");
  cmd_gen->add_option("--alpha", gen.alpha, "outlier fraction in [0,1)");
  cmd_gen->add_option("--sigma", gen.sigma, "inlier off-subspace noise scale");
  cmd_gen->add_option("--outlier-model", gen.model,
                      "uniform-far | clustered | adversarial-near-subspace");
  cmd_gen->add_option("--outlier-scale", gen.outlier_scale,
                      "outlier radius (uniform-far: radius ~ scale*[0.5,1.5]; "
                      "clustered: center norm; adversarial: decoy coefficient scale)");
  cmd_gen->add_flag("--affine", gen.affine, "shift the instance by a random origin");
  cmd_gen->add_option("--origin-scale", gen.origin_scale, "norm of the affine origin");
  cmd_gen->add_option("--seed", gen.seed, "RNG seed");
  cmd_gen->add_option("--out", gen.out, "output prefix (<out>.points.csv, <out>.truth.json)");

  SolveArgs solve;
  std::uint64_t solve_seed = 1;
  auto* cmd_solve = app.add_subcommand("solve", "run a solver on a points CSV");
  cmd_solve->add_option("--in", solve.in, "points CSV")->required();
  cmd_solve->add_option("--k", solve.cfg.k, "target subspace dimension");
  cmd_solve->add_option("--p", solve.cfg.p, "loss exponent (>= 1)");
  cmd_solve->add_option("--alpha", solve.cfg.alpha, "outlier fraction");
  cmd_solve->add_option("--epsilon", solve.cfg.epsilon, "accuracy parameter");
  cmd_solve->add_option("--delta", solve.cfg.delta, "assumed inlier-error fraction");
  cmd_solve->add_option("--rounds", solve.cfg.rounds_T, "adaptive rounds (0 = auto)");
  cmd_solve->add_option("--batch", solve.cfg.batch_size, "points per batch (0 = auto)");
  cmd_solve->add_option("--trials", solve.cfg.trials,
                        "boost candidates per round (0 = auto)");
  cmd_solve->add_option("--seed", solve_seed, "RNG seed");
  cmd_solve->add_option("--loss", solve.loss, "lp:<p> | huber:<t> | tukey:<t>");
  cmd_solve->add_flag("--affine", solve.affine, "affine variant (squared error)");
  cmd_solve->add_option("--eta", solve.eta, "affine mean-accuracy parameter");
  cmd_solve->add_option("--jobs", solve.jobs, "worker threads for partition search");
  cmd_solve->add_option("--sample-constant", solve.sample_constant,
                        "C' for m-estimator residual sampling (0 = auto)");
  cmd_solve->add_flag("--no-refine", solve.no_refine,
                      "skip adaptive refinement after the one-shot pass");
  cmd_solve->add_option("--out", solve.out, "manifest path (default: stdout)");

  OracleArgs oracle;
  auto* cmd_oracle = app.add_subcommand("oracle", "brute-force exact optimum (tiny n)");
  cmd_oracle->add_option("--in", oracle.in, "points CSV")->required();
  cmd_oracle->add_option("--k", oracle.k, "subspace dimension");
  cmd_oracle->add_option("--alpha", oracle.alpha, "outlier fraction");
  cmd_oracle->add_option("--p", oracle.p, "loss exponent");
  cmd_oracle->add_option("--out", oracle.out, "manifest path (default: stdout)");

  EvalArgs eval;
  auto* cmd_eval = app.add_subcommand("eval", "trimmed cost of a user-supplied basis");
  cmd_eval->add_option("--in", eval.in, "points CSV")->required();
  cmd_eval->add_option("--basis", eval.basis, "basis CSV, one vector per row")->required();
  cmd_eval->add_option("--alpha", eval.alpha, "outlier fraction");
  cmd_eval->add_option("--p", eval.p, "loss exponent");
  cmd_eval->add_option("--out", eval.out, "manifest path (default: stdout)");

  BenchArgs bench;
  auto* cmd_bench = app.add_subcommand("bench", "parameter sweep, long-format CSV");
  cmd_bench->add_option("--n", bench.ns, "point counts")->delimiter(',');
  cmd_bench->add_option("--d", bench.ds, "dimensions")->delimiter(',');
  cmd_bench->add_option("--k", bench.ks, "subspace dimensions")->delimiter(',');
  cmd_bench->add_option("--alpha", bench.alphas, "outlier fractions")->delimiter(',');
  cmd_bench->add_option("--epsilon", bench.epsilons, "accuracies")->delimiter(',');
  cmd_bench->add_option("--delta", bench.deltas, "delta assumptions")->delimiter(',');
  cmd_bench->add_option("--p", bench.p, "loss exponent");
  cmd_bench->add_option("--sigma", bench.sigma, "inlier noise");
  cmd_bench->add_option("--outlier-scale", bench.outlier_scale, "outlier scale");
  cmd_bench->add_option("--outlier-model", bench.model, "outlier model");
  cmd_bench->add_option("--trials", bench.trials, "instances per grid cell");
  cmd_bench->add_option("--jobs", bench.jobs, "worker threads");
  cmd_bench->add_option("--seed", bench.seed, "RNG seed");
  cmd_bench->add_option("--out", bench.out, "output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*cmd_gen) return run_gen(gen);
    if (*cmd_solve) {
      solve.cfg.seed = osa::Seed(solve_seed);
      return run_solve(solve);
    }
    if (*cmd_oracle) return run_oracle(oracle);
    if (*cmd_eval) return run_eval(eval);
    if (*cmd_bench) return run_bench(bench);
  } catch (const osa::DataFormatError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const osa::BudgetExceeded& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 4;
  } catch (const osa::DegenerateWeights& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 4;
  } catch (const osa::InvalidArgument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
