// nlpsel command line: simulate / select / bench.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nlpsel/bench.hpp"
#include "nlpsel/dataset.hpp"
#include "nlpsel/scheme.hpp"
#include "nlpsel/simulate.hpp"

namespace fs = std::filesystem;
using namespace nlpsel;

namespace {

struct SelectArgs {
  std::string x_path, y_spec, out_dir;
  std::string prior = "pmom";
  SchemeConfig scheme;
  bool no_standardize = false;
  bool cumulative_maxno = false;
};

PriorFamily parse_family(const std::string& s) {
  if (s == "pmom") return PriorFamily::PMOM;
  if (s == "pimom") return PriorFamily::PIMOM;
  throw CLI::ValidationError("--prior", "must be pmom or pimom");
}

void add_scheme_options(CLI::App* cmd, SelectArgs& a) {
  cmd->add_option("--prior", a.prior, "Non-local prior family (pmom|pimom)")
      ->check(CLI::IsMember({"pmom", "pimom"}));
  cmd->add_option("--tau", a.scheme.prior.tau, "Prior scale");
  cmd->add_option("--phi", a.scheme.prior.phi, "Dispersion");
  cmd->add_option("--order-r", a.scheme.prior.order_r, "pMOM order");
  cmd->add_option("--nu", a.scheme.prior.nu, "piMOM shape");
  cmd->add_option("--k0", a.scheme.k0, "Leading variables per iteration");
  cmd->add_option("--r", a.scheme.r_thresh, "Correlation threshold");
  cmd->add_option("--m", a.scheme.m,
                  "Target number of selections (0: n/log n heuristic)");
  cmd->add_option("--maxno", a.scheme.maxno,
                  "Max consecutive no-selection iterations");
  cmd->add_option("--exhaustive-cap", a.scheme.exhaustive_cap,
                  "Max leading-set size for exhaustive model search");
  cmd->add_option("--grad-tol", a.scheme.grad_tol, "Newton gradient tolerance");
  cmd->add_option("--max-iter", a.scheme.max_iter, "Newton iteration cap");
  cmd->add_option("--seed", a.scheme.seed, "RNG seed");
  cmd->add_option("--threads", a.scheme.n_threads,
                  "Worker threads (0: hardware)");
  cmd->add_flag("--cumulative-maxno", a.cumulative_maxno,
                "Count no-selection iterations cumulatively");
  cmd->add_flag("--no-standardize", a.no_standardize,
                "Skip column standardization");
}

void write_selected_csv(const std::string& path,
                        const std::vector<int>& selected,
                        const std::vector<std::string>& names) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path);
  out << "index,name\n";
  for (int j : selected) out << j << ',' << names[j] << '\n';
}

int run_simulate(const SimSpec& spec, const std::string& out_dir) {
  fs::create_directories(out_dir);
  const Eigen::MatrixXd X = simulate_genotypes(spec);
  auto [causal, effects] = sample_causal_effects(spec);
  const Eigen::VectorXd y = simulate_phenotype(X, causal, effects, spec.seed);

  std::vector<std::string> names(spec.p);
  for (int j = 0; j < spec.p; ++j) names[j] = "x" + std::to_string(j + 1);
  write_matrix_csv(out_dir + "/X.csv", X, names);
  write_vector_csv(out_dir + "/y.csv", y, "y");
  write_truth_csv(out_dir + "/truth.csv", causal, effects, names);
  return 0;
}

int run_select(const SelectArgs& a) {
  fs::create_directories(a.out_dir);
  Dataset ds = load_dataset(a.x_path, a.y_spec);
  if (!a.no_standardize) ds = standardize(ds);

  SchemeConfig cfg = a.scheme;
  cfg.prior.family = parse_family(a.prior);
  cfg.cumulative_no_selection = a.cumulative_maxno;

  const SelectionResult res = run_selection(ds, cfg);
  write_selected_csv(a.out_dir + "/selected.csv", res.selected, ds.names);
  std::ofstream trace(a.out_dir + "/trace.jsonl", std::ios::binary);
  if (!trace) throw DataError("cannot write trace file");
  write_trace_jsonl(trace, res);
  return 0;
}

int run_bench(const std::string& data_dir, const std::string& out_dir,
              const SelectArgs& a, EnetConfig enet,
              const std::string& methods_csv, bool parallel) {
  fs::create_directories(out_dir);
  Dataset ds = load_dataset(data_dir + "/X.csv", data_dir + "/y.csv");
  if (!a.no_standardize) ds = standardize(ds);
  auto [causal, effects] = read_truth_csv(data_dir + "/truth.csv");

  BenchConfig cfg;
  cfg.scheme = a.scheme;
  cfg.scheme.cumulative_no_selection = a.cumulative_maxno;
  cfg.enet = enet;
  cfg.enet.seed = a.scheme.seed;
  cfg.parallel = parallel;
  cfg.methods.clear();
  std::stringstream ss(methods_csv);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) cfg.methods.push_back(tok);
  if (cfg.methods.empty()) throw CLI::ValidationError("--methods", "empty");

  const auto reports = run_benchmark(ds, causal, cfg);
  write_report_csv(out_dir + "/table.csv", reports);
  write_chart_svg(out_dir + "/chart.svg", reports);
  for (const auto& r : reports)
    if (!r.failed)
      write_selected_csv(out_dir + "/selected_" + r.name + ".csv",
                         r.selected.indices(), ds.names);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Iterative screen-and-select variable selection for binary "
               "outcomes with non-local priors"};
  app.require_subcommand(1);

  // simulate
  SimSpec spec;
  std::string sim_out;
  CLI::App* sim = app.add_subcommand(
      "simulate", "Generate correlated genotypes and a logistic phenotype");
  sim->add_option("--n", spec.n, "Subjects");
  sim->add_option("--p", spec.p, "Variables");
  sim->add_option("--block-size", spec.block_size, "Correlated block width");
  sim->add_option("--rho", spec.rho, "Within-block latent AR(1) correlation");
  sim->add_option("--maf-lo", spec.maf_lo, "Lower allele-frequency bound");
  sim->add_option("--maf-hi", spec.maf_hi, "Upper allele-frequency bound");
  sim->add_option("--n-causal", spec.n_causal, "Causal variables");
  sim->add_option("--effect-sd", spec.effect_sd, "Effect-size sd");
  sim->add_option("--seed", spec.seed, "RNG seed");
  sim->add_option("--out", sim_out, "Output directory")->required();
  sim->set_config("--config");

  // select
  SelectArgs sel;
  CLI::App* select = app.add_subcommand(
      "select", "Run the iterative screen-and-select scheme");
  select->add_option("--x", sel.x_path, "Predictor CSV")->required();
  select->add_option("--y", sel.y_spec,
                     "Outcome CSV path or column name of the X file")
      ->required();
  add_scheme_options(select, sel);
  select->add_option("--out", sel.out_dir, "Output directory")->required();
  select->set_config("--config");

  // bench
  SelectArgs ba;
  EnetConfig enet;
  std::string bench_data, bench_out;
  std::string methods = "pmom,pimom,lasso,enet75,enet50,enet25";
  bool parallel_methods = false;
  CLI::App* bench =
      app.add_subcommand("bench", "Method comparison on simulated data");
  bench->add_option("--data", bench_data,
                    "Directory with X.csv, y.csv, truth.csv")
      ->required();
  add_scheme_options(bench, ba);
  bench->add_option("--methods", methods, "Comma-separated method list");
  bench->add_option("--folds", enet.folds, "CV folds");
  bench->add_option("--n-lambda", enet.n_lambda, "Penalty path length");
  bench->add_option("--lambda-min-ratio", enet.lambda_min_ratio,
                    "Smallest path lambda relative to lambda_max");
  bench->add_flag("--one-se", enet.one_se, "1-SE lambda rule instead of min");
  bench->add_flag("--parallel-methods", parallel_methods,
                  "Run methods concurrently (per-method timing omitted)");
  bench->add_option("--out", bench_out, "Output directory")->required();
  bench->set_config("--config");

  try {
    app.parse(argc, argv);
    if (*sim) return run_simulate(spec, sim_out);
    if (*select) return run_select(sel);
    if (*bench) {
      ba.scheme.prior.family = parse_family(ba.prior);
      return run_bench(bench_data, bench_out, ba, enet, methods,
                       parallel_methods);
    }
    return 1;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const DataError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return 3;
  }
}
