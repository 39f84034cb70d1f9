#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nlpsel/bench.hpp"
#include "nlpsel/simulate.hpp"

using namespace nlpsel;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("compute_metrics set arithmetic") {
  const VariableSet causal(std::vector<int>{1, 4});
  SUBCASE("partial overlap") {
    auto [tpr, fdr] = compute_metrics(VariableSet{std::vector<int>{1, 2, 3}},
                                      causal);
    CHECK(tpr == doctest::Approx(0.5));
    CHECK(fdr == doctest::Approx(2.0 / 3.0));
  }
  SUBCASE("empty selection convention") {
    auto [tpr, fdr] = compute_metrics(VariableSet{}, causal);
    CHECK(tpr == 0.0);
    CHECK(fdr == 0.0);
  }
  SUBCASE("perfect recovery") {
    auto [tpr, fdr] = compute_metrics(causal, causal);
    CHECK(tpr == 1.0);
    CHECK(fdr == 0.0);
  }
  SUBCASE("empty causal set is an error") {
    CHECK_THROWS_AS(compute_metrics(causal, VariableSet{}), DataError);
  }
}

TEST_CASE("report CSV and chart formatting") {
  std::vector<MethodReport> reports(2);
  reports[0].name = "pmom";
  reports[0].selected = VariableSet{std::vector<int>{1, 2}};
  reports[0].n_selected = 2;
  reports[0].tpr = 0.5;
  reports[0].fdr = 0.25;
  reports[0].wall_time = 1.25;
  reports[1].name = "lasso";
  reports[1].failed = true;
  reports[1].error = "boom";
  reports[1].wall_time = 0.1;

  const auto dir = std::filesystem::temp_directory_path();
  const auto csv = (dir / "bench_table.csv").string();
  const auto svg = (dir / "bench_chart.svg").string();
  write_report_csv(csv, reports);
  write_chart_svg(svg, reports);

  const std::string table = slurp(csv);
  CHECK(table.find("method,n_selected,tpr,fdr,wall_time,error") == 0);
  CHECK(table.find("pmom,2,0.500000,0.250000,1.250,") != std::string::npos);
  CHECK(table.find("lasso,,,,0.100,boom") != std::string::npos);

  const std::string chart = slurp(svg);
  CHECK(chart.find("pmom (2)") != std::string::npos);   // "name (count)"
  CHECK(chart.find("lasso (failed)") != std::string::npos);
  CHECK(chart.find("<svg") == 0);
}

TEST_CASE("run_benchmark on a tiny simulated problem") {
  SimSpec spec;
  spec.n = 300;
  spec.p = 40;
  spec.block_size = 5;
  spec.rho = 0.4;
  spec.n_causal = 2;
  spec.seed = 3;
  Dataset ds;
  ds.X = simulate_genotypes(spec);
  auto [causal, effects] = sample_causal_effects(spec);
  for (int i = 0; i < effects.size(); ++i)
    effects[i] = effects[i] < 0 ? -2.0 : 2.0;
  ds.y = simulate_phenotype(ds.X, causal, effects, spec.seed);
  for (int j = 0; j < spec.p; ++j)
    ds.names.push_back("x" + std::to_string(j));
  ds = standardize(ds);

  BenchConfig cfg;
  cfg.enet.folds = 4;
  cfg.enet.n_lambda = 30;

  SUBCASE("single-method harness") {
    cfg.methods = {"pmom"};
    const auto reports = run_benchmark(ds, causal, cfg);
    REQUIRE(reports.size() == 1);
    CHECK_FALSE(reports[0].failed);
    CHECK(reports[0].n_selected == reports[0].selected.size());
  }

  SUBCASE("all six methods produce rows; metrics recompute from selections") {
    const auto reports = run_benchmark(ds, causal, cfg);
    REQUIRE(reports.size() == 6);
    for (const auto& r : reports) {
      CHECK_FALSE(r.failed);
      auto [tpr, fdr] = compute_metrics(r.selected, causal);
      CHECK(r.tpr == tpr);
      CHECK(r.fdr == fdr);
      CHECK(r.wall_time >= 0.0);
    }
  }

  SUBCASE("a bad method name becomes an error row, others proceed") {
    cfg.methods = {"pmom", "nope"};
    const auto reports = run_benchmark(ds, causal, cfg);
    REQUIRE(reports.size() == 2);
    CHECK_FALSE(reports[0].failed);
    CHECK(reports[1].failed);
    CHECK(reports[1].error.find("unknown method") != std::string::npos);
  }

  SUBCASE("parallel mode omits per-method wall times") {
    cfg.methods = {"pmom", "pimom"};
    cfg.parallel = true;
    const auto reports = run_benchmark(ds, causal, cfg);
    for (const auto& r : reports) CHECK(r.wall_time == -1.0);
  }
}

TEST_CASE("truth CSV round-trip") {
  const VariableSet causal(std::vector<int>{3, 17, 21});
  Eigen::VectorXd effects(3);
  effects << -0.7, 1.3, 0.05;
  std::vector<std::string> names(30);
  for (int j = 0; j < 30; ++j) names[j] = "x" + std::to_string(j);
  const auto path =
      (std::filesystem::temp_directory_path() / "truth_rt.csv").string();
  write_truth_csv(path, causal, effects, names);
  auto [c2, e2] = read_truth_csv(path);
  CHECK(c2 == causal);
  CHECK((e2 - effects).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("parse_config_file") {
  const auto path =
      (std::filesystem::temp_directory_path() / "cfg_test.txt").string();
  {
    std::ofstream out(path);
    out << "# comment line\n"
        << "tau = 0.2\n"
        << "k0=1\n"
        << "\n"
        << "methods = pmom,lasso  # trailing comment\n";
  }
  const auto kv = parse_config_file(path);
  CHECK(kv.at("tau") == "0.2");
  CHECK(kv.at("k0") == "1");
  CHECK(kv.at("methods") == "pmom,lasso");
  CHECK(kv.size() == 3);

  {
    std::ofstream out(path);
    out << "not a key value line\n";
  }
  CHECK_THROWS_AS(parse_config_file(path), DataError);
}
