#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "nlpsel/dataset.hpp"
#include "support/oracles.hpp"

using namespace nlpsel;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  const auto path =
      (std::filesystem::temp_directory_path() / name).string();
  std::ofstream out(path);
  out << content;
  return path;
}

Dataset make_ds(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  Dataset ds;
  ds.X = X;
  ds.y = y;
  for (Eigen::Index j = 0; j < X.cols(); ++j)
    ds.names.push_back("x" + std::to_string(j + 1));
  return ds;
}

}  // namespace

TEST_CASE("load_dataset parses a small CSV") {
  const auto xp = write_temp("ds_x.csv", "a,b\n1,4\n2,5\n3,7\n");
  const auto yp = write_temp("ds_y.csv", "y\n0\n1\n1\n");
  const Dataset ds = load_dataset(xp, yp);
  CHECK(ds.n() == 3);
  CHECK(ds.p() == 2);
  CHECK(ds.names == std::vector<std::string>{"a", "b"});
  CHECK(ds.y[0] == 0.0);
  CHECK(ds.X(2, 1) == 7.0);
}

TEST_CASE("load_dataset accepts y as a named column of X") {
  const auto xp = write_temp("ds_xy.csv", "a,y,b\n1,0,4\n2,1,5\n3,1,7\n");
  const Dataset ds = load_dataset(xp, "y");
  CHECK(ds.p() == 2);
  CHECK(ds.names == std::vector<std::string>{"a", "b"});
  CHECK(ds.y[1] == 1.0);
}

TEST_CASE("load_dataset rejects bad inputs") {
  const auto xp = write_temp("ds_x2.csv", "a,b\n1,4\n2,5\n3,7\n");

  SUBCASE("non-binary outcome") {
    const auto yp = write_temp("ds_ybad.csv", "y\n0\n2\n1\n");
    CHECK_THROWS_WITH_AS(load_dataset(xp, yp),
                         doctest::Contains("non-binary outcome"), DataError);
  }
  SUBCASE("constant column") {
    const auto xc = write_temp("ds_xc.csv", "a,b\n1,4\n1,5\n1,7\n");
    const auto yp = write_temp("ds_y3.csv", "y\n0\n1\n1\n");
    CHECK_THROWS_WITH_AS(load_dataset(xc, yp),
                         doctest::Contains("constant column 'a'"), DataError);
  }
  SUBCASE("dimension mismatch") {
    const auto yp = write_temp("ds_yshort.csv", "y\n0\n1\n");
    CHECK_THROWS_AS(load_dataset(xp, yp), DataError);
  }
  SUBCASE("unparseable cell") {
    const auto xb = write_temp("ds_xbad.csv", "a,b\n1,4\nfoo,5\n3,7\n");
    const auto yp = write_temp("ds_y4.csv", "y\n0\n1\n1\n");
    CHECK_THROWS_WITH_AS(load_dataset(xb, yp),
                         doctest::Contains("unparseable cell"), DataError);
  }
  SUBCASE("non-finite entry") {
    const auto xn = write_temp("ds_xnan.csv", "a,b\n1,4\nnan,5\n3,7\n");
    const auto yp = write_temp("ds_y5.csv", "y\n0\n1\n1\n");
    CHECK_THROWS_WITH_AS(load_dataset(xn, yp),
                         doctest::Contains("non-finite"), DataError);
  }
}

TEST_CASE("standardize centers and scales with divisor n-1") {
  Eigen::MatrixXd X(3, 2);
  X << 1, 10, 2, 20, 3, 40;
  Eigen::VectorXd y(3);
  y << 0, 1, 1;
  const Dataset ds = standardize(make_ds(X, y));

  CHECK(ds.standardized);
  CHECK(ds.X(0, 0) == doctest::Approx(-1.0));
  CHECK(ds.X(1, 0) == doctest::Approx(0.0));
  CHECK(ds.X(2, 0) == doctest::Approx(1.0));
  // recompute moments of the transformed second column
  for (int j = 0; j < 2; ++j) {
    const double mean = ds.X.col(j).mean();
    const double var =
        (ds.X.col(j).array() - mean).square().sum() / (ds.n() - 1.0);
    CHECK(std::abs(mean) < 1e-10);
    CHECK(var == doctest::Approx(1.0).epsilon(1e-10));
  }
  CHECK(ds.y == y);  // outcome untouched
}

TEST_CASE("standardize is idempotent") {
  oracles::ToyData toy = oracles::simulate_logistic(50, 4, Eigen::Vector2d(0, 1), 7);
  const Dataset ds = standardize(
      make_ds(toy.X.rightCols(4), (toy.y.array() > 0.5).cast<double>()));
  const Dataset ds2 = standardize(ds);
  CHECK((ds2.X - ds.X).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("pearson_correlation") {
  Eigen::MatrixXd X(4, 3);
  X << 1, 3, 1, 2, 2, 3, 3, 1, 2, 4, 4, 4;
  Eigen::VectorXd y(4);
  y << 0, 1, 0, 1;
  const Dataset ds = make_ds(X, y);

  CHECK(pearson_correlation(ds, 0, 0) == doctest::Approx(1.0));
  // columns (1,2,3,4) and (3,2,1,4): brute-force covariance/variance oracle
  {
    const auto a = ds.X.col(0), b = ds.X.col(2);
    double ma = 0, mb = 0;
    for (int i = 0; i < 4; ++i) { ma += a[i] / 4; mb += b[i] / 4; }
    double cov = 0, va = 0, vb = 0;
    for (int i = 0; i < 4; ++i) {
      cov += (a[i] - ma) * (b[i] - mb);
      va += (a[i] - ma) * (a[i] - ma);
      vb += (b[i] - mb) * (b[i] - mb);
    }
    CHECK(pearson_correlation(ds, 0, 2) ==
          doctest::Approx(cov / std::sqrt(va * vb)).epsilon(1e-12));
  }
  SUBCASE("exact anti-linear pair") {
    Eigen::MatrixXd Z(3, 2);
    Z << 1, 3, 2, 2, 3, 1;
    Eigen::VectorXd y3(3);
    y3 << 0, 1, 1;
    CHECK(pearson_correlation(make_ds(Z, y3), 0, 1) == doctest::Approx(-1.0));
  }
  SUBCASE("symmetry and bound") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    Eigen::MatrixXd Z(20, 5);
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 5; ++j) Z(i, j) = g(rng);
    Eigen::VectorXd yy = Eigen::VectorXd::Zero(20);
    yy.head(10).setOnes();
    const Dataset d2 = make_ds(Z, yy);
    for (int j = 0; j < 5; ++j)
      for (int l = 0; l < 5; ++l) {
        const double c = pearson_correlation(d2, j, l);
        CHECK(c == pearson_correlation(d2, l, j));
        CHECK(std::abs(c) <= 1.0 + 1e-12);
      }
  }
}

TEST_CASE("CSV round-trip preserves values") {
  oracles::ToyData toy =
      oracles::simulate_logistic(30, 3, Eigen::Vector2d(0.2, 1.0), 11);
  Eigen::VectorXd y = toy.y;
  y[0] = 0; y[1] = 1;  // both classes
  Dataset ds = standardize(make_ds(toy.X.rightCols(3), y));

  const auto dir = std::filesystem::temp_directory_path();
  const auto xp = (dir / "rt_x.csv").string();
  const auto yp = (dir / "rt_y.csv").string();
  write_matrix_csv(xp, ds.X, ds.names);
  write_vector_csv(yp, ds.y, "y");
  const Dataset back = load_dataset(xp, yp);
  CHECK((back.X - ds.X).lpNorm<Eigen::Infinity>() < 1e-9);
  CHECK((back.y - ds.y).lpNorm<Eigen::Infinity>() == 0.0);
}
