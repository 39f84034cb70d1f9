#include "nlpsel/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace nlpsel {

VariableSet::VariableSet(std::vector<int> indices) : idx_(std::move(indices)) {
  std::sort(idx_.begin(), idx_.end());
  idx_.erase(std::unique(idx_.begin(), idx_.end()), idx_.end());
}

bool VariableSet::contains(int j) const {
  return std::binary_search(idx_.begin(), idx_.end(), j);
}

void VariableSet::insert(int j) {
  auto it = std::lower_bound(idx_.begin(), idx_.end(), j);
  if (it == idx_.end() || *it != j) idx_.insert(it, j);
}

void VariableSet::erase(int j) {
  auto it = std::lower_bound(idx_.begin(), idx_.end(), j);
  if (it != idx_.end() && *it == j) idx_.erase(it);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_cell(const std::string& s, const std::string& col, int row) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DataError("unparseable cell '" + s + "' in column '" + col +
                    "', row " + std::to_string(row));
  }
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty file: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  t.header = split_csv_line(line);
  int row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != t.header.size())
      throw DataError("row " + std::to_string(row + 1) + " of " + path +
                      " has " + std::to_string(cells.size()) +
                      " fields, expected " + std::to_string(t.header.size()));
    std::vector<double> vals(cells.size());
    for (size_t c = 0; c < cells.size(); ++c)
      vals[c] = parse_cell(cells[c], t.header[c], row + 1);
    t.rows.push_back(std::move(vals));
    ++row;
  }
  return t;
}

}  // namespace

void Dataset::validate() const {
  if (X.rows() < 2) throw DataError("need at least 2 rows");
  if (X.cols() < 1) throw DataError("need at least 1 predictor column");
  if (y.size() != X.rows())
    throw DataError("dimension mismatch: X has " + std::to_string(X.rows()) +
                    " rows, y has length " + std::to_string(y.size()));
  if (static_cast<Eigen::Index>(names.size()) != X.cols())
    throw DataError("name count does not match column count");
  bool has0 = false, has1 = false;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (y[i] == 0.0)
      has0 = true;
    else if (y[i] == 1.0)
      has1 = true;
    else
      throw DataError("non-binary outcome at row " + std::to_string(i + 1));
  }
  if (!has0 || !has1) throw DataError("outcome needs both classes present");
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    const auto col = X.col(j);
    if (!col.allFinite())
      throw DataError("non-finite value in column '" + names[j] + "'");
    if ((col.array() == col[0]).all())
      throw DataError("constant column '" + names[j] + "'");
  }
}

Dataset load_dataset(const std::string& x_path, const std::string& y_spec) {
  CsvTable xt = read_csv(x_path);
  const size_t n = xt.rows.size();
  const size_t p_raw = xt.header.size();

  Dataset ds;
  int y_col = -1;
  if (std::filesystem::exists(y_spec)) {
    CsvTable yt = read_csv(y_spec);
    if (yt.header.size() != 1)
      throw DataError("outcome file must have exactly one column");
    if (yt.rows.size() != n)
      throw DataError("dimension mismatch: X has " + std::to_string(n) +
                      " rows, y has " + std::to_string(yt.rows.size()));
    ds.y.resize(n);
    for (size_t i = 0; i < n; ++i) ds.y[i] = yt.rows[i][0];
  } else {
    auto it = std::find(xt.header.begin(), xt.header.end(), y_spec);
    if (it == xt.header.end())
      throw DataError("outcome '" + y_spec +
                      "' is neither a file nor a column of " + x_path);
    y_col = static_cast<int>(it - xt.header.begin());
    ds.y.resize(n);
    for (size_t i = 0; i < n; ++i) ds.y[i] = xt.rows[i][y_col];
  }

  const size_t p = y_col >= 0 ? p_raw - 1 : p_raw;
  ds.X.resize(n, p);
  ds.names.reserve(p);
  for (size_t c = 0; c < p_raw; ++c) {
    if (static_cast<int>(c) == y_col) continue;
    ds.names.push_back(xt.header[c]);
    const size_t jc = ds.names.size() - 1;
    for (size_t i = 0; i < n; ++i) ds.X(i, jc) = xt.rows[i][c];
  }
  ds.validate();
  return ds;
}

Dataset standardize(const Dataset& ds) {
  Dataset out = ds;
  const double n = static_cast<double>(ds.n());
  for (Eigen::Index j = 0; j < out.X.cols(); ++j) {
    auto col = out.X.col(j);
    const double mean = col.mean();
    col.array() -= mean;
    const double sd = std::sqrt(col.squaredNorm() / (n - 1.0));
    if (sd <= 0.0)
      throw DataError("constant column '" + out.names[j] + "'");
    col /= sd;
  }
  out.standardized = true;
  return out;
}

double pearson_correlation(const Dataset& ds, int j, int l) {
  const Eigen::VectorXd a = ds.X.col(j).array() - ds.X.col(j).mean();
  const Eigen::VectorXd b = ds.X.col(l).array() - ds.X.col(l).mean();
  return a.dot(b) / std::sqrt(a.squaredNorm() * b.squaredNorm());
}

namespace {
void write_value(std::FILE* f, double v) {
  // shortest round-trip representation keeps CSV round-trips stable
  std::fprintf(f, "%.17g", v);
}
}  // namespace

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& X,
                      const std::vector<std::string>& names) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw DataError("cannot write file: " + path);
  for (size_t j = 0; j < names.size(); ++j)
    std::fprintf(f, "%s%s", j ? "," : "", names[j].c_str());
  std::fputc('\n', f);
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
      if (j) std::fputc(',', f);
      write_value(f, X(i, j));
    }
    std::fputc('\n', f);
  }
  std::fclose(f);
}

void write_vector_csv(const std::string& path, const Eigen::VectorXd& v,
                      const std::string& name) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw DataError("cannot write file: " + path);
  std::fprintf(f, "%s\n", name.c_str());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    write_value(f, v[i]);
    std::fputc('\n', f);
  }
  std::fclose(f);
}

}  // namespace nlpsel
